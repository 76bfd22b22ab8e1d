# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled versions of the kernels in ``_kernels_py``."""
import numpy as np
cimport numpy as cnp

cdef int[5] INV5 = [0, 1, 3, 2, 4]


def rref_mod5(a):
    cdef cnp.ndarray[cnp.int64_t, ndim=2] m = np.array(a, dtype=np.int64) % 5
    cdef Py_ssize_t rows = m.shape[0], cols = m.shape[1]
    cdef Py_ssize_t r = 0, col, i, j, p
    cdef long f, inv, tmp
    pivots = []
    for col in range(cols):
        if r == rows:
            break
        p = -1
        for i in range(r, rows):
            if m[i, col] != 0:
                p = i
                break
        if p < 0:
            continue
        if p != r:
            for j in range(cols):
                tmp = m[r, j]
                m[r, j] = m[p, j]
                m[p, j] = tmp
        inv = INV5[m[r, col]]
        for j in range(cols):
            m[r, j] = (m[r, j] * inv) % 5
        for i in range(rows):
            if i == r:
                continue
            f = m[i, col]
            if f == 0:
                continue
            for j in range(col, cols):
                if m[r, j] != 0:
                    m[i, j] = (m[i, j] - f * m[r, j]) % 5
                    if m[i, j] < 0:
                        m[i, j] += 5
        pivots.append(col)
        r += 1
    return m, pivots


def cyclo_mul(list a, list b, list red):
    cdef Py_ssize_t d = len(a), i, j, k
    cdef list prod = [0] * (2 * d - 1)
    cdef list row
    cdef object ai, bj, c
    for i in range(d):
        ai = a[i]
        if ai:
            for j in range(d):
                bj = b[j]
                if bj:
                    prod[i + j] = prod[i + j] + ai * bj
    cdef list out = prod[:d]
    for k in range(d - 1):
        c = prod[d + k]
        if c:
            row = red[k]
            for i in range(d):
                if row[i]:
                    out[i] = out[i] + c * row[i]
    return out
