"""Pure-Python/numpy implementations of the hot kernels.

These are the reference versions; ``_kernels_c`` must agree with them
bit-for-bit.
"""
from __future__ import annotations

import numpy as np

_INV5 = (0, 1, 3, 2, 4)


def rref_mod5(a: np.ndarray) -> tuple[np.ndarray, list[int]]:
    """Reduced row echelon form over F_5.

    Pivot choice is deterministic: columns are scanned left to right and the
    topmost remaining row with a nonzero entry becomes the pivot row.
    """
    m = np.array(a, dtype=np.int64) % 5
    rows, cols = m.shape
    pivots: list[int] = []
    r = 0
    for col in range(cols):
        if r == rows:
            break
        nz = np.nonzero(m[r:, col])[0]
        if nz.size == 0:
            continue
        p = r + int(nz[0])
        if p != r:
            m[[r, p]] = m[[p, r]]
        m[r] = (m[r] * _INV5[int(m[r, col])]) % 5
        factors = m[:, col].copy()
        factors[r] = 0
        hit = np.nonzero(factors)[0]
        if hit.size:
            m[hit] = (m[hit] - np.outer(factors[hit], m[r])) % 5
        pivots.append(col)
        r += 1
    return m, pivots


def cyclo_mul(a: list[int], b: list[int], red: list[list[int]]) -> list[int]:
    """Multiply two integer coordinate vectors in Z[x]/(Phi).

    ``red[k]`` holds the power-basis coordinates of x**(d + k).
    """
    d = len(a)
    prod = [0] * (2 * d - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                if bj:
                    prod[i + j] += ai * bj
    out = prod[:d]
    for k in range(d - 1):
        c = prod[d + k]
        if c:
            row = red[k]
            for i in range(d):
                if row[i]:
                    out[i] += c * row[i]
    return out
