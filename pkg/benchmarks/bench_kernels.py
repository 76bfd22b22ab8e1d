"""Compiled vs pure-Python kernels on the workloads the package actually runs.

    python3 benchmarks/bench_kernels.py [--repeat N]

rref_mod5 is timed on cocycle systems of the size produced by the largest
Galois groups (|G| = 32, 48); cyclo_mul on random elements of Q(zeta_20)
and Q(zeta_15) with large coefficients.
"""
from __future__ import annotations

import argparse
import random
import timeit

import numpy as np

from cmfive import _kernels_py
from cmfive.cohomology import _cocycle_rows, matrix_group
from cmfive.cyclofield import cyclo_field
from cmfive.galoisgrp import group_for_flags, matrix_rep

try:
    from cmfive import _kernels_c
except ImportError:
    _kernels_c = None


def cocycle_system(family: str) -> np.ndarray:
    L = group_for_flags(family, [True] * 5, "linear")
    G = matrix_group(matrix_rep(L).matrices)
    n = 2 * G.order
    return np.array(_cocycle_rows(G, n), dtype=np.int64).reshape(-1, n)


def cyclo_operands(n: int, count: int, seed: int = 0):
    fld = cyclo_field(n)
    rng = random.Random(seed)
    red = [list(map(int, r)) for r in fld._red]
    pairs = [([rng.randint(-10**12, 10**12) for _ in range(fld.degree)],
              [rng.randint(-10**12, 10**12) for _ in range(fld.degree)]) for _ in range(count)]
    return pairs, red


def bench(label: str, fn_py, fn_c, repeat: int) -> None:
    t_py = min(timeit.repeat(fn_py, number=1, repeat=repeat))
    if fn_c is None:
        print(f"{label:<34} python {t_py * 1e3:9.2f} ms   cython  (not built)")
        return
    t_c = min(timeit.repeat(fn_c, number=1, repeat=repeat))
    print(f"{label:<34} python {t_py * 1e3:9.2f} ms   cython {t_c * 1e3:9.2f} ms   x{t_py / t_c:6.1f}")


def main() -> None:
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args()
    c = _kernels_c

    for fam in ("F1", "F2"):
        m = cocycle_system(fam)
        r_py = _kernels_py.rref_mod5(m)
        if c is not None:
            r_c = c.rref_mod5(m)
            assert np.array_equal(r_py[0], r_c[0]) and r_py[1] == r_c[1], "rref backends disagree"
        bench(f"rref_mod5 {fam} cocycles {m.shape[0]}x{m.shape[1]}",
              lambda: _kernels_py.rref_mod5(m), c and (lambda: c.rref_mod5(m)), args.repeat)

    for n in (20, 15):
        pairs, red = cyclo_operands(n, 2000)
        if c is not None:
            assert all(_kernels_py.cyclo_mul(a, b, red) == c.cyclo_mul(a, b, red) for a, b in pairs[:50])
        bench(f"cyclo_mul Q(zeta{n}) x{len(pairs)}",
              lambda: [_kernels_py.cyclo_mul(a, b, red) for a, b in pairs],
              c and (lambda: [c.cyclo_mul(a, b, red) for a, b in pairs]), args.repeat)


if __name__ == "__main__":
    main()
