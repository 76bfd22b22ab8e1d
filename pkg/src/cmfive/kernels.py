"""Kernel dispatch: compiled extension if importable, else the pure fallback.

Set ``CMFIVE_PURE_PYTHON=1`` to force the fallback.
"""
from __future__ import annotations

import os

from . import _kernels_py

BACKEND = "python"
rref_mod5 = _kernels_py.rref_mod5
cyclo_mul = _kernels_py.cyclo_mul

if os.environ.get("CMFIVE_PURE_PYTHON", "") not in ("1", "true", "yes"):
    try:
        from . import _kernels_c
    except ImportError:  # extension not built
        pass
    else:
        rref_mod5 = _kernels_c.rref_mod5
        cyclo_mul = _kernels_c.cyclo_mul
        BACKEND = "cython"
