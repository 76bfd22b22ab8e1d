"""Exact rationals, dense univariate polynomials and F_5 linear algebra."""
from __future__ import annotations

import json
from fractions import Fraction
from typing import Any, Iterable, Sequence

import numpy as np

from . import kernels

Rational = Fraction


def parse_rational(text: str | int | Fraction) -> Fraction:
    """Parse ``"p/q"``, ``"p"`` or a decimal literal into an exact rational."""
    if isinstance(text, (int, Fraction)):
        return Fraction(text)
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError) as exc:
        raise ValueError(f"not an exact rational: {text!r}") from exc


def format_rational(q: Fraction | int) -> str:
    q = Fraction(q)
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


def _is_zero(c: Any) -> bool:
    return c == 0


class Poly:
    """Dense univariate polynomial; ``coeffs[k]`` is the coefficient of x**k.

    Coefficients may live in any commutative ring whose elements support
    ``+ - *`` and compare equal to ``0`` when zero (Fraction, CycloElement,
    TowerElement). Division needs an invertible leading coefficient.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable[Any] = ()):
        cs = list(coeffs)
        while cs and _is_zero(cs[-1]):
            cs.pop()
        self.coeffs: tuple = tuple(cs)

    @classmethod
    def x(cls, one: Any = 1) -> "Poly":
        return cls([one * 0, one])

    @property
    def degree(self) -> int:
        """Degree; the zero polynomial has degree -1."""
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def lead(self) -> Any:
        if not self.coeffs:
            raise ValueError("zero polynomial has no leading coefficient")
        return self.coeffs[-1]

    def __getitem__(self, k: int) -> Any:
        return self.coeffs[k] if 0 <= k < len(self.coeffs) else 0

    def __len__(self) -> int:
        return len(self.coeffs)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Poly):
            other = Poly([other])
        if len(self.coeffs) != len(other.coeffs):
            return False
        return all(a == b for a, b in zip(self.coeffs, other.coeffs))

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def __repr__(self) -> str:
        return f"Poly({list(self.coeffs)!r})"

    def _coerce(self, other: Any) -> "Poly":
        return other if isinstance(other, Poly) else Poly([other])

    def __add__(self, other: Any) -> "Poly":
        other = self._coerce(other)
        n = max(len(self.coeffs), len(other.coeffs))
        return Poly(self[k] + other[k] for k in range(n))

    __radd__ = __add__

    def __neg__(self) -> "Poly":
        return Poly(-c for c in self.coeffs)

    def __sub__(self, other: Any) -> "Poly":
        return self + (-self._coerce(other))

    def __rsub__(self, other: Any) -> "Poly":
        return self._coerce(other) - self

    def __mul__(self, other: Any) -> "Poly":
        if not isinstance(other, Poly):
            return Poly(c * other for c in self.coeffs)
        return poly_mul(self, other)

    def __rmul__(self, other: Any) -> "Poly":
        return Poly(other * c for c in self.coeffs)

    def __pow__(self, e: int) -> "Poly":
        if e < 0:
            raise ValueError("negative exponent")
        result = Poly([1])
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def __call__(self, value: Any) -> Any:
        """Horner evaluation."""
        acc: Any = 0
        for c in reversed(self.coeffs):
            acc = acc * value + c
        return acc

    def map(self, fn) -> "Poly":
        return Poly(fn(c) for c in self.coeffs)

    def monic(self) -> "Poly":
        lead = self.lead
        if isinstance(lead, (int, Fraction)):
            inv = Fraction(1) / lead
        else:
            inv = lead.inv()
        return Poly(c * inv for c in self.coeffs)

    def to_json(self) -> list:
        return [_coeff_json(c) for c in self.coeffs]

    def dumps(self) -> str:
        return json.dumps(self.to_json())


def _coeff_json(c: Any) -> Any:
    if isinstance(c, (int, Fraction)):
        return format_rational(c)
    return c.to_json()


def poly_mul(a: Poly, b: Poly) -> Poly:
    if a.is_zero() or b.is_zero():
        return Poly()
    out: list[Any] = [0] * (len(a.coeffs) + len(b.coeffs) - 1)
    for i, ai in enumerate(a.coeffs):
        if _is_zero(ai):
            continue
        for j, bj in enumerate(b.coeffs):
            out[i + j] = out[i + j] + ai * bj
    return Poly(out)


def poly_divrem(a: Poly, b: Poly) -> tuple[Poly, Poly]:
    """Euclidean division ``a = q*b + r`` with ``deg r < deg b``."""
    if b.is_zero():
        raise ZeroDivisionError("division by the zero polynomial")
    lead = b.lead
    try:
        inv = Fraction(1) / lead if isinstance(lead, (int, Fraction)) else lead.inv()
    except ZeroDivisionError as exc:
        raise ZeroDivisionError("leading coefficient is not invertible") from exc
    rem = list(a.coeffs)
    db = b.degree
    if len(rem) - 1 < db:
        return Poly(), Poly(rem)
    quot: list[Any] = [0] * (len(rem) - db)
    for k in range(len(rem) - 1, db - 1, -1):
        c = rem[k]
        if _is_zero(c):
            continue
        f = c * inv
        quot[k - db] = f
        for j, bj in enumerate(b.coeffs):
            rem[k - db + j] = rem[k - db + j] - f * bj
    return Poly(quot), Poly(rem[:db])


# -- F_5 linear algebra ---------------------------------------------------

class F5Matrix:
    """Dense matrix over F_5 (thin wrapper over an int64 array)."""

    __slots__ = ("entries",)

    def __init__(self, entries: Any):
        arr = np.array(entries, dtype=np.int64)
        if arr.ndim == 1:
            arr = arr.reshape(1, -1) if arr.size else arr.reshape(0, 0)
        self.entries = arr % 5

    @property
    def rows(self) -> int:
        return self.entries.shape[0]

    @property
    def cols(self) -> int:
        return self.entries.shape[1]

    def __matmul__(self, other: "F5Matrix") -> "F5Matrix":
        return F5Matrix(self.entries @ other.entries)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, F5Matrix) and np.array_equal(self.entries, other.entries)

    def tolist(self) -> list[list[int]]:
        return self.entries.tolist()


def _as_array(m: Any) -> np.ndarray:
    if isinstance(m, F5Matrix):
        return m.entries
    return np.array(m, dtype=np.int64) % 5


def f5_rref(m: Any) -> tuple[np.ndarray, list[int]]:
    arr = _as_array(m)
    if arr.size == 0:
        return arr.reshape(arr.shape), []
    return kernels.rref_mod5(arr)


def f5_rank(m: Any) -> int:
    return len(f5_rref(m)[1])


def f5_kernel(m: Any, cols: int | None = None) -> list[tuple[int, ...]]:
    """Basis of the right null space ``{v : M v = 0}`` over F_5.

    One basis vector per free column, in increasing column order; the free
    coordinate is 1 and the other free coordinates are 0.
    """
    arr = _as_array(m)
    if arr.ndim != 2:
        raise ValueError("expected a 2-D matrix")
    n = arr.shape[1] if cols is None else cols
    if arr.shape[0] == 0:
        return [tuple(int(i == j) for i in range(n)) for j in range(n)]
    r, pivots = kernels.rref_mod5(arr)
    pivset = set(pivots)
    basis = []
    for free in range(n):
        if free in pivset:
            continue
        v = [0] * n
        v[free] = 1
        for row, pc in enumerate(pivots):
            v[pc] = int(-r[row, free]) % 5
        basis.append(tuple(v))
    return basis


def f5_span_basis(vectors: Sequence[Sequence[int]], dim: int) -> list[tuple[int, ...]]:
    """Row-reduced basis of the span of ``vectors`` (nonzero rows of the RREF)."""
    if not vectors:
        return []
    r, pivots = kernels.rref_mod5(np.array(vectors, dtype=np.int64).reshape(len(vectors), dim))
    return [tuple(int(x) for x in r[i]) for i in range(len(pivots))]
