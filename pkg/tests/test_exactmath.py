from fractions import Fraction

import numpy as np
import pytest
import sympy
from sympy import GF
from sympy.polys.matrices import DomainMatrix
from hypothesis import given
from hypothesis import strategies as st

from cmfive.exactmath import (
    F5Matrix, Poly, f5_kernel, f5_rank, f5_rref, f5_span_basis, format_rational, parse_rational, poly_divrem,
)

fractions = st.builds(Fraction, st.integers(-10**6, 10**6), st.integers(1, 50))
polys = st.lists(fractions, max_size=7).map(Poly)
f5_mats = st.integers(1, 7).flatmap(
    lambda r: st.integers(1, 7).flatmap(
        lambda c: st.lists(st.lists(st.integers(0, 4), min_size=c, max_size=c), min_size=r, max_size=r)))


def to_sympy(p: Poly):
    x = sympy.Symbol("x")
    return sympy.expand(sum(sympy.Rational(c.numerator, c.denominator) * x**i for i, c in enumerate(p.coeffs)))


@pytest.mark.parametrize("text, value", [("3", 3), ("-7/4", Fraction(-7, 4)), ("10/4", Fraction(5, 2)), (" 5/3 ", Fraction(5, 3))])
def test_parse_rational(text, value):
    assert parse_rational(text) == value


@pytest.mark.parametrize("bad", ["", "1/0", "abc", "1.5.2"])
def test_parse_rational_rejects(bad):
    with pytest.raises((ValueError, ZeroDivisionError)):
        parse_rational(bad)


@given(fractions)
def test_rational_roundtrip(q):
    assert parse_rational(format_rational(q)) == q


def test_poly_normalizes_trailing_zeros():
    assert Poly([1, 2, 0, 0]) == Poly([1, 2])
    assert Poly([0, 0]).is_zero()
    assert Poly([1, 0, 3]).degree == 2


@given(polys, polys)
def test_mul_matches_sympy(a, b):
    assert to_sympy(a * b) == sympy.expand(to_sympy(a) * to_sympy(b))


@given(polys, polys.filter(lambda p: not p.is_zero()))
def test_divrem(a, b):
    q, r = poly_divrem(a, b)
    assert q * b + r == a
    assert r.is_zero() or r.degree < b.degree


@given(polys, fractions)
def test_evaluation_is_a_ring_map(p, v):
    assert (p * p)(v) == p(v) ** 2
    assert (p + p)(v) == 2 * p(v)


@given(f5_mats)
def test_kernel_vectors_annihilate(m):
    arr = np.array(m)
    ker = f5_kernel(arr)
    assert len(ker) == arr.shape[1] - f5_rank(arr)
    for v in ker:
        assert not ((arr @ np.array(v)) % 5).any()


@given(f5_mats)
def test_rref_matches_sympy_rank(m):
    r, piv = f5_rref(m)
    gf5 = DomainMatrix([[GF(5)(x) for x in row] for row in m], (len(m), len(m[0])), GF(5))
    assert len(piv) == gf5.rank()
    for row, col in enumerate(piv):
        assert r[row, col] == 1
        assert sum(1 for x in r[:, col] if x) == 1


def test_rank_over_f5_not_q():
    # singular mod 5, invertible over Q
    assert f5_rank([[1, 2], [3, 1]]) == 1


def test_span_basis_and_matrix():
    assert f5_span_basis([[1, 1], [2, 2], [0, 1]], 2) == [(1, 0), (0, 1)]
    m = F5Matrix([[1, 2], [3, 4]])
    assert (m @ F5Matrix([[1, 0], [0, 1]])) == m
    assert F5Matrix([[6, -1]]).tolist() == [[1, 4]]


def test_kernel_of_empty_system():
    assert f5_kernel(np.zeros((0, 3), dtype=np.int64), 3) == [(1, 0, 0), (0, 1, 0), (0, 0, 1)]
