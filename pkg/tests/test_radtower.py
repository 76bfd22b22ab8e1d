import cmath
import random
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from cmfive.cyclofield import cyclo_field
from cmfive.radtower import Degenerate, TowerElement, TowerField, adjoin, extend, residue
from cmfive.torsion5 import base_point, root_constants

seeds = st.integers(0, 2**32)


def numeric(e, roots):
    """Evaluate under the complex embedding fixed by zeta_n -> exp(2 pi i/n) and the given radical values."""
    if isinstance(e, TowerElement):
        t = roots[id(e.field)]
        return sum(numeric(c, roots) * t**j for j, c in enumerate(e.coeffs))
    z = cmath.exp(2j * cmath.pi / e.field.n)
    return sum(float(c) * z**j for j, c in enumerate(e.coords))


def radical_values(T):
    roots = {}
    for f in reversed(T.ancestors()[:-1]):
        r = numeric(f.radicand, roots)
        roots[id(f)] = r ** (1 / f.degree)
    return roots


def towers():
    F20, F15 = cyclo_field(20), cyclo_field(15)
    s3 = TowerField(F20, "sqrt", 3)
    c2 = TowerField(F15, "cbrt", 2)
    return {
        "sqrt/Q(z20)": s3,
        "sqrt/sqrt/Q(z20)": TowerField(s3, "sqrt", s3.gen + 1),
        "cbrt/Q(z15)": c2,
        "sqrt/cbrt/Q(z15)": TowerField(c2, "sqrt", F15.gen + 2),
    }


TOWERS = towers()
names = st.sampled_from(sorted(TOWERS))


@given(names, seeds)
def test_field_operations_match_complex_embedding(name, seed):
    T = TOWERS[name]
    rng = random.Random(seed)
    a, b = T.random_element(rng, 4), T.random_element(rng, 4)
    roots = radical_values(T)
    na, nb = numeric(a, roots), numeric(b, roots)
    assert abs(numeric(a * b, roots) - na * nb) < 1e-6 * (1 + abs(na * nb))
    assert abs(numeric(a - b, roots) - (na - nb)) < 1e-6 * (1 + abs(na) + abs(nb))


@given(names, seeds)
def test_inverse(name, seed):
    a = TOWERS[name].random_element(random.Random(seed), 5)
    if a == 0:
        return
    assert a * a.inv() == 1
    assert (1 / a) * a == 1


@pytest.mark.parametrize("name", sorted(TOWERS))
def test_generator_satisfies_its_radical(name):
    T = TOWERS[name]
    assert T.gen ** T.degree == T(T.radicand)
    assert T.absolute_degree == T.degree * T.below.absolute_degree


def test_mixed_depth_arithmetic():
    T = TOWERS["sqrt/sqrt/Q(z20)"]
    low = T.below.gen
    top = T.gen
    assert (low + top) - top == T(low)
    assert (top * low).field is T
    assert (T(low)).descend() == low


def test_unrelated_towers_do_not_mix():
    a = TowerField(cyclo_field(20), "sqrt", 3).gen
    b = TowerField(cyclo_field(20), "sqrt", 7).gen
    with pytest.raises((TypeError, ValueError)):
        a + b


def test_degenerate_extension_returns_exact_root():
    F = cyclo_field(20)
    out = extend(F, "sqrt", 4 * F.gen**2)
    assert isinstance(out, Degenerate)
    assert out.root**2 == 4 * F.gen**2
    fld, r = adjoin(F, "sqrt", -1)
    assert fld is F and r == F.root_of_unity(4)


def test_proper_extension():
    F = cyclo_field(20)
    out = extend(F, "sqrt", 3)
    assert isinstance(out, TowerField) and out.absolute_degree == 16


@given(st.sampled_from(["sqrt/Q(z20)", "sqrt/sqrt/Q(z20)"]), seeds)
def test_squares_in_sqrt_towers(name, seed):
    a = TOWERS[name].random_element(random.Random(seed), 3)
    if a == 0:
        return
    cert = residue(a * a, 2)
    assert cert.verdict and cert.verify()


def test_kummer_cube_root():
    T = TOWERS["cbrt/Q(z15)"]
    cert = residue(T(16), 3)
    assert cert.verdict and cert.root**3 == 16


@pytest.mark.parametrize("name, value, ell", [("sqrt/Q(z20)", 2, 2), ("sqrt/sqrt/Q(z20)", 2, 2), ("cbrt/Q(z15)", 3, 3)])
def test_no_certificates_in_towers(name, value, ell):
    T = TOWERS[name]
    cert = residue(T(value), ell)
    assert not cert.verdict and cert.verify()


def test_square_root_across_cube_step_is_unsupported():
    T = TOWERS["cbrt/Q(z15)"]
    with pytest.raises(NotImplementedError):
        residue((T.gen + 1) ** 2, 2)


@pytest.mark.parametrize("family, coeff, degrees", [
    ("F1", 1, (16, 32)), ("F1", 2, (16, 32)), ("F1", -1, (16, 32)), ("F1", "5/3", (16, 32)),
    ("F2", 1, (24, 48)), ("F2", -2, (24, 48)), ("F2", 16, (24, 48)), ("F2", "3/5", (24, 48)),
    ("F2", 10, (8, 16)),
])
def test_corpus_towers(family, coeff, degrees):
    k1 = root_constants(family)[0]
    kind = "sqrt" if family == "F1" else "cbrt"
    f1, x = adjoin(k1.field, kind, k1 * Fraction(coeff))
    assert f1.absolute_degree == degrees[0]
    _, T = base_point(family, coeff, 1)
    assert T.absolute_degree == degrees[1]


def test_tower_json_is_nested_coordinates():
    T = TOWERS["sqrt/cbrt/Q(z15)"]
    js = T.to_json()
    assert js["conductor"] == 15 and [s["kind"] for s in js["steps"]] == ["cbrt", "sqrt"]
