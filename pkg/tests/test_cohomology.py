import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from cmfive import cohomology as co
from cmfive import galoisgrp as gg
from oracles import brute_dims, gl2_closure

UNIPOTENT = [((1, 1), (0, 1))]
BOREL = [((1, 1), (0, 1)), ((2, 0), (0, 1))]
ALL = {k: True for k in gg.FLAG_NAMES}


def invertible(m):
    return (m[0][0] * m[1][1] - m[0][1] * m[1][0]) % 5 != 0


matrices = st.tuples(st.tuples(st.integers(0, 4), st.integers(0, 4)),
                     st.tuples(st.integers(0, 4), st.integers(0, 4))).filter(invertible)
small_groups = st.lists(matrices, min_size=1, max_size=2).filter(lambda gs: len(gl2_closure(gs)) <= 24)


def test_trivial_group():
    assert co.dims([]) == {"order": 1, "z1": 0, "b1": 0, "h1": 0}
    assert co.h1_loc([])["dim"] == 0


def test_unipotent_against_brute_force():
    ref = brute_dims(UNIPOTENT)
    assert ref["h1"] == 1
    d = co.dims(UNIPOTENT)
    assert (d["z1"], d["b1"], d["h1"]) == (ref["z1"], ref["b1"], ref["h1"])
    h = co.h1_loc(UNIPOTENT)
    assert h["agree"] and h["dim"] == ref["h1loc"] == 0


def test_minus_id():
    assert co.dims([((4, 0), (0, 4))])["b1"] == 2


def test_b1_of_full_f1_group():
    G = gg.matrix_rep(gg.group_for_flags("F1", ALL, "linear")).matrices
    assert co.dims(G)["b1"] == 2


@given(small_groups)
def test_dims_against_brute_force(gens):
    ref = brute_dims(gens)
    d = co.dims(gens)
    assert (d["order"], d["z1"], d["b1"], d["h1"]) == (ref["order"], ref["z1"], ref["b1"], ref["h1"])
    h = co.h1_loc(gens)
    assert h["agree"] and h["dim"] == ref["h1loc"]


@given(st.lists(matrices, min_size=1, max_size=3))
def test_coprime_order_kills_h1(gens):
    try:
        G = co.matrix_group(gens)
    except ValueError:
        return
    d = co.dims(G)
    assert d["h1"] == d["z1"] - d["b1"]
    if G.order % 5:
        assert d["h1"] == 0


def test_basis_vectors_are_cocycles():
    G = co.matrix_group(BOREL)
    for z in co.z1_basis(G):
        Z = [z[2 * i: 2 * i + 2] for i in range(G.order)]
        for s, ms in enumerate(G.elements):
            for t in range(G.order):
                lhs = Z[G.mul[s][t]]
                rhs = [(Z[s][r] + ms[r][0] * Z[t][0] + ms[r][1] * Z[t][1]) % 5 for r in range(2)]
                assert list(lhs) == rhs


def test_restriction_to_trivial_subgroup_is_zero():
    G = co.matrix_group(BOREL)
    for z in co.z1_basis(G):
        assert co.restrict(z, G, [0]) == [0, 0]


def test_seeded_subgroups():
    groups = co.random_subgroups(20, seed=0)
    assert [g.order for g in groups] == [g.order for g in co.random_subgroups(20, seed=0)]
    assert any(g.order % 5 == 0 for g in groups)
    for G in groups:
        assert co.h1_loc(G)["agree"]


@pytest.mark.parametrize("family, claim", [("F1", 7), ("F2", 13)])
def test_divisibility_report(family, claim):
    rep = co.divisibility_report(family, ALL)
    assert rep["claimed_bound"] == claim
    assert rep["cyclic_subgroups"] == len(gg.cyclic_subgroups(gg.group_for_flags(family, ALL)))
    assert rep["agrees_with_claim"] == (rep["cyclic_subgroups"] == claim)
    assert rep["h1loc_dim"] == 0 and rep["methods_agree"]


def test_divisibility_report_trivial():
    rep = co.divisibility_report("F1", {k: False for k in gg.FLAG_NAMES})
    assert rep["cyclic_subgroups"] == 0 and rep["h1loc_dim"] == 0 and rep["claimed_bound"] is None


def test_group_cap_and_singular():
    with pytest.raises(ValueError):
        co.matrix_group([((1, 1), (1, 1))])
    with pytest.raises(ValueError):
        co.matrix_group([((1, 1), (0, 1)), ((0, 1), (1, 0))], cap=50)
