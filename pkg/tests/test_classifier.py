import itertools
from fractions import Fraction

import pytest

from cmfive.classifier import ConditionFlags, classify, degree_from_flags, eval_conditions, group_from_flags
from cmfive.galoisgrp import FLAG_NAMES, all_flag_patterns, catalog_order
from cmfive.torsion5 import base_point

PATTERNS = all_flag_patterns()

# F1 degree table: degree -> number of holding conditions among A, B1, B2, C, D
TABLE_F1 = {32: 5, 16: 4, 8: 3, 4: 2, 2: 1, 1: 0}
# F2 degree table: degree -> (C holds, number holding among A, B1, B2, D)
TABLE_F2 = {48: (True, 4), 24: (True, 3), 16: (False, 4), 12: (True, 2), 8: (False, 3),
            6: (True, 1), 4: (False, 2), 3: (True, 0), 2: (False, 1), 1: (False, 0)}


def pattern_id(f):
    return "".join(k if v else "-" for k, v in f.items())


@pytest.mark.parametrize("flags", PATTERNS, ids=pattern_id)
def test_table_f1(flags):
    rows = [d for d, k in TABLE_F1.items() if sum(flags.values()) == k]
    assert rows == [degree_from_flags("F1", flags)]


@pytest.mark.parametrize("flags", PATTERNS, ids=pattern_id)
def test_table_f2(flags):
    others = sum(flags[k] for k in ("A", "B1", "B2", "D"))
    rows = [d for d, (c, k) in TABLE_F2.items() if flags["C"] == c and others == k]
    assert rows == [degree_from_flags("F2", flags)]


def test_every_table_row_is_reached():
    assert {degree_from_flags("F1", f) for f in PATTERNS} == set(TABLE_F1)
    assert {degree_from_flags("F2", f) for f in PATTERNS} == set(TABLE_F2)


@pytest.mark.parametrize("family", ["F1", "F2"])
@pytest.mark.parametrize("flags", PATTERNS, ids=pattern_id)
def test_descriptor_order_is_degree(family, flags):
    desc = group_from_flags(family, flags)
    assert desc.order == degree_from_flags(family, flags) == catalog_order(desc.name)


def flags_of(**true):
    return {k: bool(true.get(k, False)) for k in FLAG_NAMES}


@pytest.mark.parametrize("family, flags, name, abelian", [
    ("F1", flags_of(A=1, B1=1, B2=1, C=1, D=1), "D8×C4", False),
    ("F1", flags_of(B1=1, B2=1, C=1, D=1), "C4×C4", True),
    ("F1", flags_of(A=1, B1=1, C=1, D=1), "D8×C2", False),
    ("F1", flags_of(A=1, B1=1, B2=1, C=1), "C4×C2²", True),
    ("F1", flags_of(A=1, C=1, D=1), "D8", False),
    ("F1", flags_of(B1=1, B2=1), "C4", True),
    ("F1", flags_of(A=1, C=1), "V4", True),
    ("F2", flags_of(A=1, B1=1, B2=1, C=1, D=1), "D24×C2", False),
    ("F2", flags_of(B1=1, B2=1, C=1, D=1), "C12×C2", True),
    ("F2", flags_of(A=1, B1=1, B2=1, C=1), "D24", False),
    ("F2", flags_of(A=1, B1=1, C=1, D=1), "D12×C2", False),
    ("F2", flags_of(A=1, B1=1, B2=1, D=1), "C4×C2²", True),
    ("F2", flags_of(A=1, C=1, D=1), "S3×C2", False),
    ("F2", flags_of(A=1, C=1), "D6", False),
    ("F2", flags_of(C=1, D=1), "C6", True),
    ("F2", flags_of(C=1), "C3", True),
    ("F2", flags_of(), "Trivial", True),
])
def test_case_ladder_examples(family, flags, name, abelian):
    desc = group_from_flags(family, flags)
    assert (desc.name, desc.abelian) == (name, abelian)


def test_routed_patterns_carry_notes():
    noted = {(fam, pattern_id(f)) for fam in ("F1", "F2") for f in PATTERNS if group_from_flags(fam, f).note}
    assert noted == {("F1", "A B1 B2 - -".replace(" ", "")), ("F2", "-B1B2C-")}


def test_asserted_mode_is_verbatim():
    f = ConditionFlags.asserted({"A": True, "B1": False, "B2": True, "C": False, "D": True})
    assert f.mode == "asserted" and f.as_dict() == {"A": True, "B1": False, "B2": True, "C": False, "D": True}
    rec = classify("F1", 1, f)
    assert rec["flags"]["mode"] == "asserted" and rec["degree"] == 8


def test_all_false_asserted():
    rec = classify("F2", 3, {k: False for k in FLAG_NAMES})
    assert rec["degree"] == 1 and rec["group"]["name"] == "Trivial" and rec["cyclic_subgroup_count"] == 0


CORPUS = [("F1", c) for c in ("1", "2", "-1", "5/3")] + [("F2", c) for c in ("1", "-2", "16", "3/5", "10")]


@pytest.mark.parametrize("family, coeff", CORPUS)
def test_computed_degree_matches_tower(family, coeff):
    flags = eval_conditions(family, coeff)
    assert flags.mode == "computed" and flags.A and flags.B1 and flags.B2
    assert all(c.verify() for c in flags.certificates.values())
    _, T = base_point(family, coeff, 1)
    assert degree_from_flags(family, flags) == T.absolute_degree


def test_cube_case():
    flags = eval_conditions("F2", 10)
    assert not flags.C and flags.D
    assert flags.certificates["C"].root ** 3 == flags.certificates["C"].element


@pytest.mark.parametrize("bad", [0, "0/3"])
def test_zero_coefficient(bad):
    with pytest.raises(ValueError):
        eval_conditions("F1", bad)


def test_classify_record_fields():
    rec = classify("F2", 16)
    assert set(rec) == {"family", "coeff", "flags", "degree", "group", "k5_generators",
                        "cyclic_subgroup_count", "h1loc_dim", "notes"}
    assert rec["degree"] == 48 and rec["h1loc_dim"] == 0
    assert any("S3×C4×C2" in n for n in rec["notes"])
