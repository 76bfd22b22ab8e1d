"""Conditions A, B1, B2, C, D; the degree [K5 : K]; the isomorphism type of Gal(K5/K)."""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any

from .cyclofield import OracleConfig, is_cube, is_square
from .galoisgrp import FLAG_NAMES, catalog_abelian, catalog_order, normalize_flags
from .radtower import extend, Degenerate, residue
from .torsion5 import FAMILIES, constants

K5_GENERATORS = {
    "F1": "Q(zeta5, i, sqrt((theta1+1)*b*sqrt(theta1*b)))",
    "F2": "Q(zeta3, zeta5, cbrt(delta1*c), sqrt((delta1+1)*c))",
}


@dataclass
class ConditionFlags:
    A: bool
    B1: bool
    B2: bool
    C: bool
    D: bool
    mode: str = "computed"
    certificates: dict = field(default_factory=dict, compare=False, repr=False)

    def as_dict(self) -> dict[str, bool]:
        return {k: getattr(self, k) for k in FLAG_NAMES}

    def to_json(self) -> dict:
        out: dict[str, Any] = dict(self.as_dict())
        out["mode"] = self.mode
        return out

    @classmethod
    def asserted(cls, flags) -> "ConditionFlags":
        return cls(**normalize_flags(flags), mode="asserted")


@dataclass(frozen=True)
class GroupDescriptor:
    name: str
    order: int
    abelian: bool
    note: str | None = None

    def to_json(self) -> dict:
        return {"name": self.name, "order": self.order, "abelian": self.abelian}


def _check_family(family: str) -> None:
    if family not in FAMILIES:
        raise ValueError(f"unknown family {family!r}")


def eval_conditions(family: str, coeff: Any, config: OracleConfig | None = None) -> ConditionFlags:
    """Conditions over K = Q; A, B1, B2 always hold there."""
    _check_family(family)
    coeff = Fraction(coeff)
    if coeff == 0:
        raise ValueError("coefficient must be nonzero")
    config = config or OracleConfig.from_env()
    k = constants(family).values
    certs: dict[str, Any] = {}
    if family == "F1":
        t1 = k["theta1"]
        c_cert = is_square(t1 * coeff, config)
        certs["C"] = c_cert
        if c_cert.verdict:
            root = c_cert.root
            d_cert = is_square((t1 + 1) * coeff * root, config)
        else:
            step = extend(t1.field, "sqrt", t1 * coeff, config)
            d_cert = residue((step((t1 + 1) * coeff)) * step.gen, 2, config)
        certs["D"] = d_cert
    else:
        d1 = k["delta1"]
        c_cert = is_cube(d1 * coeff, config)
        d_cert = is_square((d1 + 1) * coeff, config)
        certs["C"], certs["D"] = c_cert, d_cert
    return ConditionFlags(True, True, True, not certs["C"].verdict, not certs["D"].verdict,
                          "computed", certs)


def degree_from_flags(family: str, flags) -> int:
    _check_family(family)
    f = normalize_flags(flags.as_dict() if isinstance(flags, ConditionFlags) else flags)
    if family == "F1":
        return 2 ** sum(f.values())
    return 2 ** sum(f[k] for k in ("A", "B1", "B2", "D")) * 3 ** f["C"]


def _desc(name: str, note: str | None = None) -> GroupDescriptor:
    return GroupDescriptor(name, catalog_order(name), catalog_abelian(name), note)


_UNCOVERED = "pattern not covered by the case text; routed by group order"


def _f1_group(f: dict[str, bool]) -> GroupDescriptor:
    d = 2 ** sum(f.values())
    failing = {k for k, v in f.items() if not v}
    b_fail = len(failing & {"B1", "B2"})
    cd_fail = len(failing & {"C", "D"})
    if d == 32:
        return _desc("D8×C4")
    if d == 16:
        if not f["A"]:
            return _desc("C4×C4")
        return _desc("D8×C2" if b_fail else "C4×C2²")
    if d == 8:
        if b_fail == 2:
            return _desc("D8")
        if b_fail == 1:
            return _desc("C4×C2" if not f["A"] else "C2³")
        if cd_fail == 2:
            return _desc("C4×C2", _UNCOVERED)
        return _desc("C4×C2")
    if d == 4:
        holding = {k for k, v in f.items() if v}
        return _desc("C4" if holding in ({"B1", "B2"}, {"C", "D"}) else "V4")
    return _desc("C2" if d == 2 else "Trivial")


def _f2_group(f: dict[str, bool]) -> GroupDescriptor:
    d = degree_from_flags("F2", f)
    b_fail = (not f["B1"]) + (not f["B2"])
    if d == 48:
        return _desc("D24×C2")
    if d == 24:
        if not f["A"]:
            return _desc("C12×C2")
        if not f["D"]:
            return _desc("D24")
        return _desc("D12×C2")
    if d == 16:
        return _desc("C4×C2²")
    if d == 12:
        if not f["A"]:
            if not f["D"]:
                return _desc("C12", "case text names <psi2, -Id>, which needs D; routed by group order")
            return _desc("C6×C2")
        if not f["D"]:
            return _desc("D12")
        return _desc("S3×C2")
    if d == 8:
        if not f["D"] or not f["A"]:
            return _desc("C4×C2")
        return _desc("C2³")
    if d == 6:
        return _desc("D6" if f["A"] else "C6")
    if d == 4:
        return _desc("C4" if f["B1"] and f["B2"] else "V4")
    return _desc({3: "C3", 2: "C2", 1: "Trivial"}[d])


def group_from_flags(family: str, flags) -> GroupDescriptor:
    _check_family(family)
    f = normalize_flags(flags.as_dict() if isinstance(flags, ConditionFlags) else flags)
    return _f1_group(f) if family == "F1" else _f2_group(f)


def classify(family: str, coeff: Any, flags=None, config: OracleConfig | None = None) -> dict:
    """Full record for one curve; ``flags`` (mapping or ConditionFlags) switches to asserted mode."""
    from . import cohomology, galoisgrp

    _check_family(family)
    coeff = Fraction(coeff)
    if coeff == 0:
        raise ValueError("coefficient must be nonzero")
    if flags is None:
        cf = eval_conditions(family, coeff, config)
    elif isinstance(flags, ConditionFlags):
        cf = flags
    else:
        cf = ConditionFlags.asserted(flags)
    desc = group_from_flags(family, cf)
    notes = []
    if desc.note:
        notes.append(desc.note)
    G = galoisgrp.group_for_flags(family, cf.as_dict(), "literal")
    if not galoisgrp.matches(G, desc.name):
        found = galoisgrp.identify(G)
        notes.append(f"action tables generate {found[0] if found else 'an uncatalogued group'} "
                     f"(order {G.order}), not {desc.name}")
    L = galoisgrp.group_for_flags(family, cf.as_dict(), "linear")
    h1 = cohomology.h1_loc(galoisgrp.matrix_rep(L).matrices)
    if family == "F2":
        notes.append("zeta5 is listed among the generators of K5 since the 5-torsion field contains it")
    return {
        "family": family,
        "coeff": _fmt(coeff),
        "flags": cf.to_json(),
        "degree": degree_from_flags(family, cf),
        "group": desc.to_json(),
        "k5_generators": K5_GENERATORS[family].replace("*b*", f"*({_fmt(coeff)})*")
        .replace("*b)", f"*({_fmt(coeff)}))").replace("*c)", f"*({_fmt(coeff)}))"),
        "cyclic_subgroup_count": len(galoisgrp.cyclic_subgroups(G)),
        "h1loc_dim": h1["dim"],
        "notes": notes,
    }


def _fmt(q: Fraction) -> str:
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"
