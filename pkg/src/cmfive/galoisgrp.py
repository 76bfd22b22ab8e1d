"""Galois groups of the 5-torsion fields as permutation groups on 24 labeled points.

Two realizations are built from the same generator names and flag pruning:

``literal``  the literal action tables (point maps and scalar actions) as stated
           for the two families;
``linear`` a faithful realization inside GL2(F5) acting on the basis
           {P1, phi(P1)}; this is the one with a matrix representation, and
           the one fed to the cohomology computations.

Labels: F1 uses (j, s, t) for s * phi_1^t(P_j), j = 1..6; F2 uses (j, s, k)
for s * phi_2^k(P_j), j = 1..4.
"""
from __future__ import annotations

import itertools
from collections import Counter
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable

FLAG_NAMES = ("A", "B1", "B2", "C", "D")
MODELS = ("literal", "linear")
MAX_ORDER = 48


class GroupTooLargeError(RuntimeError):
    pass


class NonLinearActionError(ValueError):
    pass


# -- labels ----------------------------------------------------------------

@lru_cache(maxsize=None)
def labels(family: str) -> tuple[tuple[int, int, int], ...]:
    if family == "F1":
        return tuple(sorted((j, s, t) for j in range(1, 7) for s in (1, -1) for t in (0, 1)))
    if family == "F2":
        return tuple(sorted((j, s, k) for j in range(1, 5) for s in (1, -1) for k in range(3)))
    raise ValueError(f"unknown family {family!r}")


def _index(family: str) -> dict[tuple[int, int, int], int]:
    return {lab: n for n, lab in enumerate(labels(family))}


def neg_label(lab: tuple[int, int, int]) -> tuple[int, int, int]:
    return (lab[0], -lab[1], lab[2])


# -- automorphisms ------------------------------------------------------------

@dataclass(frozen=True)
class Automorphism:
    """A permutation of the 24 labels plus the scalar action.

    ``zeta5`` is the exponent k of zeta_5 -> zeta_5^k; ``cm`` is +1 when the
    CM scalar (i or zeta_3) is fixed and -1 when it is conjugated.
    """

    perm: tuple[int, ...]
    zeta5: int = 1
    cm: int = 1

    def __mul__(self, other: "Automorphism") -> "Automorphism":
        """Composition: (self * other)(P) = self(other(P))."""
        return Automorphism(tuple(self.perm[i] for i in other.perm), self.zeta5 * other.zeta5 % 5, self.cm * other.cm)

    def inverse(self) -> "Automorphism":
        inv = [0] * len(self.perm)
        for i, j in enumerate(self.perm):
            inv[j] = i
        return Automorphism(tuple(inv), pow(self.zeta5, -1, 5), self.cm)

    def __pow__(self, n: int) -> "Automorphism":
        if n < 0:
            return self.inverse() ** (-n)
        out = identity(len(self.perm))
        for _ in range(n):
            out = out * self
        return out

    def is_identity(self) -> bool:
        return self.zeta5 == 1 and self.cm == 1 and all(i == j for i, j in enumerate(self.perm))

    def order(self) -> int:
        g, n = self, 1
        while not g.is_identity():
            g, n = g * self, n + 1
        return n

    def apply(self, family: str, lab: tuple[int, int, int]) -> tuple[int, int, int]:
        return labels(family)[self.perm[_index(family)[lab]]]

    def table(self, family: str) -> list[list[list[int]]]:
        return [[list(lab), list(self.apply(family, lab))] for lab in labels(family)]


def identity(n: int = 24) -> Automorphism:
    return Automorphism(tuple(range(n)))


def _from_label_map(family: str, fn, zeta5: int, cm: int) -> Automorphism:
    idx = _index(family)
    perm = tuple(idx[fn(lab)] for lab in labels(family))
    if sorted(perm) != list(range(len(perm))):
        raise ValueError("label map is not a permutation")
    return Automorphism(perm, zeta5 % 5, cm)


# -- the action tables as stated ------------------------------------------------

def _literal_f1() -> dict[str, Automorphism]:
    rho_j = {1: 3, 3: 1, 2: 4, 4: 2, 5: 6, 6: 5}

    def phi(lab):
        j, s, t = lab
        return (j, s, 1) if t == 0 else (j, -s, 0)

    def psi(lab):
        j, s, t = lab
        return (j % 4 + 1 if j <= 4 else j, s, t)

    def rho(lab):
        j, s, t = lab
        return (rho_j[j], s if t == 0 else -s, t)

    return {
        "phi1": _from_label_map("F1", phi, 1, 1),
        "psi1": _from_label_map("F1", psi, 2, 1),
        "rho1": _from_label_map("F1", rho, 1, -1),
    }


def _literal_f2() -> dict[str, Automorphism]:
    def phi(lab):
        j, s, k = lab
        return (j, s, (k + 1) % 3)

    def varphi1(lab):
        j, s, k = lab
        return (j % 4 + 1, s, k)

    def neg(lab):
        j, s, k = lab
        return (j, -s, k)

    def varphi2(lab):
        j, s, k = lab
        return ((j + 1) % 4 + 1, s, (-k) % 3)

    return {
        "phi2": _from_label_map("F2", phi, 1, 1),
        "varphi1": _from_label_map("F2", varphi1, 2, 1),
        "minus_id": _from_label_map("F2", neg, 1, 1),
        "varphi2": _from_label_map("F2", varphi2, 1, -1),
    }


# -- the GL2(F5) realization ----------------------------------------------------

Mat = tuple[tuple[int, int], tuple[int, int]]


def mat_mul(a: Mat, b: Mat) -> Mat:
    return tuple(
        tuple((a[i][0] * b[0][j] + a[i][1] * b[1][j]) % 5 for j in range(2)) for i in range(2)
    )  # type: ignore[return-value]


def mat_vec(a: Mat, v: tuple[int, int]) -> tuple[int, int]:
    return ((a[0][0] * v[0] + a[0][1] * v[1]) % 5, (a[1][0] * v[0] + a[1][1] * v[1]) % 5)


def mat_det(a: Mat) -> int:
    return (a[0][0] * a[1][1] - a[0][1] * a[1][0]) % 5


def mat_pow(a: Mat, n: int) -> Mat:
    out: Mat = ((1, 0), (0, 1))
    for _ in range(n):
        out = mat_mul(out, a)
    return out


def mat_order(a: Mat) -> int:
    g, n = a, 1
    while g != ((1, 0), (0, 1)):
        g, n = mat_mul(g, a), n + 1
    return n


def _scale(c: int, v: tuple[int, int]) -> tuple[int, int]:
    return (c * v[0] % 5, c * v[1] % 5)


J_F1: Mat = ((0, 4), (1, 0))        # phi_1 on {P1, iP1}
PSI_F1: Mat = ((1, 4), (1, 1))      # 1 + J: commutes with J, det 2
RHO_F1: Mat = ((0, 2), (2, 0))      # det 1, conjugates J to J^-1
PHI_F2: Mat = ((0, 4), (1, 4))      # phi_2 on {P1, phi_2 P1}; Phi^2 + Phi + 1 = 0
MINUS_ID: Mat = ((4, 0), (0, 4))


def _cartan_f2(a: int, b: int) -> Mat:
    """Multiplication by a + b*Phi on F5[Phi] = F25, basis {1, Phi}."""
    return ((a % 5, -b % 5), (b % 5, (a - b) % 5))


@lru_cache(maxsize=None)
def _alpha_f2() -> Mat:
    """Smallest a + b*Phi of norm 2 and order 8 (a lift of zeta_5 -> zeta_5^2)."""
    for a, b in itertools.product(range(5), repeat=2):
        m = _cartan_f2(a, b)
        if mat_det(m) == 2 and mat_order(m) == 8:
            return m
    raise AssertionError("no norm-2 element of order 8")


@lru_cache(maxsize=None)
def _varphi2_f2() -> Mat:
    """beta*e1 -> frob(beta) * alpha^2 * e1 with frob(beta) = beta^5 on F25."""
    frob: Mat = ((1, 4), (0, 4))  # 1 -> 1, Phi -> Phi^2 = -1 - Phi
    return mat_mul(mat_pow(_alpha_f2(), 2), frob)


@lru_cache(maxsize=None)
def label_vectors(family: str) -> dict[tuple[int, int, int], tuple[int, int]]:
    """Coordinates of every labeled point in the basis {P1, phi(P1)} of the linear model."""
    out = {}
    if family == "F1":
        bases = {j: mat_vec(mat_pow(PSI_F1, j - 1), (1, 0)) for j in range(1, 5)}
        bases[5] = (1, 3)  # phi_1 eigenvalue 2
        bases[6] = (1, 2)  # phi_1 eigenvalue 3
        for j, s, t in labels("F1"):
            out[(j, s, t)] = _scale(s, mat_vec(mat_pow(J_F1, t), bases[j]))
    else:
        alpha = _alpha_f2()
        for j, s, k in labels("F2"):
            v = mat_vec(mat_mul(mat_pow(PHI_F2, k), mat_pow(alpha, j - 1)), (1, 0))
            out[(j, s, k)] = _scale(s, v)
    if len(set(out.values())) != 24 or (0, 0) in out.values():
        raise AssertionError("label vectors are not the 24 nonzero vectors")
    return out


def _from_matrix(family: str, m: Mat, cm: int) -> Automorphism:
    vec = label_vectors(family)
    back = {v: lab for lab, v in vec.items()}
    return _from_label_map(family, lambda lab: back[mat_vec(m, vec[lab])], mat_det(m), cm)


def _linear_f1() -> dict[str, Automorphism]:
    return {
        "phi1": _from_matrix("F1", J_F1, 1),
        "psi1": _from_matrix("F1", PSI_F1, 1),
        "rho1": _from_matrix("F1", RHO_F1, -1),
    }


def _linear_f2() -> dict[str, Automorphism]:
    return {
        "phi2": _from_matrix("F2", PHI_F2, 1),
        "varphi1": _from_matrix("F2", _alpha_f2(), 1),
        "minus_id": _from_matrix("F2", MINUS_ID, 1),
        "varphi2": _from_matrix("F2", _varphi2_f2(), -1),
    }


@lru_cache(maxsize=None)
def base_generators(family: str, model: str = "literal") -> dict[str, Automorphism]:
    if model not in MODELS:
        raise ValueError(f"unknown model {model!r}")
    if family == "F1":
        return _literal_f1() if model == "literal" else _linear_f1()
    if family == "F2":
        return _literal_f2() if model == "literal" else _linear_f2()
    raise ValueError(f"unknown family {family!r}")


# -- flags -> generators ----------------------------------------------------------

def normalize_flags(flags) -> dict[str, bool]:
    if isinstance(flags, dict):
        return {k: bool(flags[k]) for k in FLAG_NAMES}
    return dict(zip(FLAG_NAMES, (bool(f) for f in flags)))


def all_flag_patterns() -> list[dict[str, bool]]:
    return [dict(zip(FLAG_NAMES, bits)) for bits in itertools.product((True, False), repeat=5)]


def _shrink(g: Automorphism, first: bool, second: bool) -> Automorphism | None:
    """A pair of conditions guards one generator: one failure squares it, two drop it."""
    if first and second:
        return g
    if first or second:
        return g * g
    return None


def generator_set(family: str, flags, model: str = "literal") -> list[tuple[str, Automorphism]]:
    f = normalize_flags(flags)
    g = base_generators(family, model)
    out: list[tuple[str, Automorphism]] = []
    if family == "F1":
        phi = _shrink(g["phi1"], f["C"], f["D"])
        psi = _shrink(g["psi1"], f["B1"], f["B2"])
        if phi is not None:
            out.append(("phi1" if f["C"] and f["D"] else "phi1^2", phi))
        if psi is not None:
            out.append(("psi1" if f["B1"] and f["B2"] else "psi1^2", psi))
        if f["A"]:
            out.append(("rho1", g["rho1"]))
        return out
    vp1 = _shrink(g["varphi1"], f["B1"], f["B2"])
    if f["C"]:
        out.append(("phi2", g["phi2"]))
    psi2 = g["phi2"] if f["C"] else None
    if vp1 is not None:
        psi2 = vp1 if psi2 is None else psi2 * vp1
    if psi2 is not None and not psi2.is_identity():
        out.append(("psi2", psi2))
    if f["D"]:
        out.append(("minus_id", g["minus_id"]))
    if f["A"]:
        out.append(("varphi2", g["varphi2"]))
    return out


# -- closure --------------------------------------------------------------------

@dataclass
class FiniteGroupRep:
    elements: list[Automorphism]
    generators: list[tuple[str, Automorphism]]
    family: str | None = None
    model: str | None = None

    def __post_init__(self):
        self._pos = {e: n for n, e in enumerate(self.elements)}

    @property
    def order(self) -> int:
        return len(self.elements)

    def index(self, g: Automorphism) -> int:
        return self._pos[g]

    def __contains__(self, g: Automorphism) -> bool:
        return g in self._pos

    def is_abelian(self) -> bool:
        gens = [g for _, g in self.generators]
        return all(a * b == b * a for a in gens for b in gens)

    def center_order(self) -> int:
        return sum(1 for z in self.elements if all(z * g == g * z for _, g in self.generators))

    def element_orders(self) -> list[int]:
        return sorted(g.order() for g in self.elements)


def generate(gens: Iterable, family: str | None = None, model: str | None = None,
             cap: int = MAX_ORDER) -> FiniteGroupRep:
    named = [(n, g) if isinstance(g, Automorphism) else ("g", g) for n, g in
             ((x if isinstance(x, tuple) else ("g", x)) for x in gens)]
    n = len(named[0][1].perm) if named else 24
    e = identity(n)
    elements = [e]
    seen = {e}
    frontier = [e]
    while frontier:
        nxt = []
        for x in frontier:
            for _, g in named:
                y = g * x
                if y not in seen:
                    seen.add(y)
                    elements.append(y)
                    nxt.append(y)
                    if len(elements) > cap:
                        raise GroupTooLargeError(f"closure exceeds {cap} elements")
        frontier = nxt
    return FiniteGroupRep(elements, named, family, model)


def group_for_flags(family: str, flags, model: str = "literal") -> FiniteGroupRep:
    return generate(generator_set(family, flags, model), family, model)


# -- fingerprints -------------------------------------------------------------

Fingerprint = tuple[int, bool, tuple[tuple[int, int], ...], int]


def fingerprint(G: FiniteGroupRep) -> Fingerprint:
    counts = Counter(G.element_orders())
    return (G.order, G.is_abelian(), tuple(sorted(counts.items())), G.center_order())


def _abstract(name: str):
    """Small abstract groups as sympy permutation groups (catalog construction only)."""
    from sympy.combinatorics import CyclicGroup, DihedralGroup, PermutationGroup, SymmetricGroup
    from sympy.combinatorics.group_constructs import DirectProduct
    from sympy.combinatorics.permutations import Permutation

    def C(n):
        return CyclicGroup(n) if n > 1 else PermutationGroup([Permutation([0])])

    def D(order):
        return DihedralGroup(order // 2)

    def wreath_c4_c2():
        # C4 wr C2 on 8 points: two 4-cycles and the block swap
        a = Permutation([1, 2, 3, 0, 4, 5, 6, 7])
        s = Permutation([4, 5, 6, 7, 0, 1, 2, 3])
        return PermutationGroup([a, s])

    def cartan_normalizer():
        # C24 x| C2 with x -> x^5, as a permutation group on C24 x {0,1}
        def act(f):
            return Permutation([f(i, e) for e in (0, 1) for i in range(24)])

        def enc(i, e):
            return i + 24 * e

        gen = act(lambda i, e: enc((i + 1) % 24, e))
        flip = act(lambda i, e: enc(i * 5 % 24, 1 - e))
        return PermutationGroup([gen, flip])

    table = {
        "Trivial": lambda: C(1),
        "C2": lambda: C(2), "C3": lambda: C(3), "C4": lambda: C(4), "C6": lambda: C(6), "C12": lambda: C(12),
        "V4": lambda: DirectProduct(C(2), C(2)),
        "C2³": lambda: DirectProduct(C(2), C(2), C(2)),
        "C4×C2": lambda: DirectProduct(C(4), C(2)),
        "C4×C2²": lambda: DirectProduct(C(4), C(2), C(2)),
        "C4×C4": lambda: DirectProduct(C(4), C(4)),
        "C6×C2": lambda: DirectProduct(C(6), C(2)),
        "C12×C2": lambda: DirectProduct(C(12), C(2)),
        "D6": lambda: D(6), "D8": lambda: D(8), "D12": lambda: D(12), "D24": lambda: D(24),
        "D8×C2": lambda: DirectProduct(D(8), C(2)),
        "D8×C4": lambda: DirectProduct(D(8), C(4)),
        "D12×C2": lambda: DirectProduct(D(12), C(2)),
        "D24×C2": lambda: DirectProduct(D(24), C(2)),
        "S3×C2": lambda: DirectProduct(SymmetricGroup(3), C(2)),
        # not named by the case analysis; they identify what the tables actually generate
        "S3×C4": lambda: DirectProduct(SymmetricGroup(3), C(4)),
        "S3×C4×C2": lambda: DirectProduct(SymmetricGroup(3), C(4), C(2)),
        "C4≀C2": wreath_c4_c2,
        "C24⋊C2": cartan_normalizer,
    }
    return table[name]()


LADDER_CATALOG = (
    "Trivial", "C2", "C3", "C4", "C6", "C12", "V4", "C2³", "C4×C2", "C4×C2²", "C4×C4", "C6×C2",
    "C12×C2", "D6", "D8", "D12", "D8×C2", "D8×C4", "D12×C2", "D24", "D24×C2", "S3×C2",
)
EXTRA_CATALOG = ("S3×C4", "S3×C4×C2", "C4≀C2", "C24⋊C2")
ALIASES = {"S3×C2": "D12"}


def _perm_fingerprint(P) -> Fingerprint:
    elems = list(P.elements)
    counts = Counter(g.order() for g in elems)
    return (P.order(), P.is_abelian, tuple(sorted(counts.items())), P.center().order())


@lru_cache(maxsize=None)
def catalog() -> dict[Fingerprint, tuple[str, ...]]:
    """Fingerprint -> names; isomorphic aliases share an entry, anything else must not."""
    out: dict[Fingerprint, list[str]] = {}
    for name in LADDER_CATALOG + EXTRA_CATALOG:
        out.setdefault(_perm_fingerprint(_abstract(name)), []).append(name)
    for names in out.values():
        canon = {ALIASES.get(n, n) for n in names}
        if len(canon) > 1:
            raise AssertionError(f"catalog fingerprint collision: {names}")
    return {fp: tuple(names) for fp, names in out.items()}


@lru_cache(maxsize=None)
def catalog_cyclic_count(name: str, include_trivial: bool = False) -> int:
    """Exhaustive count of cyclic subgroups of the abstract catalog group."""
    P = _abstract(name)
    subs = set()
    for g in P.elements:
        members = frozenset(g**k for k in range(g.order()))
        if len(members) > 1 or include_trivial:
            subs.add(members)
    return len(subs)


def catalog_order(name: str) -> int:
    for fp, names in catalog().items():
        if name in names:
            return fp[0]
    raise KeyError(name)


def catalog_abelian(name: str) -> bool:
    for fp, names in catalog().items():
        if name in names:
            return fp[1]
    raise KeyError(name)


def identify(G: FiniteGroupRep) -> tuple[str, ...]:
    """Catalog names matching G's fingerprint (empty if none)."""
    return catalog().get(fingerprint(G), ())


def matches(G: FiniteGroupRep, name: str) -> bool:
    return name in identify(G)


# -- relations ------------------------------------------------------------------

def relation_checks(family: str, model: str = "literal") -> list[dict]:
    g = base_generators(family, model)
    out = []

    def rel(name, lhs, rhs):
        out.append({"relation": name, "holds": lhs == rhs})

    if family == "F1":
        phi, psi, rho = g["phi1"], g["psi1"], g["rho1"]
        rel("rho1 phi1 = phi1^-1 rho1", rho * phi, phi.inverse() * rho)
        rel("phi1 psi1 = psi1 phi1", phi * psi, psi * phi)
        rel("rho1 psi1 = psi1 rho1", rho * psi, psi * rho)
        rel("phi1^2 = -Id", phi * phi, _negation("F1"))
        out.append({"relation": "orders phi1, psi1, rho1 = 4, 4, 2",
                    "holds": (phi.order(), psi.order(), rho.order()) == (4, 4, 2)})
    else:
        phi, vp1, neg, vp2 = g["phi2"], g["varphi1"], g["minus_id"], g["varphi2"]
        psi = phi * vp1
        rel("varphi2 psi2 = psi2^-1 varphi2", vp2 * psi, psi.inverse() * vp2)
        rel("varphi1 varphi2 = varphi2 varphi1", vp1 * vp2, vp2 * vp1)
        rel("phi2 varphi1 = varphi1 phi2", phi * vp1, vp1 * phi)
        out.append({"relation": "orders phi2, varphi1, -Id, varphi2, psi2 = 3, 4, 2, 2, 12",
                    "holds": (phi.order(), vp1.order(), neg.order(), vp2.order(), psi.order()) == (3, 4, 2, 2, 12)})
    return out


def _negation(family: str) -> Automorphism:
    return _from_label_map(family, neg_label, 1, 1)


def commutes_with_negation(G: FiniteGroupRep) -> bool:
    fam = G.family
    neg = _negation(fam)
    return all(g * neg == neg * g for _, g in G.generators)


# -- cyclic subgroups --------------------------------------------------------------

def cyclic_subgroups(G: FiniteGroupRep, include_trivial: bool = False) -> list[tuple[int, ...]]:
    """One entry per distinct <g>, as a sorted tuple of element indices."""
    seen: dict[frozenset, None] = {}
    for g in G.elements:
        sub = set()
        x = g
        while True:
            sub.add(G.index(x))
            if x.is_identity():
                break
            x = x * g
        key = frozenset(sub)
        if len(key) == 1 and not include_trivial:
            continue
        seen.setdefault(key, None)
    return sorted((tuple(sorted(s)) for s in seen), key=lambda s: (len(s), s))


# -- matrices ------------------------------------------------------------------------

def basis_labels(family: str) -> tuple[tuple[int, int, int], tuple[int, int, int]]:
    return (1, 1, 0), (1, 1, 1)


def matrix_of(family: str, g: Automorphism) -> Mat:
    """Matrix of g on {P1, phi(P1)}, checked against all 24 labels."""
    vec = label_vectors(family)
    b1, b2 = basis_labels(family)
    c1, c2 = vec[g.apply(family, b1)], vec[g.apply(family, b2)]
    m: Mat = ((c1[0], c2[0]), (c1[1], c2[1]))
    for lab in labels(family):
        if mat_vec(m, vec[lab]) != vec[g.apply(family, lab)]:
            raise NonLinearActionError(f"the action on {lab} is not given by {m}")
    return m


@dataclass
class MatrixRep:
    family: str
    matrices: list[Mat]

    def to_json(self) -> list:
        return [[list(r) for r in m] for m in self.matrices]


def matrix_rep(G: FiniteGroupRep) -> MatrixRep:
    mats = [matrix_of(G.family, g) for g in G.elements]
    pos = {m: n for n, m in enumerate(mats)}
    if len(pos) != len(mats):
        raise NonLinearActionError("representation is not faithful")
    for a, ma in zip(G.elements, mats):
        for b, mb in zip(G.elements, mats):
            if mats[G.index(a * b)] != mat_mul(ma, mb):
                raise NonLinearActionError("matrix map is not multiplicative")
    for g, m in zip(G.elements, mats):
        if mat_det(m) != g.zeta5:
            raise NonLinearActionError("determinant differs from the cyclotomic character")
    return MatrixRep(G.family, mats)


# -- consistency with the constructed points --------------------------------------------

def label_constant_check(family: str, coeff=1) -> list[dict]:
    """x(a P1 + b phi(P1))^2 (F1) or ^3 (F2) against the label's constant, inside P1's tower."""
    from fractions import Fraction

    from .torsion5 import base_point, make_curve, root_constants

    curve = make_curve(family, coeff)
    P, _ = base_point(family, coeff, 1)
    phiP = curve.cm_endo(P)
    ks = root_constants(family)
    power = 2 if family == "F1" else 3
    out = []
    for lab, (a, b) in sorted(label_vectors(family).items()):
        Q = curve.add(curve.scalar_mul(a, P), curve.scalar_mul(b, phiP))
        ok = (not Q.is_infinity) and Q.x**power == ks[lab[0] - 1] * Fraction(coeff)
        out.append({"label": list(lab), "vector": [a, b], "ok": ok})
    return out
