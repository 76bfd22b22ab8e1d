"""H^1(G, F5^2) and its locally trivial part, by exact linear algebra over F_5.

Groups are finite subgroups of GL2(F5) given by matrices (generators or a full
element list). Cocycles are stored as full tables: a vector of length 2|G|
holding Z_g at positions 2*i, 2*i + 1 for the i-th element.
"""
from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .exactmath import f5_kernel, f5_rank, f5_span_basis
from .galoisgrp import Mat, mat_mul, mat_vec

IDENTITY: Mat = ((1, 0), (0, 1))
MAX_ORDER = 120


class CohomologyMismatchError(AssertionError):
    pass


def as_mat(m) -> Mat:
    return ((int(m[0][0]) % 5, int(m[0][1]) % 5), (int(m[1][0]) % 5, int(m[1][1]) % 5))


@dataclass
class MatrixGroup:
    elements: list[Mat]

    def __post_init__(self):
        self.pos = {m: n for n, m in enumerate(self.elements)}
        n = len(self.elements)
        self.mul = [[self.pos[mat_mul(a, b)] for b in self.elements] for a in self.elements]
        if n and self.elements[0] != IDENTITY:
            raise ValueError("element 0 must be the identity")

    @property
    def order(self) -> int:
        return len(self.elements)


def matrix_group(gens: Iterable, cap: int = MAX_ORDER) -> MatrixGroup:
    """Closure of the given matrices under multiplication; identity first."""
    gens = [as_mat(g) for g in gens]
    elems = [IDENTITY]
    seen = {IDENTITY}
    frontier = [IDENTITY]
    while frontier:
        nxt = []
        for x in frontier:
            for g in gens:
                y = mat_mul(g, x)
                if y not in seen:
                    if (y[0][0] * y[1][1] - y[0][1] * y[1][0]) % 5 == 0:
                        raise ValueError("singular matrix")
                    seen.add(y)
                    elems.append(y)
                    nxt.append(y)
                    if len(elems) > cap:
                        raise ValueError(f"group order exceeds {cap}")
        frontier = nxt
    return MatrixGroup(elems)


def _group(G) -> MatrixGroup:
    return G if isinstance(G, MatrixGroup) else matrix_group(G)


def _minus_one(m: Mat) -> Mat:
    return ((m[0][0] - 1) % 5, m[0][1]), (m[1][0], (m[1][1] - 1) % 5)


def _cocycle_rows(G: MatrixGroup, nvars: int) -> list[list[int]]:
    """Z_{st} - Z_s - s Z_t = 0 for every ordered pair."""
    rows = []
    for s, ms in enumerate(G.elements):
        for t in range(G.order):
            st = G.mul[s][t]
            for r in range(2):
                row = [0] * nvars
                row[2 * st + r] += 1
                row[2 * s + r] -= 1
                row[2 * t] -= ms[r][0]
                row[2 * t + 1] -= ms[r][1]
                rows.append([v % 5 for v in row])
    return rows


def z1_basis(G) -> list[tuple[int, ...]]:
    G = _group(G)
    n = 2 * G.order
    return f5_kernel(np.array(_cocycle_rows(G, n), dtype=np.int64).reshape(-1, n), n)


def b1_basis(G) -> list[tuple[int, ...]]:
    """Span of sigma -> (sigma - 1) m over m in F5^2."""
    G = _group(G)
    vecs = []
    for m in ((1, 0), (0, 1)):
        v: list[int] = []
        for g in G.elements:
            v.extend(mat_vec(_minus_one(g), m))
        vecs.append(v)
    return f5_span_basis(vecs, 2 * G.order)


def dims(G) -> dict[str, int]:
    G = _group(G)
    z, b = len(z1_basis(G)), len(b1_basis(G))
    return {"order": G.order, "z1": z, "b1": b, "h1": z - b}


def _left_kernel(m: Mat) -> list[tuple[int, ...]]:
    return f5_kernel([[m[0][0], m[1][0]], [m[0][1], m[1][1]]], 2)


def _local_a(G: MatrixGroup) -> list[tuple[int, ...]]:
    """Cocycles with Z_sigma in Im(sigma - 1) for every sigma."""
    n = 2 * G.order
    rows = _cocycle_rows(G, n)
    for s, ms in enumerate(G.elements):
        for u in _left_kernel(_minus_one(ms)):
            row = [0] * n
            row[2 * s], row[2 * s + 1] = u[0], u[1]
            rows.append(row)
    return f5_kernel(np.array(rows, dtype=np.int64).reshape(-1, n), n)


def cyclic_subgroups(G: MatrixGroup) -> list[tuple[int, ...]]:
    subs = {}
    for g in range(G.order):
        cur, members = g, {0}
        while cur != 0:
            members.add(cur)
            cur = G.mul[cur][g]
        subs.setdefault(frozenset(members), g)
    return sorted((tuple(sorted(s)) for s in subs), key=lambda s: (len(s), s))


def _local_b(G: MatrixGroup) -> list[tuple[int, ...]]:
    """Intersection over cyclic H of ker(res_H): Z restricted to H equals (h - 1) m_H."""
    n = 2 * G.order
    subs = [s for s in cyclic_subgroups(G) if len(s) > 1]
    nvars = n + 2 * len(subs)
    rows = _cocycle_rows(G, nvars)
    for k, H in enumerate(subs):
        aux = n + 2 * k
        for h in H:
            mh = _minus_one(G.elements[h])
            for r in range(2):
                row = [0] * nvars
                row[2 * h + r] = 1
                row[aux] = -mh[r][0] % 5
                row[aux + 1] = -mh[r][1] % 5
                rows.append(row)
    sol = f5_kernel(np.array(rows, dtype=np.int64).reshape(-1, nvars), nvars)
    return f5_span_basis([v[:n] for v in sol], n) if sol else []


def _same_space(a: Sequence, b: Sequence, n: int) -> bool:
    ra, rb = f5_rank(np.array(a).reshape(-1, n)) if a else 0, f5_rank(np.array(b).reshape(-1, n)) if b else 0
    both = list(a) + list(b)
    rab = f5_rank(np.array(both).reshape(-1, n)) if both else 0
    return ra == rb == rab


def h1_loc(G, strict: bool = True) -> dict:
    """H^1_loc both ways; a disagreement raises unless ``strict`` is off."""
    G = _group(G)
    n = 2 * G.order
    b1 = b1_basis(G)
    za, zb = _local_a(G), _local_b(G)
    agree = _same_space(za, zb, n)
    if strict and not agree:
        raise CohomologyMismatchError("H^1_loc differs between the two formulations")
    reps = _complement(za, b1, n)
    return {
        "order": G.order,
        "dim": len(za) - len(b1),
        "dim_a": len(za) - len(b1),
        "dim_b": len(zb) - len(b1),
        "agree": agree,
        "representatives": [list(r) for r in reps],
    }


def _complement(space: Sequence, sub: Sequence, n: int) -> list[tuple[int, ...]]:
    """Vectors of ``space`` extending a basis of ``sub`` to a basis of ``space``."""
    basis = list(sub)
    out = []
    rank = len(basis)
    for v in space:
        cand = basis + [v]
        r = f5_rank(np.array(cand).reshape(-1, n))
        if r > rank:
            basis, rank = cand, r
            out.append(tuple(v))
    return out


def restrict(cocycle: Sequence[int], G: MatrixGroup, H: Sequence[int]) -> list[int]:
    out = []
    for h in H:
        out.extend(cocycle[2 * h: 2 * h + 2])
    return out


# -- test headroom -------------------------------------------------------------

def random_subgroups(count: int = 20, seed: int = 0, cap: int = 60) -> list[MatrixGroup]:
    """Seeded subgroups of GL2(F5) of order <= cap; every third one contains a unipotent."""
    rng = random.Random(seed)
    out: list[MatrixGroup] = []
    unip: Mat = ((1, 1), (0, 1))
    while len(out) < count:
        gens = []
        for _ in range(rng.randint(1, 2)):
            while True:
                m = tuple(tuple(rng.randrange(5) for _ in range(2)) for _ in range(2))
                if (m[0][0] * m[1][1] - m[0][1] * m[1][0]) % 5:
                    break
            gens.append(m)
        if len(out) % 3 == 0:
            conj = gens[0]
            gens = [unip, ((conj[0][0], 0), (0, conj[1][1] or 1))]
        try:
            out.append(matrix_group(gens, cap))
        except ValueError:
            continue
    return out


def divisibility_report(family: str, flags) -> dict:
    from . import galoisgrp

    from .classifier import group_from_flags

    f = galoisgrp.normalize_flags(flags)
    desc = group_from_flags(family, f).name
    G = galoisgrp.group_for_flags(family, f, "literal")
    L = galoisgrp.group_for_flags(family, f, "linear")
    mats = galoisgrp.matrix_rep(L).matrices
    h = h1_loc(mats)
    s = len(galoisgrp.cyclic_subgroups(G))
    claimed = {"F1": 7, "F2": 13}[family] if all(f.values()) else None
    verdict = (f"H1_loc = 0, so local-global divisibility by 5 holds with |S| = {s} places"
               if h["dim"] == 0 else "H1_loc is nonzero; no conclusion")
    return {
        "family": family,
        "flags": f,
        "group_order": G.order,
        "cyclic_subgroups": s,
        "cyclic_subgroups_with_trivial": len(galoisgrp.cyclic_subgroups(G, include_trivial=True)),
        "cyclic_subgroups_linear_model": len(galoisgrp.cyclic_subgroups(L)),
        "descriptor": desc,
        "cyclic_subgroups_descriptor": galoisgrp.catalog_cyclic_count(desc),
        "claimed_bound": claimed,
        "agrees_with_claim": None if claimed is None else s == claimed,
        "h1": dims(mats)["h1"],
        "h1loc_dim": h["dim"],
        "methods_agree": h["agree"],
        "verdict": verdict,
    }
