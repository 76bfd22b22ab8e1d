"""Acceptance gate: one test per criterion, each recording a single PASS/FAIL line.

Criteria that the printed data cannot meet are marked xfail(strict=True): the
check is the full check, and the suite errors if it ever starts passing.
"""
import itertools
import json
import subprocess
import sys
import time

import jsonschema
import pytest

from cmfive import cli
from cmfive import cohomology as co
from cmfive import galoisgrp as gg
from cmfive import torsion5 as t5
from cmfive.classifier import degree_from_flags, eval_conditions, group_from_flags
from conftest import ACCEPTANCE_LINES
from oracles import brute_dims, gl2_closure

CORPUS = {"F1": ("1", "2", "-1", "5/3"), "F2": ("1", "-2", "16", "3/5")}
PATTERNS = gg.all_flag_patterns()

# degree -> holding count among A, B1, B2, C, D (F1); degree -> (C, holding among A, B1, B2, D) (F2)
TABLE_F1 = {32: 5, 16: 4, 8: 3, 4: 2, 2: 1, 1: 0}
TABLE_F2 = {48: (True, 4), 24: (True, 3), 16: (False, 4), 12: (True, 2), 8: (False, 3),
            6: (True, 1), 4: (False, 2), 3: (True, 0), 2: (False, 1), 1: (False, 0)}


def record(n: int, ok: bool, detail: str) -> None:
    line = f"criterion {n}: {'PASS' if ok else 'FAIL'} ({detail})"
    ACCEPTANCE_LINES.append(line)
    print(line)
    assert ok, line


@pytest.mark.xfail(strict=True, reason="printed factor lists for q5 and r5 over Q(zeta5) do not multiply out")
def test_criterion_1_factorizations():
    start = time.perf_counter()
    rows = [t5.check_identity(name) for fam in ("F1", "F2") for name, _ in t5.IDENTITIES[fam]]
    elapsed = time.perf_counter() - start
    bad = [r for r in rows if r["status"] != "verified"]
    localized = all(m["factors"] and all(f["coefficients"] for f in m["factors"])
                    for r in bad for m in r["mismatches"])
    where = "; ".join(
        f"{r['identity']} factor {r['mismatches'][0]['factors'][0]['index']} "
        f"powers {[c['power'] for c in r['mismatches'][0]['factors'][0]['coefficients']]}" for r in bad)
    record(1, not bad and localized and elapsed < 5,
           f"{len(rows) - len(bad)}/{len(rows)} identities hold, {elapsed:.2f}s"
           + (f"; mismatches localized: {where}" if bad else ""))


def test_criterion_2_division_polynomials():
    rows = t5.division_poly_checks()
    typos = [f"{r['polynomial']} leading {r['leading_printed']} vs {r['leading_recurrence']}"
             for r in rows if r["leading_printed"] != r["leading_recurrence"]]
    record(2, all(r["ok"] for r in rows),
           ", ".join(f"{r['polynomial']} monic-equal at {r['specializations']} points" for r in rows)
           + (f"; reported: {'; '.join(typos)}" if typos else ""))


def test_criterion_3_torsion_points():
    slow, bad = [], []
    for fam, coeffs in CORPUS.items():
        for c in coeffs:
            start = time.perf_counter()
            chk = t5.check_table(t5.build_points(fam, c))
            dt = time.perf_counter() - start
            if not (chk["all_ok"] and chk["count"] == 24):
                bad.append(f"{fam} {c}")
            if dt >= 30:
                slow.append(f"{fam} {c} {dt:.1f}s")
    record(3, not bad and not slow, f"8 curves x 24 points; failures {bad or 'none'}; over 30s {slow or 'none'}")


def test_criterion_4_basis_and_cm(capsys):
    bad = []
    for fam, coeffs in CORPUS.items():
        for c in coeffs:
            b = t5.basis_check(fam, c)
            if not (b["abscissa_method"] and b["pairing_method"]):
                bad.append(f"{fam} {c}")
    om = t5.omega_report(1)
    code = cli.main(["verify", "--family", "f1", "--coeff", "1", "--only", "omega"])
    report = json.loads(capsys.readouterr().out)["results"][0]
    documented = code == 0 and any("omega1" in w for w in report["warnings"]) and report["omega"]["notes"]
    ok = not bad and om["omega1"]["phi_eigenvalue"] == 2 and documented
    record(4, ok, f"basis failures {bad or 'none'}; corrected omega1 eigenvalue {om['omega1']['phi_eigenvalue']}, "
                  f"printed omega1 eigenvalue {om['omega1_printed']['phi_eigenvalue']}")


def test_criterion_5_double_abscissa():
    results = {c: t5.double_abscissa_identity(c) for c in CORPUS["F2"]}
    record(5, all(results.values()), f"x(2P1) identity on F2 corpus: {results}")


def test_criterion_6_degree_tables():
    problems = []
    for f in PATTERNS:
        d1 = degree_from_flags("F1", f)
        if TABLE_F1[d1] != sum(f.values()):
            problems.append(f"F1 table {f}")
        d2 = degree_from_flags("F2", f)
        if TABLE_F2[d2] != (f["C"], sum(f[k] for k in ("A", "B1", "B2", "D"))):
            problems.append(f"F2 table {f}")
        for fam, d in (("F1", d1), ("F2", d2)):
            order = gg.generate([g for _, g in gg.generator_set(fam, f)], fam).order
            if order != d:
                problems.append(f"{fam} generated order {order} != {d}")
    rows = set(TABLE_F1) | {d for d in TABLE_F2}
    for fam, coeffs in CORPUS.items():
        for c in coeffs:
            _, T = t5.base_point(fam, c, 1)
            if degree_from_flags(fam, eval_conditions(fam, c)) != T.absolute_degree:
                problems.append(f"{fam} {c} tower degree")
    record(6, not problems and len(rows) >= 10, f"32 patterns x 2 families, 8 corpus towers; problems {problems or 'none'}")


@pytest.mark.xfail(strict=True, reason="F2 action tables give S3xC4xC2 and S3xC4 where D24xC2 and D24 are named; "
                                       "varphi2 psi2 = psi2^-1 varphi2 fails")
def test_criterion_7_galois_ladder():
    misses = []
    for fam in ("F1", "F2"):
        for f in PATTERNS:
            G = gg.group_for_flags(fam, f)
            name = group_from_flags(fam, f).name
            if not gg.matches(G, name):
                misses.append(f"{fam} {''.join(k if v else '-' for k, v in f.items())}: {name} vs {gg.identify(G)}")
    rels = {r["relation"]: r["holds"] for fam in ("F1", "F2") for r in gg.relation_checks(fam)}
    wanted = {k: rels[k] for k in ("rho1 phi1 = phi1^-1 rho1", "varphi2 psi2 = psi2^-1 varphi2")}
    orbits = t5.orbit_checks()
    ok = not misses and all(wanted.values()) and all(o["ok"] for o in orbits)
    record(7, ok, f"fingerprint misses {misses or 'none'}; relations {wanted}; "
                  f"orbit identities {sum(o['ok'] for o in orbits)}/{len(orbits)}")


def _brute_cyclic_count(G) -> int:
    subs = set()
    for g in G.elements:
        cyc, x = set(), g
        while not x.is_identity():
            cyc.add(x.perm)
            x = x * g
        if cyc:
            subs.add(frozenset(cyc))
    return len(subs)


def test_criterion_8_cyclic_subgroups():
    parts, ok = [], True
    for fam in ("F1", "F2"):
        rep = co.divisibility_report(fam, {k: True for k in gg.FLAG_NAMES})
        brute = _brute_cyclic_count(gg.group_for_flags(fam, [True] * 5))
        ok &= rep["cyclic_subgroups"] == brute
        ok &= rep["agrees_with_claim"] == (rep["cyclic_subgroups"] == rep["claimed_bound"])
        parts.append(f"{fam}: exhaustive {rep['cyclic_subgroups']} vs claimed {rep['claimed_bound']}, "
                     f"{'agree' if rep['agrees_with_claim'] else 'DISAGREE'}")
    record(8, ok, "; ".join(parts))


def _few_generators(elements):
    """A smallest generating set (at most three here); keeps the brute-force search small."""
    n = len(elements)
    for k in (1, 2, 3):
        for combo in itertools.combinations(elements, k):
            if len(gl2_closure(list(combo))) == n:
                return list(combo)
    raise AssertionError("group needs more than three generators")


def test_criterion_9_cohomology():
    start = time.perf_counter()
    problems = []
    groups = 0
    for fam in ("F1", "F2"):
        seen = set()
        for f in PATTERNS:
            mats = gg.matrix_rep(gg.group_for_flags(fam, f, "linear")).matrices
            key = frozenset(mats)
            if key in seen:
                continue
            seen.add(key)
            groups += 1
            d = co.dims(mats)
            ref = brute_dims(_few_generators(mats))
            h = co.h1_loc(mats, strict=False)
            if d["h1"] != 0 or ref["h1"] != 0 or ref["order"] != len(mats) or not h["agree"]:
                problems.append(f"{fam} {f}")
    randoms = co.random_subgroups(20, seed=0)
    div5 = sum(G.order % 5 == 0 for G in randoms)
    problems += [f"random order {G.order}" for G in randoms if not co.h1_loc(G, strict=False)["agree"]]
    unip = brute_dims([((1, 1), (0, 1))])
    if unip["h1"] != 1 or co.dims([((1, 1), (0, 1))])["h1"] != 1:
        problems.append("unipotent")
    elapsed = time.perf_counter() - start
    record(9, not problems and div5 > 0 and elapsed < 60,
           f"{groups} distinct flag-pattern groups with H1 = 0, 20 seeded subgroups ({div5} of order divisible by 5), "
           f"unipotent H1 dim {unip['h1']}, {elapsed:.1f}s; problems {problems or 'none'}")


INVOCATIONS = [
    ["classify", "--family", "f1", "--corpus"],
    ["classify", "--family", "f2", "--coeff", "16", "--assert", "all=1"],
    ["verify", "--family", "f2", "--coeff", "3/5"],
    ["points", "--family", "f1", "--coeff", "5/3"],
    ["galois", "--family", "f2", "--seed", "5"],
    ["galois", "--family", "f1", "--model", "linear"],
    ["h1loc", "--family", "f1"],
    ["h1loc", "--matrices", "[[[1,1],[0,1]]]"],
]


def test_criterion_10_determinism_and_schema():
    problems = []
    for argv in INVOCATIONS:
        runs = [subprocess.run([sys.executable, "-m", "cmfive", *argv], capture_output=True) for _ in range(2)]
        if runs[0].stdout != runs[1].stdout or runs[0].returncode not in (0, 3):
            problems.append(f"{' '.join(argv)} not reproducible")
            continue
        doc = json.loads(runs[0].stdout)
        try:
            jsonschema.validate(doc, cli.load_schema(doc["command"]))
        except jsonschema.ValidationError as exc:
            problems.append(f"{' '.join(argv)}: {exc.message}")
    record(10, not problems, f"{len(INVOCATIONS)} invocations run twice in fresh processes; problems {problems or 'none'}")
