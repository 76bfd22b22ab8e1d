"""Command-line front end: classify, verify, points, galois, h1loc.

Exit codes: 0 success, 1 bad input, 2 oracle exhausted, 3 internal invariant violated.
"""
from __future__ import annotations

import argparse
import json
import sys
from dataclasses import replace
from fractions import Fraction
from typing import Any, Callable

from .cyclofield import OracleConfig, OracleExhaustedError
from .exactmath import format_rational, parse_rational
from .galoisgrp import FLAG_NAMES, NonLinearActionError

CORPUS = {"F1": ("1", "2", "-1", "5/3"), "F2": ("1", "-2", "16", "3/5")}
VERIFY_PARTS = ("factorizations", "division", "points", "basis", "omega", "double", "orbits")
SCHEMA_VERSION = "1"

EXIT_OK, EXIT_INPUT, EXIT_ORACLE, EXIT_INTERNAL = 0, 1, 2, 3


class UsageError(ValueError):
    pass


class InvariantError(RuntimeError):
    pass


def parse_coeff(text: str) -> Fraction:
    try:
        q = parse_rational(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise UsageError(f"not an exact rational: {text!r}") from exc
    if q == 0:
        raise UsageError("coefficient 0 gives a singular curve")
    return q


def parse_flags(text: str) -> dict[str, bool]:
    """``A=1,B1=0,...`` or ``all=1`` / ``all=0``; unspecified flags default to true."""
    out = {k: True for k in FLAG_NAMES}
    for part in filter(None, (p.strip() for p in text.split(","))):
        key, sep, val = part.partition("=")
        key = key.strip()
        if not sep or val.strip() not in ("0", "1", "true", "false"):
            raise UsageError(f"bad flag assignment {part!r}")
        bit = val.strip() in ("1", "true")
        if key.lower() == "all":
            out = {k: bit for k in FLAG_NAMES}
        elif key.upper() in FLAG_NAMES:
            out[key.upper()] = bit
        else:
            raise UsageError(f"unknown flag {key!r}")
    return out


def _coeffs(args) -> list[Fraction]:
    if args.corpus:
        return [parse_coeff(c) for c in CORPUS[args.family]]
    if args.coeff is None:
        raise UsageError("--coeff or --corpus is required")
    return [parse_coeff(args.coeff)]


def _config(args) -> OracleConfig:
    cfg = OracleConfig.from_env()
    if args.prime_cap is not None:
        cfg = replace(cfg, prime_cap=args.prime_cap)
    if args.lift_cap is not None:
        cfg = replace(cfg, lift_cap=args.lift_cap)
    return cfg


def load_schema(command: str) -> dict:
    from importlib.resources import files

    return json.loads(files("cmfive").joinpath(f"schemas/{command}.v{SCHEMA_VERSION}.json").read_text())


def _envelope(command: str, results: list) -> dict:
    return {"schema": f"cmfive/{command}/v{SCHEMA_VERSION}", "command": command, "results": results}


# -- subcommands ---------------------------------------------------------------

def cmd_classify(args) -> tuple[dict, int]:
    from .classifier import classify

    flags = parse_flags(args.assert_flags) if args.assert_flags else None
    cfg = _config(args)
    return _envelope("classify", [classify(args.family, c, flags, cfg) for c in _coeffs(args)]), EXIT_OK


def _verify_one(family: str, coeff: Fraction, parts: list[str], cfg: OracleConfig, seed: int) -> dict:
    from . import torsion5 as t5

    rec: dict[str, Any] = {"family": family, "coeff": format_rational(coeff)}
    failures: list[str] = []
    warnings: list[str] = []
    if "factorizations" in parts:
        rows = t5.verify_factorization(family)
        rec["factorizations"] = rows
        for row in rows:
            if row["status"] == "verified":
                continue
            fixed = any(r["identity"] == row["identity"] and r["variant"] == "corrected"
                        and r["status"] == "verified" for r in rows)
            msg = f"{row['identity']} ({row['variant']}): {row['status']}"
            (warnings if fixed and row["variant"] == "printed" else failures).append(msg)
    if "division" in parts:
        rows = t5.division_poly_checks()
        rec["division"] = rows
        failures += [f"{r['polynomial']} differs from the recurrence" for r in rows if not r["ok"]]
        warnings += [f"{r['polynomial']}: printed leading coefficient {r['leading_printed']}, "
                     f"recurrence gives {r['leading_recurrence']}" for r in rows
                     if r["leading_printed"] != r["leading_recurrence"]]
    if "points" in parts:
        table = t5.build_points(family, coeff, cfg)
        chk = t5.check_table(table)
        rec["points"] = {k: chk[k] for k in ("count", "distinct_abscissas", "all_ok")}
        if not chk["all_ok"]:
            failures.append("torsion table check failed")
    if "basis" in parts:
        b = t5.basis_check(family, coeff, 1, seed, cfg)
        rec["basis"] = b
        if not (b["basis"] and b["agree"]):
            failures.append("{P1, phi(P1)} failed a basis check")
    if "omega" in parts and family == "F1":
        om = t5.omega_report(coeff)
        rec["omega"] = om
        if om["omega1"]["phi_eigenvalue"] != 2:
            failures.append("corrected omega point is not a phi-eigenvector with eigenvalue 2")
        if om["omega1_printed"]["phi_eigenvalue"] != 2:
            warnings.append(f"printed omega1 gives eigenvalue {om['omega1_printed']['phi_eigenvalue']}, not 2")
    if "double" in parts and family == "F2":
        ok = t5.double_abscissa_identity(coeff, cfg)
        rec["double_abscissa"] = ok
        if not ok:
            failures.append("x(2 P1) identity failed")
    if "orbits" in parts:
        rows = t5.orbit_checks()
        rec["orbits"] = rows
        failures += [r["name"] for r in rows if not r["ok"]]
    rec["label_notes"] = list(t5.LABEL_NOTES[family])
    rec["warnings"] = warnings
    rec["failures"] = failures
    rec["ok"] = not failures
    return rec


def cmd_verify(args) -> tuple[dict, int]:
    parts = list(VERIFY_PARTS)
    if args.only:
        parts = [p.strip() for p in args.only.split(",")]
        for p in parts:
            if p not in VERIFY_PARTS:
                raise UsageError(f"unknown check {p!r}; choose from {', '.join(VERIFY_PARTS)}")
    cfg = _config(args)
    recs = [_verify_one(args.family, c, parts, cfg, args.seed) for c in _coeffs(args)]
    return _envelope("verify", recs), EXIT_OK if all(r["ok"] for r in recs) else EXIT_INTERNAL


def cmd_points(args) -> tuple[dict, int]:
    from .torsion5 import build_points, check_table

    cfg = _config(args)
    recs = []
    for c in _coeffs(args):
        table = build_points(args.family, c, cfg)
        chk = check_table(table)
        recs.append({
            "family": args.family,
            "coeff": format_rational(c),
            "points": [table.entries[lab].to_json() for lab in table.labels()],
            "all_ok": chk["all_ok"],
        })
    code = EXIT_OK if all(r["all_ok"] for r in recs) else EXIT_INTERNAL
    return _envelope("points", recs), code


def _flags_for(args) -> tuple[dict[str, bool], str, str | None]:
    if args.assert_flags:
        return parse_flags(args.assert_flags), "asserted", None
    if args.coeff is not None:
        from .classifier import eval_conditions

        c = parse_coeff(args.coeff)
        return eval_conditions(args.family, c, _config(args)).as_dict(), "computed", format_rational(c)
    return {k: True for k in FLAG_NAMES}, "asserted", None


def cmd_galois(args) -> tuple[dict, int]:
    from . import galoisgrp as gg
    from .classifier import group_from_flags

    flags, mode, coeff = _flags_for(args)
    G = gg.group_for_flags(args.family, flags, args.model)
    desc = group_from_flags(args.family, flags)
    found = gg.identify(G)
    subs = gg.cyclic_subgroups(G)
    rec: dict[str, Any] = {
        "family": args.family,
        "model": args.model,
        "coeff": coeff,
        "flags": {**flags, "mode": mode},
        "order": G.order,
        "descriptor": desc.to_json(),
        "fingerprint_match": desc.name in found,
        "identified_as": list(found),
        "generators": [{"name": n, "zeta5": g.zeta5, "cm": g.cm, "order": g.order(),
                        "action": g.table(args.family)} for n, g in G.generators],
        "relations": gg.relation_checks(args.family, args.model),
        "cyclic_subgroups": [{"order": len(s), "generator": min(s, key=lambda i: -G.elements[i].order()),
                              "elements": list(s)} for s in subs],
    }
    try:
        rec["matrix_rep"] = gg.matrix_rep(G).to_json()
        rec["matrix_rep_error"] = None
    except NonLinearActionError as exc:
        rec["matrix_rep"] = None
        rec["matrix_rep_error"] = str(exc)
    if args.strict and not rec["fingerprint_match"]:
        return _envelope("galois", [rec]), EXIT_INTERNAL
    return _envelope("galois", [rec]), EXIT_OK


def cmd_h1loc(args) -> tuple[dict, int]:
    from . import cohomology as co
    from . import galoisgrp as gg

    if args.matrices:
        try:
            mats = json.loads(args.matrices)
            G = co.matrix_group(mats)
        except (ValueError, TypeError, IndexError) as exc:
            raise UsageError(f"bad --matrices: {exc}") from exc
        rec: dict[str, Any] = {"source": "matrices", "generators": [[list(r) for r in co.as_mat(m)] for m in mats]}
        report = None
    else:
        if args.family is None:
            raise UsageError("--family or --matrices is required")
        flags, mode, coeff = _flags_for(args)
        L = gg.group_for_flags(args.family, flags, "linear")
        G = co.matrix_group(gg.matrix_rep(L).matrices)
        rec = {"source": "family", "family": args.family, "coeff": coeff, "flags": {**flags, "mode": mode}}
        report = co.divisibility_report(args.family, flags)
    d = co.dims(G)
    h = co.h1_loc(G, strict=False)
    rec.update({"order": G.order, "z1": d["z1"], "b1": d["b1"], "h1": d["h1"],
                "h1loc": h["dim"], "h1loc_a": h["dim_a"], "h1loc_b": h["dim_b"],
                "methods_agree": h["agree"], "report": report})
    return _envelope("h1loc", [rec]), EXIT_OK if h["agree"] else EXIT_INTERNAL


# -- text rendering ---------------------------------------------------------------

def render_text(doc: dict) -> str:
    lines = []
    for rec in doc["results"]:
        head = " ".join(f"{k}={rec[k]}" for k in ("family", "coeff", "model", "source") if rec.get(k) is not None)
        lines.append(f"[{doc['command']}] {head}")
        for key, val in rec.items():
            if key in ("family", "coeff", "model", "source"):
                continue
            if isinstance(val, (dict, list)) and len(json.dumps(val)) > 100:
                val = f"<{type(val).__name__} of {len(val)}>"
            lines.append(f"  {key}: {val}")
    return "\n".join(lines)


# -- entry point -------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--family", type=str.lower, choices=("f1", "f2"))
    common.add_argument("--coeff")
    out = common.add_mutually_exclusive_group()
    out.add_argument("--json", dest="output", action="store_const", const="json")
    out.add_argument("--text", dest="output", action="store_const", const="text")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--prime-cap", type=int)
    common.add_argument("--lift-cap", type=int)

    parser = argparse.ArgumentParser(prog="cmfive", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("classify", parents=[common], help="conditions, degree and Galois group")
    p.add_argument("--assert", dest="assert_flags", metavar="FLAGS")
    p.add_argument("--corpus", action="store_true")

    p = sub.add_parser("verify", parents=[common], help="factorizations, division polynomials, points")
    p.add_argument("--only", metavar="CHECKS", help=",".join(VERIFY_PARTS))
    p.add_argument("--corpus", action="store_true")

    p = sub.add_parser("points", parents=[common], help="the 24 labeled 5-torsion points")
    p.add_argument("--corpus", action="store_true")

    p = sub.add_parser("galois", parents=[common], help="generated group, relations, subgroups, matrices")
    p.add_argument("--assert", dest="assert_flags", metavar="FLAGS")
    p.add_argument("--model", choices=("literal", "linear"), default="literal")
    p.add_argument("--strict", action="store_true", help="exit 3 when the fingerprint misses the descriptor")

    p = sub.add_parser("h1loc", parents=[common], help="H^1 and H^1_loc over F_5")
    p.add_argument("--assert", dest="assert_flags", metavar="FLAGS")
    p.add_argument("--matrices", metavar="JSON")
    return parser


COMMANDS: dict[str, Callable] = {
    "classify": cmd_classify,
    "verify": cmd_verify,
    "points": cmd_points,
    "galois": cmd_galois,
    "h1loc": cmd_h1loc,
}


def dumps(doc: dict) -> str:
    return json.dumps(doc, indent=2, sort_keys=True)


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_OK
    if args.family:
        args.family = args.family.upper()
    elif args.command != "h1loc":
        print("error: --family is required", file=sys.stderr)
        return EXIT_INPUT
    try:
        doc, code = COMMANDS[args.command](args)
    except (UsageError, ValueError, ZeroDivisionError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except OracleExhaustedError as exc:
        print(f"oracle exhausted: {exc}", file=sys.stderr)
        return EXIT_ORACLE
    except (AssertionError, NonLinearActionError, InvariantError) as exc:
        print(f"internal invariant violated: {exc}", file=sys.stderr)
        return EXIT_INTERNAL
    print(render_text(doc) if args.output == "text" else dumps(doc))
    return code
