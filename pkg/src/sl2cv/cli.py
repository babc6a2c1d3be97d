"""Command-line driver: sl2cv verify | census | detect | detect-s4 | conjecture."""

from __future__ import annotations

import argparse
import json
import math
import sys
from importlib.metadata import PackageNotFoundError, version as pkg_version
from typing import Any, Optional, Sequence

from . import suite
from .detection import DETECTED, DetectionError, conjecture_probe, detect_s4
from .families import FamilyError
from .field_arith import FieldError, fq_make
from .groups import GluingMatrix, classify_surface_cases, presentation_of
from .oracle import BoundExceeded, census

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_BOUND, EXIT_MISMATCH = 0, 1, 2, 3, 4


class UsageError(ValueError):
    pass


def _version() -> str:
    try:
        return pkg_version("artifact")
    except PackageNotFoundError:  # pragma: no cover
        return "0.0.0"


def encode(obj: Any) -> Any:
    """Make a payload JSON-safe; +inf becomes null next to an "infinite" flag."""
    if isinstance(obj, dict):
        out = {}
        for k, v in obj.items():
            if isinstance(v, float) and math.isinf(v):
                out[k] = None
                out[f"{k}_infinite" if k != "valuation" else "infinite"] = True
            else:
                out[str(k)] = encode(v)
        return out
    if isinstance(obj, (list, tuple)):
        return [None if isinstance(x, float) and math.isinf(x) else encode(x) for x in obj]
    if isinstance(obj, float) and math.isinf(obj):
        return None
    return obj


def _phi(text: Optional[str]) -> Optional[GluingMatrix]:
    if text is None:
        return None
    try:
        return GluingMatrix.parse(text)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc


def _field_of_order(q: int):
    for p in range(2, q + 1):
        k, r = 0, 1
        while r < q:
            r *= p
            k += 1
        if r == q:
            try:
                return fq_make(p, k)
            except FieldError:
                break
    raise UsageError(f"{q} is not a prime power")


# -- commands ----------------------------------------------------------------------

def cmd_verify(args) -> tuple[list, int]:
    phi = _phi(args.phi)
    primes = tuple(args.p) if args.p else suite.DEFAULT_PRIMES
    if args.all:
        checks = suite.run_all(primes)
    else:
        if args.lemma not in suite.LEMMAS:
            raise UsageError(f"unknown lemma {args.lemma!r}; choose from {sorted(suite.LEMMAS)}")
        fn = suite.LEMMAS[args.lemma]
        checks = []
        if args.lemma in suite.PER_PRIME:
            for p in primes:
                checks += fn(p, phi)
        else:
            checks = fn(args.p[0] if args.p and len(args.p) == 1 else None, phi)
    results = [c.to_json() for c in checks]
    if args.all:
        results.append({"check": "summary", "ok": all(c.ok for c in checks), "checks": len(checks),
                        "failed": sum(not c.ok for c in checks),
                        "certification": suite.load_expectations()["certification"]})
    return results, EXIT_OK if all(c.ok for c in checks) else EXIT_FAIL


def cmd_census(args) -> tuple[list, int]:
    F = _field_of_order(args.q)
    if args.group == "glued":
        phi = _phi(args.phi)
        if phi is None:
            raise UsageError("census --group glued needs --phi")
        pres = presentation_of(phi)
    else:
        pres = presentation_of(args.group)
    rep = census(pres, F)
    return [rep.to_json()], EXIT_FAIL if rep.uncovered else EXIT_OK


def cmd_detect(args) -> tuple[list, int]:
    phi = _phi(args.phi)
    cases = classify_surface_cases(phi)
    if args.surface not in cases:
        return [{"error": "case mismatch", "phi": str(phi), "surface": args.surface,
                 "available": cases.sorted()}], EXIT_MISMATCH
    verdicts = suite.surface_verdicts(phi, args.surface, args.p)
    detected = suite.is_detected(verdicts)
    expected = suite.expected_verdict(args.surface, phi, args.p)
    results = [{"phi": str(phi), "surface": args.surface, "p": args.p, "kind": cases.kind,
                "detected": detected, "expected": expected, "verdicts": verdicts,
                "detected_by": sorted({v["family"]["tag"] for v in verdicts
                                       if v["verdict"] == DETECTED and "family" in v})}]
    if not verdicts:
        results[0]["note"] = "no implemented curve applies; non-detection is relative to the family list"
    return results, EXIT_OK if detected == expected else EXIT_FAIL


def cmd_detect_s4(args) -> tuple[list, int]:
    v = detect_s4(args.kparity, args.eps, args.u, args.v, args.q, args.p)
    return [v.to_json()], EXIT_OK


def cmd_conjecture(args) -> tuple[list, int]:
    return [conjecture_probe(args.kparity, args.eps, args.q, args.r, args.p)], EXIT_OK


COMMANDS = {"verify": cmd_verify, "census": cmd_census, "detect": cmd_detect,
            "detect-s4": cmd_detect_s4, "conjecture": cmd_conjecture}


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="sl2cv", description="Exact SL_2 character-variety checks.")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--out", help="write JSON here instead of stdout")
    sub = ap.add_subparsers(dest="command", required=True)

    v = sub.add_parser("verify", parents=[common], help="run per-lemma checks or the full theorem table")
    g = v.add_mutually_exclusive_group(required=True)
    g.add_argument("--lemma", help=f"one of {', '.join(sorted(suite.LEMMAS))}")
    g.add_argument("--all", action="store_true")
    v.add_argument("--p", type=int, action="append", help="characteristic (repeatable)")
    v.add_argument("--phi", help="gluing matrix k,l,m,n")

    c = sub.add_parser("census", parents=[common], help="enumerate Hom(Gamma, SL_2(F_q))")
    c.add_argument("--group", choices=("klein", "trefoil", "glued"), required=True)
    c.add_argument("--q", type=int, required=True)
    c.add_argument("--phi")

    d = sub.add_parser("detect", parents=[common], help="surface detection verdicts for a gluing matrix")
    d.add_argument("--phi", required=True)
    d.add_argument("--surface", choices=("S1", "S2", "S3", "S4", "S5"), required=True)
    d.add_argument("--p", type=int, required=True)

    s = sub.add_parser("detect-s4", parents=[common], help="S4(q,1) detection on the curve C(u,v)")
    for name in ("q", "u", "v"):
        s.add_argument(f"--{name}", type=int, required=True)
    s.add_argument("--p", type=int, default=101)
    s.add_argument("--kparity", type=int, choices=(0, 1), default=0)
    s.add_argument("--eps", type=int, choices=(1, -1), default=1)

    j = sub.add_parser("conjecture", parents=[common], help="exploratory valuation table for S4(q,r)")
    j.add_argument("action", choices=("probe",))
    j.add_argument("--q", type=int, required=True)
    j.add_argument("--r", type=int, required=True)
    j.add_argument("--p", type=int, default=101)
    j.add_argument("--kparity", type=int, choices=(0, 1), default=0)
    j.add_argument("--eps", type=int, choices=(1, -1), default=1)
    return ap


def _config(args) -> dict:
    return {k: v for k, v in sorted(vars(args).items()) if k not in ("command", "out")}


def run(argv: Optional[Sequence[str]] = None) -> tuple[dict, int, Optional[str]]:
    """Parse and execute; returns the JSON payload, the exit status and the --out path."""
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        if exc.code == 0:
            raise
        return {"command": None, "error": "usage"}, EXIT_USAGE, None
    payload = {"command": args.command, "config": _config(args), "results": [],
               "version": _version()}
    try:
        results, status = COMMANDS[args.command](args)
    except BoundExceeded as exc:
        results, status = [{"error": "bound exceeded", "detail": str(exc)}], EXIT_BOUND
    except (UsageError, FamilyError, FieldError, DetectionError, ValueError) as exc:
        results, status = [{"error": "usage", "detail": str(exc)}], EXIT_USAGE
    payload["results"] = encode(results)
    payload["ok"] = status == EXIT_OK
    return payload, status, args.out


def main(argv: Optional[Sequence[str]] = None) -> int:
    payload, status, out = run(argv)
    text = json.dumps(payload, indent=2, sort_keys=True, ensure_ascii=False) + "\n"
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return status


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
