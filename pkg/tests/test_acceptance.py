"""One test per acceptance criterion, each timed against its budget.

Every arithmetic check is exact; there is no tolerance anywhere.  A line per
criterion is printed in the terminal summary (see conftest.py).
"""

import time

from sl2cv import suite
from sl2cv.cli import run
from sl2cv.families import FamilySpec, char_tuple, instantiate_symbolic
from sl2cv.field_arith import fq_make
from sl2cv.funcfield import RatFunc

PRIMES = (2, 3, 5, 7, 101)
RESULTS = {}


def _record(n, title, budget, fn):
    start = time.perf_counter()
    ok, detail = False, ""
    try:
        ok, detail = fn()
    finally:
        elapsed = time.perf_counter() - start
        in_time = elapsed < budget
        RESULTS[n] = (title, ok and in_time, elapsed, budget, detail)
    assert ok, detail
    assert in_time, f"{elapsed:.2f}s exceeds the {budget}s budget"


def _all_ok(checks):
    bad = [c.to_json() for c in checks if not c.ok]
    return not bad, f"{len(checks)} checks" if not bad else f"failures: {bad[:3]}"


def test_criterion_1_irreducibility_exhaustive():
    def body():
        checks = suite.check_irreducibility_criterion(((2, 1), (3, 1), (2, 2)))
        pairs = [c.data["pairs"] for c in checks]
        ok, detail = _all_ok(checks)
        return ok and pairs == [36, 576, 3600], f"pairs {pairs}; {detail}"
    _record(1, "tr[A,B] = 2 iff common invariant line over F2, F3, F4", 5, body)


def test_criterion_2_klein():
    def body():
        checks = []
        for p in PRIMES:
            checks += suite.check_klein(p)
            t = RatFunc.t(fq_make(p))
            s = t + 1 / t
            for e in (1, -1):
                tup = char_tuple(instantiate_symbolic(FamilySpec("KleinRedCentral", p, eps=e)))
                if tup != (s, 2 * e + 0 * t, s * e):
                    return False, f"KleinRedCentral p={p} eps={e}: {tup}"
        return _all_ok(checks)
    _record(2, "Klein bottle families, commutator trace and tuples", 5, body)


def test_criterion_3_trefoil():
    def body():
        checks = []
        for p in PRIMES:
            checks += suite.check_trefoil(p) + [suite.check_trace_basis(p)]
        return _all_ok(checks)
    _record(3, "trefoil relation, -E fibre, trace basis, pole of order 6", 5, body)


def test_criterion_4_homology():
    def body():
        c = suite.check_homology(10)
        return c.ok and c.data["matrices"] > 1000, f"{c.data['matrices']} matrices"
    _record(4, "closed-form H1 equals Smith normal form, entries <= 10", 10, body)


def test_criterion_5_curves():
    def body():
        checks = []
        for p in PRIMES:
            checks += suite.check_curves(p)
        tags = {c.name for c in checks}
        want = {"curve-C_T", "curve-C_T1", "curve-C_T2", "curve-C_SA", "curve-C_SB", "curve-C_RB"}
        ok, detail = _all_ok(checks)
        return ok and tags == want, detail
    _record(5, "curve types and restriction tuples", 10, body)


def test_criterion_6_witness():
    def body():
        c = suite.check_witness()
        return c.ok, f"trace {c.data['trace']}, valuation {c.data['valuation']}"
    _record(6, "C_T1 witness [gh^-1, a]: trace t^2, v = -2", 1, body)


def test_criterion_7_s4():
    def body():
        return _all_ok([suite.check_s4(p, 8) for p in PRIMES])
    _record(7, "S4(q,1) detected iff u = q - 1 for q <= 8", 30, body)


def test_criterion_8_census():
    def body():
        checks = suite.check_census()
        fields = sorted({c.data["field"] for c in checks})
        ok, detail = _all_ok(checks)
        return ok and fields == ["F2", "F3", "F4", "F5"], detail
    _record(8, "Klein and trefoil censuses over F2..F5 fully covered", 60, body)


def test_criterion_9_verify_all():
    def body():
        out, status, _ = run(["verify", "--all"])
        rows = [r for r in out["results"] if r["check"].startswith("theorem-")]
        summary = out["results"][-1]
        never = [r for r in rows if r["check"] == "theorem-torus-never"]
        char2 = [r for r in rows if r["check"] == "theorem-torus-char2"]
        ok = (status == 0 and summary["check"] == "summary" and summary["failed"] == 0
              and "censuses" in summary["certification"]
              and len(never) == 15 and not any(r["detected"] for r in never)
              and all(r["detected"] == (r["p"] == 2) for r in char2))
        return ok, f"{len(rows)} theorem rows, {summary['checks']} checks"
    _record(9, "verify --all reproduces the theorem table", 180, body)
