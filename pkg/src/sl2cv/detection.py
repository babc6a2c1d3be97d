"""Ideal points, valuations of trace functions and surface-detection verdicts."""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from math import gcd
from typing import Optional, Sequence

from .families import FamilySpec, char_tuple, instantiate_symbolic
from .funcfield import INF, LaurentPoly, Place, RatFunc, pole_places, to_trace_basis, valuation_at
from .groups import (A, B, G, H, Word, alpha_word, commutator, gen, longitude_word)
from .mat2 import Mat2, word_eval

C1, C2, C3 = "C1", "C2", "C3"

DETECTED = "detected"
NOT_DETECTED = "not-detected"
WITNESS_NEGATIVE = "witness-negative"

SLOPE_BOUND = 12

# boundary slopes in the (first, second) peripheral basis of each side
KLEIN_PERIPHERAL = (Word([(0, 2)]), gen(1))            # (a^2, b)
TREFOIL_PERIPHERAL = (gen(0), longitude_word(0, 1))    # (g, g^-4 h g^2 h)
SLOPE_A, SLOPE_B = (1, 0), (0, 1)      # annuli in the Klein side: a^2 and b
SLOPE_S, SLOPE_R = (0, 1), (6, 1)      # trefoil side: longitude and g^2 h g^2 h
CASE_SLOPES = {
    "S2": (SLOPE_A, SLOPE_S),
    "S3": (SLOPE_B, SLOPE_S),
    "S4": (SLOPE_A, SLOPE_R),
    "S5": (SLOPE_B, SLOPE_R),
}


class DetectionError(ValueError):
    pass


def default_witnesses() -> list[Word]:
    """[g h^-1, a] followed by (a^2)^i b^j with |i|, |j| <= 3."""
    out = [commutator(gen(G) * gen(H, -1), gen(A))]
    for i in range(-3, 4):
        for j in range(-3, 4):
            if i or j:
                out.append(Word([(A, 2 * i), (B, j)]))
    return out


# -- restrictions and curve types -----------------------------------------------

def restriction(rep: Sequence[Mat2], side: str) -> tuple:
    if len(rep) != 4:
        raise DetectionError("restriction needs a 4-generator assignment")
    side = side.upper()
    if side == "K":
        return char_tuple(rep[:2])
    if side == "M":
        return char_tuple(rep[2:])
    raise DetectionError(f"unknown side {side!r}")


def _constant(tup) -> bool:
    return all(x.is_constant() for x in tup)


def curve_type(rep: Sequence[Mat2]) -> str:
    if _constant(char_tuple(rep)):
        raise DetectionError("the character tuple is constant: not a curve")
    k_const = _constant(restriction(rep, "K"))
    m_const = _constant(restriction(rep, "M"))
    if k_const and m_const:
        return C3
    if k_const or m_const:
        return C2
    return C1


def ideal_points(rep: Sequence[Mat2]) -> list[Place]:
    tup = char_tuple(rep)
    if _constant(tup):
        raise DetectionError("the character tuple is constant: not a curve")
    seen = {}
    for x in tup:
        if x:
            for pl in pole_places(x):
                seen[pl.poly] = pl
    return sorted(seen.values(), key=Place.sort_key)


def valuation_of_word(rep: Sequence[Mat2], w: Word, place: Place):
    return valuation_at(word_eval(rep, w).trace(), place)


def trace_in_s(f: RatFunc) -> LaurentPoly:
    """A symmetric Laurent trace function rewritten in s = t + 1/t."""
    return to_trace_basis(f.to_laurent())


def valuation_at_infinity_in_s(f: RatFunc) -> "int | float":
    """Order at s = infinity of a trace function that is a polynomial in s."""
    poly = trace_in_s(f)
    if not poly:
        return INF
    return -poly.max_degree


# -- boundary slopes ---------------------------------------------------------------

@dataclass(frozen=True)
class SlopeResult:
    kind: str                      # "slope-detected" | "closed-case" | "not-found"
    slope: Optional[tuple[int, int]] = None
    valuation: "int | float | None" = None
    negative_example: Optional[tuple[tuple[int, int], int]] = None


def primitive_pairs(bound: int) -> list[tuple[int, int]]:
    """Sign-normalized primitive (i, j), ordered by max(|i|,|j|) then lexicographically."""
    out = []
    for i in range(0, bound + 1):
        for j in range(-bound, bound + 1):
            if (i, j) == (0, 0) or gcd(i, j) != 1 or (i == 0 and j < 0):
                continue
            out.append((i, j))
    return sorted(out, key=lambda ij: (max(abs(ij[0]), abs(ij[1])), abs(ij[0]) + abs(ij[1]), ij))


def boundary_dichotomy(rep: Sequence[Mat2], peripheral: tuple[Word, Word], place: Place,
                       bound: int = SLOPE_BOUND) -> SlopeResult:
    """The primitive peripheral element with non-negative valuation, if some other is negative."""
    P1 = word_eval(rep, peripheral[0])
    P2 = word_eval(rep, peripheral[1])
    pow1 = [P1.identity()]
    for _ in range(bound):
        pow1.append(pow1[-1] * P1)
    P2i = P2.inv()
    pos2, neg2 = [P2.identity()], [P2.identity()]
    for _ in range(bound):
        pos2.append(pos2[-1] * P2)
        neg2.append(neg2[-1] * P2i)
    nonneg, negative = [], None
    for i, j in primitive_pairs(bound):
        M = pow1[i] * (pos2[j] if j >= 0 else neg2[-j])
        v = valuation_at(M.trace(), place)
        if v < 0:
            if negative is None:
                negative = ((i, j), v)
        else:
            nonneg.append(((i, j), v))
    if negative is None:
        return SlopeResult("closed-case")
    if not nonneg:
        return SlopeResult("not-found", negative_example=negative)
    (slope, v) = nonneg[0]
    return SlopeResult("slope-detected", slope, v, negative)


# -- verdicts ------------------------------------------------------------------------

@dataclass(frozen=True)
class DetectionVerdict:
    case: str
    place: Optional[Place]
    verdict: str
    family: Optional[dict] = None
    witness: Optional[str] = None
    valuation: "int | float | None" = None
    detail: dict = dc_field(default_factory=dict)

    def to_json(self) -> dict:
        out = {"case": self.case, "ideal_point": repr(self.place) if self.place else None,
               "verdict": self.verdict}
        if self.family is not None:
            out["family"] = self.family
        if self.witness is not None:
            out["witness"] = self.witness
        if self.valuation is not None:
            out["valuation"] = self.valuation
        if self.detail:
            out["detail"] = self.detail
        return out


def _min_negative(rep, place) -> Optional[tuple[int, int]]:
    best = None
    for i, x in enumerate(char_tuple(rep)):
        v = valuation_at(x, place)
        if v < 0 and (best is None or v < best[1]):
            best = (i, v)
    return best


def detect_surface(rep: Sequence[Mat2], case: str, place: Place,
                   witnesses: Optional[Sequence[Word]] = None,
                   family: Optional[dict] = None) -> DetectionVerdict:
    """Verdict for one curve, one ideal point and one surface case."""
    ctype = curve_type(rep)
    if case == "S1":
        neg = _min_negative(rep, place)
        if ctype == C3 and neg is not None:
            return DetectionVerdict(case, place, DETECTED, family, valuation=neg[1],
                                    detail={"curve_type": ctype, "coordinate": neg[0]})
        return DetectionVerdict(case, place, NOT_DETECTED, family, detail={"curve_type": ctype})
    if case not in CASE_SLOPES:
        raise DetectionError(f"unknown surface case {case!r}")
    if ctype == C1:
        want_k, want_m = CASE_SLOPES[case]
        k_res = boundary_dichotomy(rep[:2], KLEIN_PERIPHERAL, place)
        m_res = boundary_dichotomy(rep[2:], TREFOIL_PERIPHERAL, place)
        detail = {"curve_type": ctype, "slope_K": k_res.slope, "slope_M": m_res.slope,
                  "slope_K_kind": k_res.kind, "slope_M_kind": m_res.kind}
        ok = (k_res.kind == m_res.kind == "slope-detected"
              and k_res.slope == want_k and m_res.slope == want_m)
        return DetectionVerdict(case, place, DETECTED if ok else NOT_DETECTED, family, detail=detail)
    if ctype == C3:
        for w in witnesses if witnesses is not None else default_witnesses():
            v = valuation_of_word(rep, w, place)
            if v < 0:
                return DetectionVerdict(case, place, WITNESS_NEGATIVE, family,
                                        witness=w.format("abgh"), valuation=v,
                                        detail={"curve_type": ctype})
        return DetectionVerdict(case, place, NOT_DETECTED, family,
                                detail={"curve_type": ctype, "note": "no negative witness found"})
    return DetectionVerdict(case, place, NOT_DETECTED, family, detail={"curve_type": ctype})


# -- the S4(q, 1) family -------------------------------------------------------------

def alpha_matrix(Am: Mat2, Bm: Mat2, q: int) -> Mat2:
    """Image of alpha_q computed by the recurrence on matrices."""
    if q < 0:
        raise ValueError("q must be non-negative")
    prev, cur = Bm.inv() * Am, Am
    if q == 0:
        return prev
    for _ in range(q - 1):
        prev, cur = cur, cur.inv() * prev * cur
    return cur


def s4_trace(rep: Sequence[Mat2], q: int) -> RatFunc:
    """I_{g h g alpha_q}."""
    Am, Bm, Gm, Hm = rep
    return (Gm * Hm * Gm * alpha_matrix(Am, Bm, q)).trace()


def s4_word(q: int) -> Word:
    return Word([(G, 1), (H, 1), (G, 1)]) * alpha_word(q)


def detect_s4(kparity: int, eps: int, u: int, v: int, q: int, p: int = 101) -> DetectionVerdict:
    if v == 0:
        raise DetectionError("v must be nonzero")
    if q < 0:
        raise DetectionError("q must be non-negative")
    spec = FamilySpec("C_uv", p, eps=eps, kparity=kparity, u=u, v=v)
    rep = instantiate_symbolic(spec)
    tr = s4_trace(rep, q)
    F = spec.field
    vals = {"Finite(t)": valuation_at(tr, Place.at_zero(F)), "Infinity": valuation_at(tr, Place.infinity())}
    worst = min(vals.values())
    verdict = DETECTED if worst >= 0 else NOT_DETECTED
    return DetectionVerdict(f"S4({q},1)", None, verdict, spec.describe(),
                            witness=s4_word(q).format("abgh"), valuation=worst,
                            detail={"trace": tr.to_string(), "valuations": vals})


def probe_words(q: int, r: int) -> list[tuple[str, Word]]:
    out = [(f"ghg*alpha_{j}", s4_word(j)) for j in range(0, q + r + 1)]
    out += [("a^2", Word([(A, 2)])), ("b", gen(B)), ("g", gen(G)),
            ("longitude", longitude_word(G, H)), ("g^2hg^2h", Word([(G, 2), (H, 1), (G, 2), (H, 1)]))]
    return out


def conjecture_probe(kparity: int, eps: int, q: int, r: int, p: int = 101) -> dict:
    """Valuation table on C(q-r, r); a verdict only for r = 1."""
    if r < 1:
        raise DetectionError("r must be positive")
    if gcd(q, r) != 1:
        raise DetectionError(f"q = {q} and r = {r} are not coprime")
    spec = FamilySpec("C_uv", p, eps=eps, kparity=kparity, u=q - r, v=r)
    rep = instantiate_symbolic(spec)
    F = spec.field
    places = (("Finite(t)", Place.at_zero(F)), ("Infinity", Place.infinity()))
    table = []
    for name, w in probe_words(q, r):
        if name.startswith("ghg*alpha_"):
            tr = s4_trace(rep, int(name.split("_")[1]))
        else:
            tr = word_eval(rep, w).trace()
        table.append({"word": name, "expanded": w.format("abgh") if w.length <= 40 else None,
                      "valuations": {pn: valuation_at(tr, pl) for pn, pl in places}})
    report = {"family": spec.describe(), "q": q, "r": r, "table": table}
    if r == 1:
        report["verdict"] = detect_s4(kparity, eps, q - 1, 1, q, p).verdict
    else:
        report["verdict"] = None
    return report
