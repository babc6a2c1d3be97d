"""Brute-force enumeration of Hom(Gamma, SL_2(F_q)) and character censuses.

Matrices are handled as indices into the enumerated group with a
multiplication table, so a census never touches the generic Mat2 layer.
"""

from __future__ import annotations

import os
import random
from collections import Counter
from dataclasses import dataclass, field as dc_field
from functools import lru_cache
from typing import Optional, Sequence

from .families import GLUED_PRODUCTS, component_membership
from .field_arith import FieldDescriptor, FqElem, engine
from .groups import GluingMatrix, Presentation, presentation_of
from .mat2 import Mat2

SL2_BOUND = 16
DEFAULT_WORK_BOUND = 10**8
ORBIT_BOUND = 4


class BoundExceeded(RuntimeError):
    pass


def work_bound() -> int:
    raw = os.environ.get("SL2CV_WORK_BOUND")
    return int(raw) if raw else DEFAULT_WORK_BOUND


class SL2Table:
    """SL_2(F_q) as a list of code 4-tuples plus index arithmetic."""

    def __init__(self, field: FieldDescriptor):
        if field.order > SL2_BOUND:
            raise BoundExceeded(f"|F| = {field.order} exceeds the enumeration bound {SL2_BOUND}")
        self.field = field
        E = engine(field)
        q = field.order
        self.E = E
        els = []
        for a in range(q):
            for b in range(q):
                for c in range(q):
                    for d in range(q):
                        if E.sub(E.mul(a, d), E.mul(b, c)) == 1:
                            els.append((a, b, c, d))
        self.elements = els
        self.index = {m: i for i, m in enumerate(els)}
        self.identity = self.index[(1, 0, 0, 1)]
        self.inverse = [self.index[(d, E.neg(b), E.neg(c), a)] for a, b, c, d in els]
        self.trace = [E.add(a, d) for a, _, _, d in els]
        self._table: Optional[list[list[int]]] = None

    def __len__(self):
        return len(self.elements)

    def _mul_codes(self, x, y) -> tuple:
        E = self.E
        a, b, c, d = x
        e, f, g, h = y
        return (E.add(E.mul(a, e), E.mul(b, g)), E.add(E.mul(a, f), E.mul(b, h)),
                E.add(E.mul(c, e), E.mul(d, g)), E.add(E.mul(c, f), E.mul(d, h)))

    @property
    def table(self) -> list[list[int]]:
        if self._table is None:
            els, idx = self.elements, self.index
            self._table = [[idx[self._mul_codes(x, y)] for y in els] for x in els]
        return self._table

    def mul(self, i: int, j: int) -> int:
        return self.table[i][j]

    def pow(self, i: int, n: int) -> int:
        if n < 0:
            i, n = self.inverse[i], -n
        T = self.table
        r = self.identity
        while n:
            if n & 1:
                r = T[r][i]
            n >>= 1
            if n:
                i = T[i][i]
        return r

    def word(self, assignment: Sequence[int], w) -> int:
        T = self.table
        r = self.identity
        for g, e in w:
            r = T[r][self.pow(assignment[g], e)]
        return r

    def to_mat(self, i: int) -> Mat2:
        F = self.field
        return Mat2(*(FqElem(F, c) for c in self.elements[i]))


@lru_cache(maxsize=None)
def sl2_table(field: FieldDescriptor) -> SL2Table:
    return SL2Table(field)


def enumerate_sl2(field: FieldDescriptor) -> list[Mat2]:
    """All determinant-one matrices, lexicographic in the entry codes."""
    T = sl2_table(field)
    return [T.to_mat(i) for i in range(len(T))]


# -- homomorphism enumeration ---------------------------------------------------

def _kind(pres: Presentation) -> str:
    if pres.name in ("klein", "trefoil"):
        return pres.name
    if pres.name.startswith("glued"):
        return "glued"
    raise ValueError(f"no enumeration strategy for presentation {pres.name!r}")


def _phi_of(pres: Presentation) -> GluingMatrix:
    return GluingMatrix.parse(pres.name[len("glued("):-1].replace(";", ","))


def _check_work(T: SL2Table, ngens: int) -> None:
    need = len(T) ** ngens
    if need > work_bound():
        raise BoundExceeded(f"enumeration needs {need} relator evaluations, bound is {work_bound()}")


def enumerate_hom_indices(pres: Presentation, field: FieldDescriptor) -> list[tuple[int, ...]]:
    """Homomorphisms as tuples of SL2Table indices, in lexicographic order."""
    kind = _kind(pres)
    T = sl2_table(field)
    n = len(T)
    _check_work(T, 3 if kind == "glued" else 2)
    M, inv = T.table, T.inverse
    if kind == "klein":
        # a b a^-1 b = 1
        return [(a, b) for a in range(n) for b in range(n)
                if M[M[M[a][b]][inv[a]]][b] == T.identity]
    if kind == "trefoil":
        return [(g, h) for g in range(n) for h in range(n)
                if M[M[g][h]][g] == M[M[h][g]][h]]
    phi = _phi_of(pres)
    out = []
    for a in range(n):
        for b in range(n):
            if M[M[M[a][b]][inv[a]]][b] != T.identity:
                continue
            # g is forced by g = (a^2)^k b^l
            g = M[T.pow(a, 2 * phi.k)][T.pow(b, phi.l)]
            rhs = M[T.pow(a, 2 * phi.m)][T.pow(b, phi.n)]
            gm4, g2 = T.pow(g, -4), M[g][g]
            for h in range(n):
                if M[M[g][h]][g] != M[M[h][g]][h]:
                    continue
                if M[M[M[gm4][h]][g2]][h] == rhs:
                    out.append((a, b, g, h))
    return out


def enumerate_homs(pres: Presentation, field: FieldDescriptor) -> list[tuple[Mat2, ...]]:
    T = sl2_table(field)
    return [tuple(T.to_mat(i) for i in hom) for hom in enumerate_hom_indices(pres, field)]


def _tuple_codes(T: SL2Table, hom: Sequence[int]) -> tuple[int, ...]:
    tr, M = T.trace, T.table
    if len(hom) == 2:
        return (tr[hom[0]], tr[hom[1]], tr[M[hom[0]][hom[1]]])
    out = []
    for idx in GLUED_PRODUCTS:
        r = hom[idx[0]]
        for i in idx[1:]:
            r = M[r][hom[i]]
        out.append(tr[r])
    return tuple(out)


def count_orbits(T: SL2Table, homs: Sequence[tuple[int, ...]]) -> int:
    """Conjugation orbits of SL_2(F_q) on a set of homomorphisms."""
    M, inv = T.table, T.inverse
    seen = set()
    orbits = 0
    for hom in homs:
        if hom in seen:
            continue
        orbits += 1
        for P in range(len(T)):
            Pi = inv[P]
            seen.add(tuple(M[M[P][x]][Pi] for x in hom))
    return orbits


# -- census ----------------------------------------------------------------------

@dataclass
class CensusReport:
    field: str
    presentation: str
    hom_count: int
    distinct_tuples: int
    multiplicities: dict = dc_field(default_factory=dict)   # tuple of codes -> count
    uncovered: list = dc_field(default_factory=list)
    orbit_count: Optional[int] = None
    coverage_checked: bool = True

    def to_json(self) -> dict:
        out = {
            "field": self.field,
            "presentation": self.presentation,
            "hom_count": self.hom_count,
            "distinct_tuples": self.distinct_tuples,
            "multiplicities": [{"tuple": list(k), "count": v}
                               for k, v in sorted(self.multiplicities.items())],
            "uncovered": [list(u) for u in self.uncovered],
            "coverage_checked": self.coverage_checked,
        }
        if self.orbit_count is not None:
            out["orbit_count"] = self.orbit_count
        return out


def census(pres: Presentation, field: FieldDescriptor) -> CensusReport:
    T = sl2_table(field)
    homs = enumerate_hom_indices(pres, field)
    mult = Counter(_tuple_codes(T, h) for h in homs)
    kind = _kind(pres)
    uncovered = []
    if kind in ("klein", "trefoil"):
        for tup in sorted(mult):
            els = tuple(FqElem(field, c) for c in tup)
            if not component_membership(kind, field.p, els):
                uncovered.append(tup)
    orbits = count_orbits(T, homs) if field.order <= ORBIT_BOUND else None
    return CensusReport(field.tag, pres.name, len(homs), len(mult), dict(mult), uncovered,
                        orbits, coverage_checked=kind != "glued")


def conjugation_consistency(pres: Presentation, field: FieldDescriptor,
                            samples: Optional[int] = 100, seed: int = 0) -> bool:
    """char tuples agree on rho and P rho P^-1; samples=None checks every pair."""
    T = sl2_table(field)
    homs = enumerate_hom_indices(pres, field)
    if not homs:
        return True
    M, inv = T.table, T.inverse
    if samples is None:
        pairs = [(h, P) for h in homs for P in range(len(T))]
    else:
        rng = random.Random(seed)
        pairs = [(rng.choice(homs), rng.randrange(len(T))) for _ in range(samples)]
    for hom, P in pairs:
        conj = tuple(M[M[P][x]][inv[P]] for x in hom)
        if _tuple_codes(T, conj) != _tuple_codes(T, hom):
            return False
    return True


def glued_presentation(phi: GluingMatrix) -> Presentation:
    return presentation_of(phi)
