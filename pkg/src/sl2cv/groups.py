"""Presentations, words, gluing matrices and first homology of N_Phi."""

from __future__ import annotations

import re
from dataclasses import dataclass
from math import gcd
from typing import Iterable, Sequence

KLEIN_NAMES = ("a", "b")
TREFOIL_NAMES = ("g", "h")
GLUED_NAMES = ("a", "b", "g", "h")
A, B, G, H = range(4)


class Word(tuple):
    """Freely reduced word: a tuple of (generator index, nonzero exponent) pairs."""

    def __new__(cls, pairs: Iterable[tuple[int, int]] = ()):
        out: list[list[int]] = []
        for gen, exp in pairs:
            if exp == 0:
                continue
            if out and out[-1][0] == gen:
                out[-1][1] += exp
                if out[-1][1] == 0:
                    out.pop()
            else:
                out.append([gen, exp])
        return super().__new__(cls, (tuple(x) for x in out))

    @classmethod
    def parse(cls, text: str, names: Sequence[str]) -> "Word":
        """Parse e.g. "g^-4 h g^2 h" (whitespace or '*' separated)."""
        pairs = []
        for tok in re.split(r"[\s*]+", text.strip()):
            if not tok or tok == "1":
                continue
            m = re.fullmatch(r"([A-Za-z])(?:\^\(?(-?\d+)\)?)?", tok)
            if not m or m.group(1) not in names:
                raise ValueError(f"cannot parse letter {tok!r}")
            pairs.append((names.index(m.group(1)), int(m.group(2) or 1)))
        return cls(pairs)

    def __mul__(self, other: "Word") -> "Word":
        return Word(tuple(self) + tuple(other))

    def inverse(self) -> "Word":
        return Word((g, -e) for g, e in reversed(self))

    def __pow__(self, n: int) -> "Word":
        base = self if n >= 0 else self.inverse()
        return Word(tuple(base) * abs(n))

    @property
    def length(self) -> int:
        return sum(abs(e) for _, e in self)

    def exponent_sums(self, ngens: int) -> list[int]:
        v = [0] * ngens
        for g, e in self:
            v[g] += e
        return v

    def format(self, names: Sequence[str]) -> str:
        if not self:
            return "1"
        return " ".join(names[g] if e == 1 else f"{names[g]}^{e}" for g, e in self)

    def __repr__(self):
        return f"Word({list(self)})"


def gen(i: int, e: int = 1) -> Word:
    return Word([(i, e)])


def commutator(x: Word, y: Word) -> Word:
    return x * y * x.inverse() * y.inverse()


@dataclass(frozen=True)
class GluingMatrix:
    k: int
    l: int
    m: int
    n: int

    def __post_init__(self):
        if self.k * self.n - self.l * self.m != 1:
            raise ValueError(f"gluing matrix {self.entries} has determinant "
                             f"{self.k * self.n - self.l * self.m}, expected 1")

    @classmethod
    def parse(cls, text: str) -> "GluingMatrix":
        parts = [int(x) for x in text.replace(" ", "").split(",")]
        if len(parts) != 4:
            raise ValueError("expected four comma-separated integers k,l,m,n")
        return cls(*parts)

    @property
    def entries(self) -> tuple[int, int, int, int]:
        return (self.k, self.l, self.m, self.n)

    def __str__(self):
        return "({},{};{},{})".format(*self.entries)


@dataclass(frozen=True)
class Presentation:
    name: str
    ngens: int
    relators: tuple[Word, ...]
    names: tuple[str, ...]

    def __post_init__(self):
        for r in self.relators:
            if any(g >= self.ngens or g < 0 for g, _ in r):
                raise ValueError(f"relator {r} uses an unknown generator")


def _trefoil_relator(g: int, h: int) -> Word:
    x, y = gen(g), gen(h)
    return (x * y * x) * (y * x * y).inverse()


def longitude_word(g: int = 0, h: int = 1) -> Word:
    """g^-4 h g^2 h."""
    return Word([(g, -4), (h, 1), (g, 2), (h, 1)])


def presentation_of(manifold: "str | GluingMatrix") -> Presentation:
    """Klein bottle group, trefoil group, or the glued group Gamma_Phi."""
    if isinstance(manifold, GluingMatrix):
        phi = manifold
        kb = Word([(A, 1), (B, 1), (A, -1), (B, 1)])
        g_eq = gen(G) * Word([(A, 2 * phi.k), (B, phi.l)]).inverse()
        lon_eq = longitude_word(G, H) * Word([(A, 2 * phi.m), (B, phi.n)]).inverse()
        return Presentation(f"glued{phi}", 4, (_trefoil_relator(G, H), kb, g_eq, lon_eq), GLUED_NAMES)
    name = str(manifold).lower()
    if name == "klein":
        return Presentation("klein", 2, (Word([(0, 1), (1, 1), (0, -1), (1, 1)]),), KLEIN_NAMES)
    if name == "trefoil":
        return Presentation("trefoil", 2, (_trefoil_relator(0, 1),), TREFOIL_NAMES)
    raise ValueError(f"unknown manifold {manifold!r}")


def peripheral_words(manifold: str) -> tuple[Word, Word]:
    name = manifold.lower()
    if name == "klein":
        return Word([(0, 2)]), gen(1)
    if name == "trefoil":
        return gen(0), longitude_word(0, 1)
    raise ValueError(f"unknown manifold {manifold!r}")


def alpha_word(q: int, a: int = A, b: int = B) -> Word:
    """alpha_q from alpha_k = alpha_{k-1}^-1 alpha_{k-2} alpha_{k-1}, alpha_0 = b^-1 a, alpha_1 = a."""
    if q < 0:
        raise ValueError("q must be non-negative")
    prev, cur = Word([(b, -1), (a, 1)]), gen(a)
    if q == 0:
        return prev
    for _ in range(q - 1):
        prev, cur = cur, cur.inverse() * prev * cur
    return cur


# -- first homology -------------------------------------------------------------

@dataclass(frozen=True)
class AbelianGroup:
    """Direct sum of cyclic groups by invariant factors; 0 stands for Z."""

    factors: tuple[int, ...]

    @classmethod
    def from_orders(cls, orders: Iterable[int]) -> "AbelianGroup":
        fs = [abs(x) for x in orders if abs(x) != 1]
        finite = sorted(x for x in fs if x)
        return cls(tuple(finite + [0] * fs.count(0)))

    @property
    def is_infinite(self) -> bool:
        return 0 in self.factors

    def __str__(self):
        if not self.factors:
            return "0"
        return " + ".join("Z" if f == 0 else f"Z_{f}" for f in self.factors)


def h1_closed_form(phi: GluingMatrix) -> AbelianGroup:
    m = abs(phi.m)
    if phi.n % 2 == 0:
        return AbelianGroup.from_orders([2, 2 * m])
    return AbelianGroup.from_orders([4 * m])


def smith_invariants(rows: Sequence[Sequence[int]]) -> list[int]:
    """Diagonal of the Smith normal form of an integer matrix (non-negative)."""
    M = [list(r) for r in rows]
    nr, nc = len(M), len(M[0]) if M else 0
    diag = []
    t = 0
    while t < min(nr, nc):
        nz = [(abs(M[i][j]), i, j) for i in range(t, nr) for j in range(t, nc) if M[i][j]]
        if not nz:
            break
        _, pi, pj = min(nz)
        M[t], M[pi] = M[pi], M[t]
        for r in M:
            r[t], r[pj] = r[pj], r[t]
        while True:
            piv = M[t][t]
            dirty = False
            for i in range(t + 1, nr):
                q = M[i][t] // piv
                if q:
                    M[i] = [x - q * y for x, y in zip(M[i], M[t])]
                if M[i][t]:
                    dirty = True
            for j in range(t + 1, nc):
                q = M[t][j] // piv
                if q:
                    for r in M:
                        r[j] -= q * r[t]
                if M[t][j]:
                    dirty = True
            if not dirty:
                bad = [(i, j) for i in range(t + 1, nr) for j in range(t + 1, nc) if M[i][j] % piv]
                if not bad:
                    break
                i, _ = bad[0]
                M[t] = [x + y for x, y in zip(M[t], M[i])]
                continue
            # move the smallest remaining entry of row/column t to the pivot
            cands = [(abs(M[i][t]), i, t) for i in range(t, nr) if M[i][t]]
            cands += [(abs(M[t][j]), t, j) for j in range(t, nc) if M[t][j]]
            _, pi, pj = min(cands)
            M[t], M[pi] = M[pi], M[t]
            for r in M:
                r[t], r[pj] = r[pj], r[t]
        diag.append(abs(M[t][t]))
        t += 1
    return diag + [0] * (min(nr, nc) - len(diag))


def abelianized_matrix(pres: Presentation) -> list[list[int]]:
    return [r.exponent_sums(pres.ngens) for r in pres.relators]


def h1_smith(phi: GluingMatrix) -> AbelianGroup:
    pres = presentation_of(phi)
    d = smith_invariants(abelianized_matrix(pres))
    # generators beyond the relator count are free
    d += [0] * (pres.ngens - len(d))
    return AbelianGroup.from_orders(d)


# -- surface cases -----------------------------------------------------------------

@dataclass(frozen=True)
class SurfaceCases:
    cases: frozenset
    kind: str

    def __contains__(self, case: str) -> bool:
        return case in self.cases

    def sorted(self) -> list[str]:
        return sorted(self.cases)


GRAPH = "graph"
SEIFERT_S2 = "Seifert-S2(2,2,2,3)"
SEIFERT_RP2 = "Seifert-RP2(2,3)"


def is_s2_shape(phi: GluingMatrix) -> bool:
    return any(phi.l == e and phi.m == -e and phi.n == 0 for e in (1, -1))


def is_s3_shape(phi: GluingMatrix) -> bool:
    return any(phi.k == e and phi.m == 0 and phi.n == e for e in (1, -1))


def is_s4_shape(phi: GluingMatrix) -> bool:
    return any(phi.l == e and phi.m == -e - 6 * phi.k and phi.n == -6 * e for e in (1, -1))


def is_s5_shape(phi: GluingMatrix) -> bool:
    return any(phi.k == e and phi.m == -6 * e and phi.n == e - 6 * phi.l for e in (1, -1))


def shape_sign(phi: GluingMatrix, case: str) -> int:
    """The sign choice realising the given (S2)-(S5) shape."""
    for e in (1, -1):
        if case in ("S2", "S4") and phi.l == e:
            return e
        if case in ("S3", "S5") and phi.k == e:
            return e
    raise ValueError(f"{phi} is not of shape {case}")


def classify_surface_cases(phi: GluingMatrix) -> SurfaceCases:
    cases = {"S1"}
    if is_s2_shape(phi):
        cases.add("S2")
    if is_s3_shape(phi):
        cases.add("S3")
    if is_s4_shape(phi):
        cases.add("S4")
    if is_s5_shape(phi):
        cases.add("S5")
    kind = SEIFERT_S2 if "S4" in cases else SEIFERT_RP2 if "S5" in cases else GRAPH
    return SurfaceCases(frozenset(cases), kind)


def sl2z_matrices(bound: int) -> list[GluingMatrix]:
    """All integer matrices with entries in [-bound, bound] and determinant 1."""
    out = []
    r = range(-bound, bound + 1)
    for k in r:
        for n in r:
            kn = k * n
            for l in r:
                for m in r:
                    if kn - l * m == 1:
                        out.append(GluingMatrix(k, l, m, n))
    return out


def coprime(a: int, b: int) -> bool:
    return gcd(a, b) == 1
