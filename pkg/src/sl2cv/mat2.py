"""2x2 matrices over a finite field or F_q(t), and reducibility tests."""

from __future__ import annotations

from typing import Mapping, Sequence, Union

from .field_arith import FieldDescriptor, FqElem, extension, fq_embed, fq_roots

Assignment = Union[Sequence["Mat2"], Mapping[int, "Mat2"]]


class Mat2:
    """Immutable 2x2 matrix ((a11, a12), (a21, a22))."""

    __slots__ = ("a11", "a12", "a21", "a22")

    def __init__(self, a11, a12, a21, a22):
        object.__setattr__(self, "a11", a11)
        object.__setattr__(self, "a12", a12)
        object.__setattr__(self, "a21", a21)
        object.__setattr__(self, "a22", a22)

    def __setattr__(self, name, value):
        raise AttributeError("Mat2 is immutable")

    @classmethod
    def of(cls, rows, coerce) -> "Mat2":
        """Build from ((a, b), (c, d)) applying `coerce` (a field or a lifting function)."""
        (a, b), (c, d) = rows
        return cls(coerce(a), coerce(b), coerce(c), coerce(d))

    @property
    def entries(self) -> tuple:
        return (self.a11, self.a12, self.a21, self.a22)

    def _one(self):
        return self.a11 * 0 + 1

    def identity(self) -> "Mat2":
        one = self._one()
        zero = one * 0
        return Mat2(one, zero, zero, one)

    def __mul__(self, other):
        if isinstance(other, Mat2):
            a, b, c, d = self.entries
            e, f, g, h = other.entries
            return Mat2(a * e + b * g, a * f + b * h, c * e + d * g, c * f + d * h)
        return Mat2(self.a11 * other, self.a12 * other, self.a21 * other, self.a22 * other)

    def __rmul__(self, other):
        return self * other

    def __neg__(self):
        return Mat2(-self.a11, -self.a12, -self.a21, -self.a22)

    def __add__(self, other: "Mat2") -> "Mat2":
        return Mat2(*(x + y for x, y in zip(self.entries, other.entries)))

    def __sub__(self, other: "Mat2") -> "Mat2":
        return Mat2(*(x - y for x, y in zip(self.entries, other.entries)))

    def det(self):
        return self.a11 * self.a22 - self.a12 * self.a21

    def trace(self):
        return self.a11 + self.a22

    def inv(self) -> "Mat2":
        d = self.det()
        if d == 0:
            raise ZeroDivisionError("singular matrix")
        adj = Mat2(self.a22, -self.a12, -self.a21, self.a11)
        return adj if d == 1 else adj * (1 / d)

    def __pow__(self, n: int) -> "Mat2":
        base = self if n >= 0 else self.inv()
        n = abs(n)
        result = self.identity()
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def conj(self, P: "Mat2") -> "Mat2":
        """P * self * P^-1."""
        return P * self * P.inv()

    def is_scalar(self) -> bool:
        return self.a12 == 0 and self.a21 == 0 and self.a11 == self.a22

    def is_identity(self) -> bool:
        return self.is_scalar() and self.a11 == 1

    def map(self, fn) -> "Mat2":
        return Mat2(*(fn(x) for x in self.entries))

    def __eq__(self, other):
        if not isinstance(other, Mat2):
            return NotImplemented
        return all(x == y for x, y in zip(self.entries, other.entries))

    def __hash__(self):
        return hash(self.entries)

    def __repr__(self):
        return f"(({self.a11!r}, {self.a12!r}), ({self.a21!r}, {self.a22!r}))"


def mat_mul(A: Mat2, B: Mat2) -> Mat2:
    return A * B


def mat_inv(A: Mat2) -> Mat2:
    return A.inv()


def mat_trace(A: Mat2):
    return A.trace()


def mat_det(A: Mat2):
    return A.det()


def _matrices(assignment: Assignment) -> list[Mat2]:
    if isinstance(assignment, Mapping):
        return [assignment[i] for i in sorted(assignment)]
    return list(assignment)


def word_eval(assignment: Assignment, w) -> Mat2:
    """Evaluate a word given as (generator index, exponent) pairs."""
    lookup = dict(assignment) if isinstance(assignment, Mapping) else dict(enumerate(assignment))
    if not lookup:
        raise ValueError("empty assignment")
    result = None
    for gen, exp in w:
        if gen not in lookup:
            raise KeyError(f"generator {gen} is not assigned")
        m = lookup[gen] ** exp
        result = m if result is None else result * m
    if result is None:
        return next(iter(lookup.values())).identity()
    return result


def commutator_trace(A: Mat2, B: Mat2):
    """tr(A B A^-1 B^-1)."""
    return (A * B * A.inv() * B.inv()).trace()


# -- invariant lines over finite fields ---------------------------------------

def _embed_mat(M: Mat2, F: FieldDescriptor) -> Mat2:
    return M.map(lambda x: fq_embed(x, F))


def _normalize_line(v0: FqElem, v1: FqElem) -> tuple[FqElem, FqElem]:
    if v0 != 0:
        return (v0.field.one, v1 / v0)
    return (v0.field.zero, v1.field.one)


def eigenlines(M: Mat2) -> list[tuple[FqElem, FqElem]]:
    """Eigenlines of a non-scalar matrix over F_q, or over F_{q^2} if needed."""
    F = M.a11.field
    tr, det = M.trace(), M.det()
    lams = fq_roots([det, -tr, 1], F)
    if not lams:
        F = extension(F, 2)
        M = _embed_mat(M, F)
        lams = fq_roots([fq_embed(det, F), -fq_embed(tr, F), 1], F)
    lines = []
    for lam in lams:
        r0 = (M.a11 - lam, M.a12)
        if r0[0] != 0 or r0[1] != 0:
            v = (M.a12, lam - M.a11)
        else:
            v = (M.a22 - lam, -M.a21)
        line = _normalize_line(*v)
        if line not in lines:
            lines.append(line)
    return lines


def _preserves(M: Mat2, v: tuple[FqElem, FqElem]) -> bool:
    F = v[0].field
    if M.a11.field != F:
        M = _embed_mat(M, F)
    w0 = M.a11 * v[0] + M.a12 * v[1]
    w1 = M.a21 * v[0] + M.a22 * v[1]
    return w0 * v[1] - w1 * v[0] == 0


def common_invariant_line(matrices: Sequence[Mat2]):
    """A line (x0 : x1) preserved by every matrix, or None.

    Scalar generators preserve every line; if all are scalar the canonical
    line (1 : 0) is returned.  Otherwise only the eigenlines of the first
    non-scalar matrix are candidates.
    """
    if not matrices:
        raise ValueError("need at least one matrix")
    for M in matrices:
        if not M.is_scalar():
            break
    else:
        F = matrices[0].a11.field
        return (F.one, F.zero)
    for line in eigenlines(M):
        if all(_preserves(N, line) for N in matrices):
            return line
    return None


def is_irreducible(assignment: Assignment) -> bool:
    return common_invariant_line(_matrices(assignment)) is None
