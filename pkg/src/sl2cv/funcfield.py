"""Laurent polynomials, rational functions F_q(t), places and valuations."""

from __future__ import annotations

import math
from dataclasses import dataclass, field as dc_field
from typing import Mapping, Optional

from ._poly import Poly, ring, trim
from .field_arith import FieldDescriptor, FieldError, FqElem, embed_code, engine

INF = math.inf


class PoleError(ArithmeticError):
    """Evaluation of a rational function at one of its poles."""


def _fmt_coeff(c: FqElem) -> str:
    s = repr(c)
    return f"({s})" if "+" in s else s


def format_terms(terms: Mapping[int, FqElem], var: str = "t") -> str:
    if not terms:
        return "0"
    parts = []
    for e in sorted(terms, reverse=True):
        c = terms[e]
        if e == 0:
            mono = ""
        elif e == 1:
            mono = var
        else:
            mono = f"{var}^{e}"
        if not mono:
            parts.append(_fmt_coeff(c))
        elif c == 1:
            parts.append(mono)
        else:
            parts.append(f"{_fmt_coeff(c)}*{mono}")
    return " + ".join(parts)


class LaurentPoly:
    """Finite sum of c_n t^n, n in Z, over a finite field."""

    __slots__ = ("field", "terms")

    def __init__(self, field: FieldDescriptor, terms: Mapping[int, "FqElem | int"] = ()):
        clean = {}
        for e, c in dict(terms).items():
            c = field(c)
            if c:
                clean[int(e)] = c
        self.field = field
        self.terms = clean

    @classmethod
    def monomial(cls, field: FieldDescriptor, exponent: int, coeff: "FqElem | int" = 1) -> "LaurentPoly":
        return cls(field, {exponent: coeff})

    def _lift(self, other) -> "LaurentPoly":
        if isinstance(other, LaurentPoly):
            if other.field != self.field:
                raise FieldError("mixed-field Laurent arithmetic")
            return other
        if isinstance(other, (int, FqElem)):
            return LaurentPoly(self.field, {0: self.field(other)})
        return NotImplemented

    def __add__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        out = dict(self.terms)
        for e, c in other.terms.items():
            out[e] = out[e] + c if e in out else c
        return LaurentPoly(self.field, out)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPoly(self.field, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        out: dict[int, FqElem] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = e1 + e2
                out[e] = out[e] + c1 * c2 if e in out else c1 * c2
        return LaurentPoly(self.field, out)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            if len(self.terms) != 1:
                raise ValueError("only monomials have Laurent inverses")
            (e, c), = self.terms.items()
            return LaurentPoly(self.field, {e * n: c**n})
        out = LaurentPoly(self.field, {0: 1})
        for _ in range(n):
            out = out * self
        return out

    def __eq__(self, other):
        if isinstance(other, (int, FqElem)):
            other = self._lift(other)
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self.field == other.field and self.terms == other.terms

    def __hash__(self):
        return hash(tuple(sorted((e, c.value) for e, c in self.terms.items())))

    def __bool__(self):
        return bool(self.terms)

    def coeff(self, e: int) -> FqElem:
        return self.terms.get(e, self.field.zero)

    @property
    def min_degree(self) -> int:
        return min(self.terms) if self.terms else 0

    @property
    def max_degree(self) -> int:
        return max(self.terms) if self.terms else 0

    def is_symmetric(self) -> bool:
        return all(self.coeff(-e) == c for e, c in self.terms.items())

    def to_ratfunc(self) -> "RatFunc":
        if not self.terms:
            return RatFunc.zero(self.field)
        lo = self.min_degree
        num = trim(self.coeff(e).value for e in range(lo, self.max_degree + 1))
        return RatFunc._make(self.field, lo, num, (1,))

    def __repr__(self):
        return format_terms(self.terms)

    def to_string(self, var: str = "t") -> str:
        return format_terms(self.terms, var)


class RatFunc:
    """Element of F_q(t) in reduced canonical form.

    The value is t^shift * num(t) / den(t) where num and den are ordinary
    polynomials with nonzero constant terms, den is monic and gcd(num, den) = 1.
    """

    __slots__ = ("field", "shift", "num", "den")

    def __init__(self, field: FieldDescriptor, shift: int, num: Poly, den: Poly):
        object.__setattr__(self, "field", field)
        object.__setattr__(self, "shift", shift)
        object.__setattr__(self, "num", num)
        object.__setattr__(self, "den", den)

    def __setattr__(self, name, value):
        raise AttributeError("RatFunc is immutable")

    # -- construction --------------------------------------------------------

    @classmethod
    def _make(cls, field: FieldDescriptor, shift: int, num, den) -> "RatFunc":
        num, den = trim(num), trim(den)
        if not den:
            raise ZeroDivisionError("zero denominator")
        if not num:
            return cls(field, 0, (), (1,))
        i = 0
        while num[i] == 0:
            i += 1
        j = 0
        while den[j] == 0:
            j += 1
        if i or j:
            num, den, shift = num[i:], den[j:], shift + i - j
        R = ring(field)
        if len(den) > 1:
            g = R.gcd(num, den)
            if len(g) > 1:
                num = R.divmod(num, g)[0]
                den = R.divmod(den, g)[0]
        lead = den[-1]
        if lead != 1:
            inv = R.E.inv(lead)
            num = R.scale(num, inv)
            den = R.scale(den, inv)
        return cls(field, shift, num, den)

    @classmethod
    def zero(cls, field: FieldDescriptor) -> "RatFunc":
        return cls(field, 0, (), (1,))

    @classmethod
    def const(cls, field: FieldDescriptor, c: "FqElem | int") -> "RatFunc":
        v = field(c).value
        return cls(field, 0, (v,) if v else (), (1,))

    @classmethod
    def t(cls, field: FieldDescriptor) -> "RatFunc":
        return cls(field, 1, (1,), (1,))

    @classmethod
    def from_polys(cls, field: FieldDescriptor, num, den=(1,), shift: int = 0) -> "RatFunc":
        """Build from low-first coefficient sequences (ints or FqElem)."""
        n = [field(c).value for c in num]
        d = [field(c).value for c in den]
        return cls._make(field, shift, n, d)

    # -- views ---------------------------------------------------------------

    @property
    def numerator(self) -> LaurentPoly:
        return LaurentPoly(self.field, {self.shift + i: FqElem(self.field, c) for i, c in enumerate(self.num)})

    @property
    def denominator(self) -> LaurentPoly:
        return LaurentPoly(self.field, {i: FqElem(self.field, c) for i, c in enumerate(self.den)})

    def is_zero(self) -> bool:
        return not self.num

    def is_constant(self) -> bool:
        return len(self.den) == 1 and (not self.num or (len(self.num) == 1 and self.shift == 0))

    def constant_value(self) -> FqElem:
        if not self.is_constant():
            raise ValueError(f"{self} is not constant")
        return FqElem(self.field, self.num[0] if self.num else 0)

    def is_laurent(self) -> bool:
        return len(self.den) == 1

    def to_laurent(self) -> LaurentPoly:
        if not self.is_laurent():
            raise ValueError(f"{self} is not a Laurent polynomial")
        return self.numerator

    # -- arithmetic ----------------------------------------------------------

    def _lift(self, other) -> "RatFunc":
        if isinstance(other, RatFunc):
            if other.field != self.field:
                raise FieldError(f"mixed-field arithmetic: {self.field} vs {other.field}")
            return other
        if isinstance(other, int):
            return RatFunc.const(self.field, other)
        if isinstance(other, FqElem):
            if other.field != self.field:
                raise FieldError(f"mixed-field arithmetic: {self.field} vs {other.field}")
            return RatFunc.const(self.field, other)
        if isinstance(other, LaurentPoly):
            return other.to_ratfunc()
        return NotImplemented

    def __add__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        if not o.num:
            return self
        if not self.num:
            return o
        R = ring(self.field)
        e = min(self.shift, o.shift)
        a = R.shift(self.num, self.shift - e)
        b = R.shift(o.num, o.shift - e)
        if self.den == o.den:
            return RatFunc._make(self.field, e, R.add(a, b), self.den)
        num = R.add(R.mul(a, o.den), R.mul(b, self.den))
        return RatFunc._make(self.field, e, num, R.mul(self.den, o.den))

    __radd__ = __add__

    def __neg__(self):
        return RatFunc(self.field, self.shift, ring(self.field).neg(self.num), self.den)

    def __sub__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        return self + (-o)

    def __rsub__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        return o + (-self)

    def __mul__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        if not self.num or not o.num:
            return RatFunc.zero(self.field)
        R = ring(self.field)
        shift = self.shift + o.shift
        if len(self.den) == 1 and len(o.den) == 1:
            return RatFunc(self.field, shift, R.mul(self.num, o.num), (1,))
        n1, d1, n2, d2 = self.num, self.den, o.num, o.den
        g = R.gcd(n1, d2) if len(d2) > 1 else (1,)
        if len(g) > 1:
            n1, d2 = R.divmod(n1, g)[0], R.divmod(d2, g)[0]
        g = R.gcd(n2, d1) if len(d1) > 1 else (1,)
        if len(g) > 1:
            n2, d1 = R.divmod(n2, g)[0], R.divmod(d1, g)[0]
        num, den = R.mul(n1, n2), R.mul(d1, d2)
        lead = den[-1]
        if lead != 1:
            inv = R.E.inv(lead)
            num, den = R.scale(num, inv), R.scale(den, inv)
        return RatFunc(self.field, shift, num, den)

    __rmul__ = __mul__

    def inverse(self) -> "RatFunc":
        if not self.num:
            raise ZeroDivisionError("inverse of the zero rational function")
        R = ring(self.field)
        inv = R.E.inv(self.num[-1])
        return RatFunc(self.field, -self.shift, R.scale(self.den, inv), R.scale(self.num, inv))

    def __truediv__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        return o * self.inverse()

    def __pow__(self, n: int):
        base = self if n >= 0 else self.inverse()
        n = abs(n)
        result = RatFunc.const(self.field, 1)
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def __eq__(self, other):
        if isinstance(other, (int, FqElem, LaurentPoly)):
            other = self._lift(other)
        if not isinstance(other, RatFunc):
            return NotImplemented
        return (self.field == other.field and self.shift == other.shift
                and self.num == other.num and self.den == other.den)

    def __hash__(self):
        return hash((self.shift, self.num, self.den))

    def __bool__(self):
        return bool(self.num)

    def __call__(self, c):
        return eval_at(self, c)

    # -- printing ------------------------------------------------------------

    def to_string(self, var: str = "t") -> str:
        num = format_terms(self.numerator.terms, var)
        if len(self.den) == 1:
            return num
        den = format_terms(self.denominator.terms, var)
        if len(self.numerator.terms) > 1:
            num = f"({num})"
        return f"{num}/({den})"

    def __repr__(self):
        return self.to_string()


def ratfunc_arith(op: str, f: RatFunc, g=None) -> RatFunc:
    """Dispatch a named operation (add, sub, mul, div, inv, neg, pow) on F_q(t)."""
    if op == "add":
        return f + g
    if op == "sub":
        return f - g
    if op == "mul":
        return f * g
    if op == "div":
        return f / g
    if op == "inv":
        return f.inverse()
    if op == "neg":
        return -f
    if op == "pow":
        return f**g
    raise ValueError(f"unknown operation {op!r}")


# -- places and valuations ------------------------------------------------------

@dataclass(frozen=True)
class Place:
    """A place of F_q(t): Infinity (poly is None) or a monic irreducible poly."""

    poly: Optional[Poly] = None
    field: Optional[FieldDescriptor] = dc_field(default=None, compare=False, hash=False)

    @classmethod
    def infinity(cls) -> "Place":
        return cls(None)

    @classmethod
    def finite(cls, field: FieldDescriptor, poly) -> "Place":
        codes = trim(field(c).value for c in poly)
        R = ring(field)
        if len(codes) < 2 or codes[-1] != 1 or not R.is_irreducible(codes):
            raise ValueError("a finite place needs a monic irreducible polynomial")
        return cls(codes, field)

    @classmethod
    def at_zero(cls, field: FieldDescriptor) -> "Place":
        return cls((0, 1), field)

    @property
    def is_infinite(self) -> bool:
        return self.poly is None

    @property
    def degree(self) -> int:
        return 1 if self.poly is None else len(self.poly) - 1

    def __repr__(self):
        if self.poly is None:
            return "Infinity"
        F = self.field
        if F is None:
            return f"Finite{self.poly}"
        terms = {i: FqElem(F, c) for i, c in enumerate(self.poly) if c}
        return f"Finite({format_terms(terms)})"

    def sort_key(self):
        return (1, 0, ()) if self.poly is None else (0, len(self.poly), self.poly[::-1])


def valuation_at(f: RatFunc, place: Place) -> "int | float":
    """Order of f at the place; +inf for f = 0."""
    if not f.num:
        return INF
    if place.poly is None:
        return (len(f.den) - 1) - (len(f.num) - 1 + f.shift)
    if place.poly == (0, 1):
        return f.shift
    R = ring(f.field)
    return R.multiplicity(f.num, place.poly) - R.multiplicity(f.den, place.poly)


def _places_of(f: RatFunc, poly: Poly) -> list[Place]:
    return [Place(g, f.field) for g, _ in ring(f.field).factor(poly) if g != (0, 1)]


def pole_places(f: RatFunc) -> list[Place]:
    if not f.num:
        raise ValueError("the zero function has no pole divisor")
    out = []
    if f.shift < 0:
        out.append(Place.at_zero(f.field))
    out.extend(_places_of(f, f.den))
    if len(f.num) - 1 + f.shift > len(f.den) - 1:
        out.append(Place.infinity())
    return sorted(out, key=Place.sort_key)


def zero_places(f: RatFunc) -> list[Place]:
    if not f.num:
        raise ValueError("the zero function has no zero divisor")
    out = []
    if f.shift > 0:
        out.append(Place.at_zero(f.field))
    out.extend(_places_of(f, f.num))
    if len(f.num) - 1 + f.shift < len(f.den) - 1:
        out.append(Place.infinity())
    return sorted(out, key=Place.sort_key)


def eval_at(f: RatFunc, c: "FqElem | int") -> FqElem:
    """f(c), with c in the base field or an extension of it."""
    F = f.field
    if isinstance(c, int):
        c = F(c)
    target = c.field
    E = engine(target)
    if target == F:
        conv = lambda x: x  # noqa: E731
    else:
        conv = lambda x: embed_code(F, target, x)  # noqa: E731

    def ev(poly: Poly) -> int:
        acc = 0
        for a in reversed(poly):
            acc = E.add(E.mul(acc, c.value), conv(a))
        return acc

    d = ev(f.den)
    if d == 0 or (c.value == 0 and f.shift < 0):
        raise PoleError(f"{f} has a pole at {c}")
    val = E.mul(ev(f.num), E.inv(d))
    if f.shift:
        if c.value == 0:
            return FqElem(target, 0)
        val = E.mul(val, E.pow(c.value, f.shift))
    return FqElem(target, val)


# -- symmetric Laurent polynomials in the trace variable --------------------------

def to_trace_basis(f: LaurentPoly) -> LaurentPoly:
    """Rewrite a symmetric Laurent polynomial in x as a polynomial in s = x + 1/x."""
    if not f.is_symmetric():
        raise ValueError(f"{f} is not symmetric under x -> 1/x")
    F = f.field
    s = LaurentPoly.monomial(F, 1)
    top = max((abs(e) for e in f.terms), default=0)
    # T_n(s) = x^n + x^-n
    T = [LaurentPoly(F, {0: 2}), s]
    for _ in range(2, top + 1):
        T.append(s * T[-1] - T[-2])
    out = LaurentPoly(F, {0: f.coeff(0)})
    for n in range(1, top + 1):
        c = f.coeff(n)
        if c:
            out = out + T[n] * c
    return out
