"""Exact arithmetic in finite fields F_{p^k}.

Elements are stored as integer codes: the coefficient vector (c_0, ..., c_{k-1})
of the polynomial-basis representative is packed as sum(c_i * p**i).  Prime
field elements therefore have codes 0..p-1 and agree with the integers mod p.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import product
from typing import Iterable, Sequence


class FieldError(ValueError):
    """Raised on invalid field parameters or mixed-field arithmetic."""


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


# -- polynomials over Z_p, only what is needed to pick moduli ---------------

def _zp_trim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def _zp_mod(a: Sequence[int], m: Sequence[int], p: int) -> list[int]:
    a = _zp_trim(list(a))
    inv_lead = pow(m[-1], -1, p)
    dm = len(m) - 1
    while len(a) - 1 >= dm and a:
        c = (a[-1] * inv_lead) % p
        shift = len(a) - 1 - dm
        for i, mi in enumerate(m):
            a[shift + i] = (a[shift + i] - c * mi) % p
        _zp_trim(a)
    return a


def _zp_irreducible(f: Sequence[int], p: int) -> bool:
    """Trial division by every monic polynomial of degree <= deg(f)/2."""
    k = len(f) - 1
    if k <= 0:
        return False
    for d in range(1, k // 2 + 1):
        for low in product(range(p), repeat=d):
            if not _zp_mod(f, list(low) + [1], p):
                return False
    return True


def canonical_modulus(p: int, k: int) -> tuple[int, ...]:
    """Lexicographically smallest monic irreducible of degree k (low degree first)."""
    if k == 1:
        return (0, 1)
    for low in product(range(p), repeat=k):
        f = list(low) + [1]
        if _zp_irreducible(f, p):
            return tuple(f)
    raise FieldError(f"no irreducible polynomial of degree {k} over Z_{p}")  # unreachable


@dataclass(frozen=True)
class FieldDescriptor:
    p: int
    k: int
    modulus: tuple[int, ...]

    @property
    def order(self) -> int:
        return self.p**self.k

    @property
    def zero(self) -> "FqElem":
        return FqElem(self, 0)

    @property
    def one(self) -> "FqElem":
        return FqElem(self, 1)

    @property
    def gen(self) -> "FqElem":
        """The class of X in Z_p[X]/(modulus)."""
        return FqElem(self, self.p if self.k > 1 else 0)

    def __call__(self, value: "int | FqElem | Sequence[int]") -> "FqElem":
        if isinstance(value, FqElem):
            if value.field != self:
                raise FieldError(f"element of {value.field} is not in {self}")
            return value
        if isinstance(value, int):
            return FqElem(self, value % self.p)
        coeffs = list(value)
        if len(coeffs) > self.k:
            raise FieldError("too many coefficients")
        return FqElem(self, sum((c % self.p) * self.p**i for i, c in enumerate(coeffs)))

    def __repr__(self) -> str:
        return f"GF({self.p})" if self.k == 1 else f"GF({self.p}^{self.k})"

    @property
    def tag(self) -> str:
        return f"F{self.order}"


class _Engine:
    """Arithmetic on integer codes for one field."""

    def __init__(self, field: FieldDescriptor):
        self.field = field
        p, k = field.p, field.k
        self.p, self.k, self.q = p, k, p**k
        if k == 1:
            self.add = lambda a, b: (a + b) % p
            self.sub = lambda a, b: (a - b) % p
            self.neg = lambda a: (-a) % p
            self.mul = lambda a, b: (a * b) % p
            self._log = None
        else:
            self._build_tables()

    def _digits(self, a: int) -> list[int]:
        out = []
        for _ in range(self.k):
            a, r = divmod(a, self.p)
            out.append(r)
        return out

    def _pack(self, digits: Iterable[int]) -> int:
        return sum(d * self.p**i for i, d in enumerate(digits))

    def _polymul(self, a: int, b: int) -> int:
        p, m = self.p, self.field.modulus
        da, db = self._digits(a), self._digits(b)
        prod = [0] * (2 * self.k - 1)
        for i, x in enumerate(da):
            if x:
                for j, y in enumerate(db):
                    prod[i + j] = (prod[i + j] + x * y) % p
        r = _zp_mod(prod, m, p)
        return self._pack(r)

    def _build_tables(self) -> None:
        q, p = self.q, self.p
        dig = [self._digits(a) for a in range(q)]
        self._dig = dig
        if q <= 256:
            tab = [[self._pack((x + y) % p for x, y in zip(dig[a], dig[b])) for b in range(q)]
                   for a in range(q)]
            self.add = lambda a, b: tab[a][b]
        else:
            self.add = lambda a, b: self._pack((x + y) % p for x, y in zip(dig[a], dig[b]))
        negs = [self._pack((-x) % p for x in dig[a]) for a in range(q)]
        self.neg = negs.__getitem__
        self.sub = lambda a, b: self.add(a, negs[b])
        # discrete log tables from the smallest primitive element
        order = q - 1
        for g in range(2, q) if q > 2 else [1]:
            exp = [1]
            x = 1
            for _ in range(order - 1):
                x = self._polymul(x, g)
                if x == 1:
                    break
                exp.append(x)
            if len(exp) == order:
                break
        log = [0] * q
        for i, x in enumerate(exp):
            log[x] = i
        self._exp, self._log = exp, log

        def mul(a: int, b: int) -> int:
            if a == 0 or b == 0:
                return 0
            return exp[(log[a] + log[b]) % order]

        self.mul = mul

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("inverse of zero in " + repr(self.field))
        if self._log is None:
            return pow(a, -1, self.p)
        return self._exp[(-self._log[a]) % (self.q - 1)]

    def pow(self, a: int, n: int) -> int:
        if n < 0:
            a, n = self.inv(a), -n
        if self._log is None:
            return pow(a, n, self.p)
        if n == 0:
            return 1
        if a == 0:
            return 0
        return self._exp[(self._log[a] * n) % (self.q - 1)]

    def digits(self, a: int) -> list[int]:
        return self._digits(a)


@lru_cache(maxsize=None)
def engine(field: FieldDescriptor) -> _Engine:
    return _Engine(field)


@lru_cache(maxsize=None)
def fq_make(p: int, k: int = 1) -> FieldDescriptor:
    """Return F_{p^k} with its canonical modulus."""
    if not isinstance(p, int) or not is_prime(p):
        raise FieldError(f"characteristic must be prime, got {p!r}")
    if not isinstance(k, int) or k < 1:
        raise FieldError(f"extension degree must be >= 1, got {k!r}")
    return FieldDescriptor(p, k, canonical_modulus(p, k))


class FqElem:
    """An element of a finite field.  Immutable."""

    __slots__ = ("field", "value")

    def __init__(self, field: FieldDescriptor, value: int):
        object.__setattr__(self, "field", field)
        object.__setattr__(self, "value", value)

    def __setattr__(self, name, value):
        raise AttributeError("FqElem is immutable")

    @property
    def coeffs(self) -> tuple[int, ...]:
        return tuple(engine(self.field).digits(self.value))

    def _coerce(self, other) -> "int | None":
        if isinstance(other, FqElem):
            if other.field != self.field:
                raise FieldError(f"mixed-field arithmetic: {self.field} vs {other.field}")
            return other.value
        if isinstance(other, int):
            return other % self.field.p
        return None

    def __add__(self, other):
        b = self._coerce(other)
        if b is None:
            return NotImplemented
        return FqElem(self.field, engine(self.field).add(self.value, b))

    __radd__ = __add__

    def __sub__(self, other):
        b = self._coerce(other)
        if b is None:
            return NotImplemented
        return FqElem(self.field, engine(self.field).sub(self.value, b))

    def __rsub__(self, other):
        b = self._coerce(other)
        if b is None:
            return NotImplemented
        return FqElem(self.field, engine(self.field).sub(b, self.value))

    def __neg__(self):
        return FqElem(self.field, engine(self.field).neg(self.value))

    def __mul__(self, other):
        b = self._coerce(other)
        if b is None:
            return NotImplemented
        return FqElem(self.field, engine(self.field).mul(self.value, b))

    __rmul__ = __mul__

    def inverse(self) -> "FqElem":
        return FqElem(self.field, engine(self.field).inv(self.value))

    def __truediv__(self, other):
        b = self._coerce(other)
        if b is None:
            return NotImplemented
        e = engine(self.field)
        return FqElem(self.field, e.mul(self.value, e.inv(b)))

    def __rtruediv__(self, other):
        b = self._coerce(other)
        if b is None:
            return NotImplemented
        e = engine(self.field)
        return FqElem(self.field, e.mul(b, e.inv(self.value)))

    def __pow__(self, n: int):
        return FqElem(self.field, engine(self.field).pow(self.value, n))

    def __eq__(self, other):
        if isinstance(other, FqElem):
            return self.field == other.field and self.value == other.value
        if isinstance(other, int):
            return self.value == other % self.field.p
        return NotImplemented

    def __hash__(self):
        return hash((self.field.p, self.field.k, self.value))

    def __bool__(self):
        return self.value != 0

    def __int__(self):
        return self.value

    def __repr__(self):
        if self.field.k == 1:
            return str(self.value)
        terms = []
        for i, c in enumerate(self.coeffs):
            if c:
                mono = "" if i == 0 else ("g" if i == 1 else f"g^{i}")
                terms.append(str(c) if not mono else (mono if c == 1 else f"{c}*{mono}"))
        return " + ".join(reversed(terms)) or "0"


def fq_arith(op: str, a: FqElem, b: "FqElem | int | None" = None) -> FqElem:
    """Dispatch a named field operation (add, sub, mul, div, inv, neg, pow)."""
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "div":
        return a / b
    if op == "inv":
        return a.inverse()
    if op == "neg":
        return -a
    if op == "pow":
        return a**b
    raise ValueError(f"unknown field operation {op!r}")


def fq_enumerate(field: FieldDescriptor) -> list[FqElem]:
    return [FqElem(field, c) for c in range(field.order)]


def fq_sqrt_minus_one(field: FieldDescriptor) -> "FqElem | None":
    """Smallest element x with x^2 = -1, or None if the field has none."""
    e = engine(field)
    target = e.neg(1)
    for c in range(field.order):
        if e.mul(c, c) == target:
            return FqElem(field, c)
    return None


def extension(field: FieldDescriptor, m: int) -> FieldDescriptor:
    return fq_make(field.p, field.k * m)


@lru_cache(maxsize=None)
def _embedding_image(src: FieldDescriptor, dst: FieldDescriptor) -> tuple[int, ...]:
    if src.p != dst.p or dst.k % src.k:
        raise FieldError(f"{src} does not embed in {dst}")
    if src == dst:
        return tuple(range(src.order))
    e = engine(dst)
    # smallest root of src.modulus in dst is the image of the generator
    root = None
    for c in range(dst.order):
        acc = 0
        for coef in reversed(src.modulus):
            acc = e.add(e.mul(acc, c), coef)
        if acc == 0:
            root = c
            break
    assert root is not None
    powers = [1]
    for _ in range(src.k - 1):
        powers.append(e.mul(powers[-1], root))
    image = []
    for code in range(src.order):
        acc = 0
        for d, pw in zip(engine(src).digits(code), powers):
            if d:
                acc = e.add(acc, e.mul(d, pw))
        image.append(acc)
    return tuple(image)


def fq_embed(a: FqElem, target: FieldDescriptor) -> FqElem:
    """Image of `a` under the fixed embedding of its field into `target`."""
    return FqElem(target, _embedding_image(a.field, target)[a.value])


def embed_code(src: FieldDescriptor, dst: FieldDescriptor, code: int) -> int:
    return _embedding_image(src, dst)[code]


def fq_roots(coeffs: Sequence["FqElem | int"], field: FieldDescriptor) -> list[FqElem]:
    """All roots in `field` of the polynomial with the given low-first coefficients."""
    e = engine(field)
    cs = [field(c).value if not isinstance(c, FqElem) else fq_embed(c, field).value for c in coeffs]
    roots = []
    for x in range(field.order):
        acc = 0
        for c in reversed(cs):
            acc = e.add(e.mul(acc, x), c)
        if acc == 0:
            roots.append(FqElem(field, x))
    return roots


def smallest_field_with_root(p: int, coeffs: Sequence[int], max_k: int = 4) -> tuple[FieldDescriptor, FqElem]:
    """Smallest F_{p^k} (k <= max_k) containing a root of an integer polynomial."""
    for k in range(1, max_k + 1):
        F = fq_make(p, k)
        roots = fq_roots([F(c) for c in coeffs], F)
        if roots:
            return F, roots[0]
    raise FieldError(f"no root in F_{p}^k for k <= {max_k}")
