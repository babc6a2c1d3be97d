"""Univariate polynomials over F_q on integer codes.

Polynomials are tuples of element codes, lowest degree first, with no trailing
zeros; the zero polynomial is ``()``.
"""

from __future__ import annotations

import random
from functools import lru_cache

import numpy as np

from .field_arith import FieldDescriptor, engine

Poly = tuple

# numpy convolution keeps int64 exact while len * p**2 < 2**63
_NUMPY_MIN_LEN = 12


def trim(a) -> Poly:
    a = list(a)
    while a and a[-1] == 0:
        a.pop()
    return tuple(a)


class PolyRing:
    def __init__(self, field: FieldDescriptor):
        self.field = field
        self.E = engine(field)
        self.p, self.q = field.p, field.order
        self.prime = field.k == 1

    # -- basic ring operations ------------------------------------------------

    def add(self, a: Poly, b: Poly) -> Poly:
        if len(a) < len(b):
            a, b = b, a
        if self.prime:
            p = self.p
            out = [(x + y) % p for x, y in zip(a, b)]
        else:
            ad = self.E.add
            out = [ad(x, y) for x, y in zip(a, b)]
        out.extend(a[len(b):])
        return trim(out)

    def neg(self, a: Poly) -> Poly:
        if self.prime:
            return tuple((-x) % self.p for x in a)
        return tuple(self.E.neg(x) for x in a)

    def sub(self, a: Poly, b: Poly) -> Poly:
        return self.add(a, self.neg(b))

    def scale(self, a: Poly, c: int) -> Poly:
        if c == 0:
            return ()
        if self.prime:
            return tuple((x * c) % self.p for x in a)
        m = self.E.mul
        return tuple(m(x, c) for x in a)

    def shift(self, a: Poly, n: int) -> Poly:
        return (0,) * n + a if a else ()

    def mul(self, a: Poly, b: Poly) -> Poly:
        if not a or not b:
            return ()
        if self.prime:
            p = self.p
            if len(a) == 1:
                return trim((x * a[0]) % p for x in b)
            if len(b) == 1:
                return trim((x * b[0]) % p for x in a)
            if min(len(a), len(b)) >= _NUMPY_MIN_LEN:
                r = np.convolve(np.array(a, dtype=np.int64), np.array(b, dtype=np.int64)) % p
                return trim(int(x) for x in r)
            out = [0] * (len(a) + len(b) - 1)
            for i, x in enumerate(a):
                if x:
                    for j, y in enumerate(b):
                        out[i + j] += x * y
            return trim(x % p for x in out)
        ad, m = self.E.add, self.E.mul
        out = [0] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    if y:
                        out[i + j] = ad(out[i + j], m(x, y))
        return trim(out)

    def divmod(self, a: Poly, b: Poly) -> tuple[Poly, Poly]:
        if not b:
            raise ZeroDivisionError("polynomial division by zero")
        if len(a) < len(b):
            return (), a
        E = self.E
        inv_lead = E.inv(b[-1])
        r = list(a)
        db = len(b) - 1
        quo = [0] * (len(a) - db)
        if self.prime:
            p = self.p
            for i in range(len(a) - 1, db - 1, -1):
                c = (r[i] * inv_lead) % p
                if c:
                    s = i - db
                    quo[s] = c
                    for j, y in enumerate(b):
                        r[s + j] = (r[s + j] - c * y) % p
        else:
            for i in range(len(a) - 1, db - 1, -1):
                c = E.mul(r[i], inv_lead)
                if c:
                    s = i - db
                    quo[s] = c
                    for j, y in enumerate(b):
                        r[s + j] = E.sub(r[s + j], E.mul(c, y))
        return trim(quo), trim(r[:db])

    def mod(self, a: Poly, b: Poly) -> Poly:
        return self.divmod(a, b)[1]

    def monic(self, a: Poly) -> Poly:
        if not a or a[-1] == 1:
            return a
        return self.scale(a, self.E.inv(a[-1]))

    def gcd(self, a: Poly, b: Poly) -> Poly:
        while b:
            a, b = b, self.mod(a, b)
        return self.monic(a)

    def pow(self, a: Poly, n: int) -> Poly:
        result: Poly = (1,)
        base = a
        while n:
            if n & 1:
                result = self.mul(result, base)
            n >>= 1
            if n:
                base = self.mul(base, base)
        return result

    def powmod(self, a: Poly, n: int, m: Poly) -> Poly:
        result: Poly = (1,)
        base = self.mod(a, m)
        while n:
            if n & 1:
                result = self.mod(self.mul(result, base), m)
            n >>= 1
            if n:
                base = self.mod(self.mul(base, base), m)
        return result

    def evaluate(self, a: Poly, x: int) -> int:
        E = self.E
        acc = 0
        for c in reversed(a):
            acc = E.add(E.mul(acc, x), c)
        return acc

    def derivative(self, a: Poly) -> Poly:
        return trim(self.E.mul(i % self.p, c) for i, c in enumerate(a) if i)

    # -- factorisation ----------------------------------------------------------

    def _pth_root(self, a: Poly) -> Poly:
        """For a(x) = b(x^p) return b with coefficients replaced by their p-th roots."""
        E = self.E
        e = self.q // self.p
        return trim(E.pow(c, e) for c in a[:: self.p])

    def squarefree(self, f: Poly) -> list[tuple[Poly, int]]:
        """Squarefree decomposition of a monic polynomial: [(g, multiplicity)]."""
        out: list[tuple[Poly, int]] = []
        if len(f) <= 1:
            return out
        df = self.derivative(f)
        if not df:
            return [(g, m * self.p) for g, m in self.squarefree(self._pth_root(f))]
        c = self.gcd(f, df)
        w = self.divmod(f, c)[0]
        i = 1
        while len(w) > 1:
            y = self.gcd(w, c)
            z = self.divmod(w, y)[0]
            if len(z) > 1:
                out.append((z, i))
            i += 1
            w = y
            c = self.divmod(c, y)[0]
        if len(c) > 1:
            out.extend((g, m * self.p) for g, m in self.squarefree(self._pth_root(c)))
        return out

    def _ddf(self, f: Poly) -> list[tuple[Poly, int]]:
        out = []
        x: Poly = (0, 1)
        h = x
        d = 0
        while len(f) - 1 >= 2 * (d + 1):
            d += 1
            h = self.powmod(h, self.q, f)
            g = self.gcd(f, self.sub(h, x))
            if len(g) > 1:
                out.append((g, d))
                f = self.divmod(f, g)[0]
                h = self.mod(h, f)
        if len(f) > 1:
            out.append((f, len(f) - 1))
        return out

    def _edf(self, f: Poly, d: int, rng: random.Random) -> list[Poly]:
        n = len(f) - 1
        if n == d:
            return [f]
        if d == 1 and self.q <= 4096:
            roots = [x for x in range(self.q) if self.evaluate(f, x) == 0]
            return [(self.E.neg(r), 1) for r in roots]
        while True:
            a = trim(rng.randrange(self.q) for _ in range(n))
            if len(a) < 2:
                continue
            if self.p == 2:
                # trace map a + a^2 + ... + a^(2^(kd-1))
                t = a
                acc = a
                for _ in range(self.field.k * d - 1):
                    t = self.mod(self.mul(t, t), f)
                    acc = self.add(acc, t)
                b = acc
            else:
                b = self.sub(self.powmod(a, (self.q**d - 1) // 2, f), (1,))
            g = self.gcd(f, b)
            if 1 < len(g) < len(f):
                return self._edf(g, d, rng) + self._edf(self.divmod(f, g)[0], d, rng)

    def factor(self, f: Poly) -> list[tuple[Poly, int]]:
        """Monic irreducible factors with multiplicities, sorted by (degree, codes)."""
        f = self.monic(trim(f))
        rng = random.Random(0x5EED)
        out: dict[Poly, int] = {}
        for g, mult in self.squarefree(f):
            for h, d in self._ddf(g):
                for irr in self._edf(h, d, rng):
                    out[irr] = out.get(irr, 0) + mult
        return sorted(out.items(), key=lambda kv: (len(kv[0]), kv[0][::-1]))

    def is_irreducible(self, f: Poly) -> bool:
        f = trim(f)
        if len(f) < 2:
            return False
        fs = self.factor(f)
        return len(fs) == 1 and fs[0][1] == 1

    def multiplicity(self, f: Poly, g: Poly) -> int:
        """Largest m with g^m | f (f nonzero, deg g >= 1)."""
        m = 0
        while True:
            quo, rem = self.divmod(f, g)
            if rem:
                return m
            f = quo
            m += 1


@lru_cache(maxsize=None)
def ring(field: FieldDescriptor) -> PolyRing:
    return PolyRing(field)
