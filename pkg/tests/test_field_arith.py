import itertools

import pytest
from hypothesis import given, settings, strategies as st

from sl2cv.field_arith import (FieldError, canonical_modulus, extension, fq_embed, fq_enumerate,
                               fq_make, fq_roots, fq_sqrt_minus_one, is_prime,
                               smallest_field_with_root)

FIELDS = [(2, 1), (3, 1), (2, 2), (5, 1), (7, 1), (2, 3), (3, 2), (101, 1)]


def elems(p, k):
    F = fq_make(p, k)
    return st.integers(0, F.order - 1).map(F)


@st.composite
def triples(draw):
    p, k = draw(st.sampled_from(FIELDS))
    e = elems(p, k)
    return draw(e), draw(e), draw(e)


@given(triples())
def test_ring_axioms(abc):
    a, b, c = abc
    assert a + b == b + a
    assert a * b == b * a
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a - a == 0
    assert a + (-a) == 0


@given(triples())
def test_inverse(abc):
    a = abc[0]
    if a:
        assert a * a.inverse() == 1
        assert a / a == 1
    else:
        with pytest.raises(ZeroDivisionError):
            a.inverse()


@given(triples())
def test_frobenius_is_additive(abc):
    a, b, _ = abc
    p = a.field.p
    assert (a + b) ** p == a ** p + b ** p


@pytest.mark.parametrize("p,k", FIELDS)
def test_fermat(p, k):
    F = fq_make(p, k)
    for a in fq_enumerate(F)[:64]:
        assert a ** F.order == a


def test_canonical_moduli():
    assert canonical_modulus(2, 2) == (1, 1, 1)
    assert canonical_modulus(3, 2) == (1, 0, 1)


def test_multiplicative_group_is_cyclic_in_f4_and_f9():
    for p, k in [(2, 2), (3, 2)]:
        F = fq_make(p, k)
        orders = set()
        for a in fq_enumerate(F)[1:]:
            n = 1
            while a ** n != 1:
                n += 1
            orders.add(n)
        assert max(orders) == F.order - 1


def test_bad_fields():
    assert not is_prime(1) and not is_prime(9) and is_prime(101)
    with pytest.raises(FieldError):
        fq_make(6)


def test_sqrt_minus_one():
    assert fq_sqrt_minus_one(fq_make(3)) is None
    x = fq_sqrt_minus_one(fq_make(5))
    assert x * x == -1
    F, r = smallest_field_with_root(3, (1, 0, 1))
    assert F.order == 9 and r * r == -1
    F, r = smallest_field_with_root(2, (1, 0, -1, 0, 1))
    assert r ** 4 - r ** 2 + 1 == 0


@pytest.mark.parametrize("p,k,m", [(2, 1, 2), (2, 2, 2), (3, 1, 2), (5, 1, 2)])
def test_embedding_is_a_homomorphism(p, k, m):
    F = fq_make(p, k)
    E = extension(F, m)
    assert E.order == F.order ** m
    xs = fq_enumerate(F)
    for a, b in itertools.product(xs, repeat=2):
        assert fq_embed(a + b, E) == fq_embed(a, E) + fq_embed(b, E)
        assert fq_embed(a * b, E) == fq_embed(a, E) * fq_embed(b, E)


@settings(max_examples=40)
@given(st.sampled_from([2, 3, 5, 7]), st.lists(st.integers(0, 6), min_size=2, max_size=4))
def test_roots_are_roots(p, coeffs):
    F = fq_make(p)
    coeffs = [c % p for c in coeffs]
    if not any(coeffs[1:]):
        return
    roots = fq_roots(coeffs, F)
    brute = [x for x in fq_enumerate(F) if sum(F(c) * x ** i for i, c in enumerate(coeffs)) == 0]
    assert sorted(int(r) for r in roots) == sorted(int(r) for r in brute)
