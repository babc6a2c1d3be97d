import pytest
import sympy
from hypothesis import given, settings, strategies as st

from sl2cv.field_arith import fq_make
from sl2cv.funcfield import (INF, LaurentPoly, Place, PoleError, RatFunc, eval_at, pole_places,
                             to_trace_basis, valuation_at, zero_places)

PRIMES = [2, 3, 5, 7]


@st.composite
def ratfuncs(draw, p=None, nonzero=False):
    p = p or draw(st.sampled_from(PRIMES))
    F = fq_make(p)
    coeff = st.integers(0, p - 1)
    num = draw(st.lists(coeff, min_size=1, max_size=5))
    den = draw(st.lists(coeff, min_size=1, max_size=4).filter(any))
    if nonzero and not any(num):
        num[0] = 1
    return RatFunc.from_polys(F, num, den, shift=draw(st.integers(-3, 3)))


@st.composite
def pairs(draw):
    p = draw(st.sampled_from(PRIMES))
    return draw(ratfuncs(p)), draw(ratfuncs(p, nonzero=True))


@given(pairs())
def test_field_axioms(fg):
    f, g = fg
    assert f + g - g == f
    assert (f * g) / g == f
    assert f * (g + 1) == f * g + f
    assert g * g.inverse() == 1


@given(pairs())
def test_canonical_form_is_unique(fg):
    f, g = fg
    h = (f * g) / g
    assert (h.shift, h.num, h.den) == (f.shift, f.num, f.den)
    assert hash(h) == hash(f)


@given(pairs())
def test_valuation_is_additive(fg):
    f, g = fg
    if not f:
        return
    places = {repr(P): P for P in pole_places(f) + zero_places(f) + pole_places(g) + zero_places(g)}
    places["Infinity"] = Place.infinity()
    for P in places.values():
        assert valuation_at(f * g, P) == valuation_at(f, P) + valuation_at(g, P)


@settings(max_examples=60)
@given(ratfuncs(nonzero=True))
def test_principal_divisor_has_degree_zero(f):
    if not f:
        return
    total = sum(valuation_at(f, P) * P.degree for P in pole_places(f) + zero_places(f))
    assert total == 0


@given(ratfuncs(p=7), st.integers(1, 6))
def test_evaluation_is_a_homomorphism(f, c):
    F = fq_make(7)
    g = RatFunc.t(F) + 1
    try:
        lhs = eval_at(f * g, c)
        rhs = eval_at(f, c) * eval_at(g, c)
    except PoleError:
        return
    assert lhs == rhs


def test_valuations_known():
    F = fq_make(5)
    t = RatFunc.t(F)
    f = (t**2 + 1) / (t**3 * (t + 1))
    assert valuation_at(f, Place.infinity()) == 2
    assert valuation_at(f, Place.at_zero(F)) == -3
    assert valuation_at(f, Place.finite(F, (1, 1))) == -1
    assert valuation_at(f, Place.finite(F, (2, 1))) == 1    # t^2 + 1 = (t + 2)(t + 3) over F5
    assert valuation_at(RatFunc.zero(F), Place.infinity()) == INF
    assert [repr(P) for P in pole_places(f)] == ["Finite(t)", "Finite(t + 1)"]


def test_irreducible_places_only():
    F = fq_make(3)
    with pytest.raises(ValueError):
        Place.finite(F, (1, 0, 2))   # t^2 - 1 splits
    Place.finite(F, (1, 0, 1))


def test_pole_raises_on_evaluation():
    F = fq_make(3)
    t = RatFunc.t(F)
    with pytest.raises(PoleError):
        eval_at(1 / t, 0)


@pytest.mark.parametrize("p", [2, 3, 5, 7, 101])
@pytest.mark.parametrize("n", [1, 2, 3, 6, 7])
def test_trace_basis_against_sympy(p, n):
    # x^n + x^-n = 2 T_n(s/2) with T the Chebyshev polynomial
    s = sympy.symbols("s")
    expected = sympy.Poly(sympy.expand(2 * sympy.chebyshevt(n, s / 2)), s)
    F = fq_make(p)
    got = to_trace_basis(LaurentPoly(F, {n: 1, -n: 1}))
    for (e,), c in expected.terms():
        assert got.coeff(e) == F(int(c) % p)
    assert got.max_degree == n


def test_trace_basis_rejects_asymmetric():
    F = fq_make(5)
    with pytest.raises(ValueError):
        to_trace_basis(LaurentPoly(F, {2: 1}))
