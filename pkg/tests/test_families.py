import pytest

from sl2cv.families import (GLUED_TAGS, ExcludedValue, FamilyError, FamilySpec, all_specs, applicable,
                            char_tuple, component_membership, fixed_y, instantiate_numeric,
                            instantiate_symbolic, presentation_for, representative_phi,
                            verify_relations)
from sl2cv.field_arith import fq_enumerate, fq_make
from sl2cv.funcfield import RatFunc
from sl2cv.groups import GluingMatrix

PRIMES = [2, 3, 5, 7, 101]


def _specs():
    return [s for p in PRIMES for s in all_specs(p)]


@pytest.mark.parametrize("spec", _specs(), ids=lambda s: f"{s.tag}-p{s.p}-e{s.eps}-k{s.kparity}-s{s.s}")
def test_symbolic_relations_and_determinants(spec):
    rep = instantiate_symbolic(spec)
    assert all(M.det() == 1 for M in rep)
    assert verify_relations(rep, presentation_for(spec)).ok


@pytest.mark.parametrize("p", PRIMES)
def test_glued_families_fit_every_applicable_phi(p):
    phis = [GluingMatrix(k, 1, -1 - 6 * k, -6) for k in range(-2, 3)]
    phis += [GluingMatrix(k, 1, -1, 0) for k in range(-2, 3)]
    phis += [GluingMatrix(1, l, 0, 1) for l in range(-2, 3)]
    phis += [GluingMatrix(1, l, -6, 1 - 6 * l) for l in range(-2, 3)]
    for spec in all_specs(p):
        if spec.tag not in GLUED_TAGS:
            continue
        rep = instantiate_symbolic(spec)
        for phi in phis:
            if applicable(spec, phi):
                assert verify_relations(rep, presentation_for(spec, phi)).ok, (spec, phi)


def test_field_restrictions():
    with pytest.raises(FamilyError):
        FamilySpec("C_T1", 3)
    with pytest.raises(FamilyError):
        FamilySpec("C_T2", 2)
    with pytest.raises(FamilyError):
        FamilySpec("Nope", 2)
    with pytest.raises(FamilyError):
        FamilySpec("C_uv", 5, v=0)


def test_base_fields():
    assert FamilySpec("C_T", 2).field.order == 4
    assert FamilySpec("C_T", 3).field.order == 9
    assert FamilySpec("C_T2", 3).field.order == 9
    assert FamilySpec("C_T2", 5).field.order == 5
    assert FamilySpec("TrefoilRedNonAb", 5).field.order == 25


def test_fixed_y():
    y = fixed_y(FamilySpec("C_T", 5))
    assert y == 2
    with pytest.raises(ExcludedValue):
        fixed_y(FamilySpec("C_T", 5, y=1))


def test_c_t1_tuple():
    F = fq_make(2)
    t = RatFunc.t(F)
    got = char_tuple(instantiate_symbolic(FamilySpec("C_T1", 2)))
    assert got == tuple(x * (t ** 0) for x in (0, 0, 0, 0, 0, 0, t, 0, 1, 1, 0, t + 1, t + 1, 0))


@pytest.mark.parametrize("p", [2, 3, 5, 7])
def test_klein_components(p):
    t = RatFunc.t(fq_make(p))
    s = t + 1 / t
    irr = char_tuple(instantiate_symbolic(FamilySpec("KleinIrr", p)))
    assert irr == (0 * t, s, 0 * t)
    assert component_membership("klein", p, irr) == {"X_irr"}
    central = char_tuple(instantiate_symbolic(FamilySpec("KleinRedCentral", p, eps=-1)))
    assert central == (s, -2 + 0 * t, -s)
    assert "X_red" in component_membership("klein", p, central)


@pytest.mark.parametrize("p", [2, 3, 5, 7])
def test_trefoil_components(p):
    t = RatFunc.t(fq_make(p))
    s = t + 1 / t
    irr = char_tuple(instantiate_symbolic(FamilySpec("TrefoilIrr", p)))
    assert irr == (s, s, t ** 0)
    ab = char_tuple(instantiate_symbolic(FamilySpec("TrefoilAbDiag", p)))
    assert ab == (s, s, s * s - 2)
    assert component_membership("trefoil", p, irr) == {"X_irr"} | ({"X_red"} if s * s - 2 == 1 else set())


def test_numeric_instantiation():
    spec = FamilySpec("C_SB", 5)
    rep = instantiate_numeric(spec, 2)
    assert all(M.det() == 1 for M in rep)
    assert verify_relations(rep, presentation_for(spec)).ok
    for bad in (0, 1, -1):
        with pytest.raises(ExcludedValue):
            instantiate_numeric(spec, bad)
    with pytest.raises(FamilyError):
        instantiate_numeric(spec)


def test_numeric_over_extension():
    spec = FamilySpec("C_T1", 2)
    F4 = fq_make(2, 2)
    for x in fq_enumerate(F4):
        rep = instantiate_numeric(spec, x)
        assert rep[0].a12 == x
        assert verify_relations(rep, presentation_for(spec, GluingMatrix(0, 1, -1, 0))).ok


def test_representatives_are_applicable():
    for p in (2, 3):
        for spec in all_specs(p):
            if spec.tag in GLUED_TAGS:
                assert applicable(spec, representative_phi(spec))


def test_describe():
    d = FamilySpec("C_uv", 7, eps=-1, kparity=1, u=3, v=1).describe()
    assert d == {"tag": "C_uv", "p": 7, "field": "F7", "eps": -1, "kparity": 1, "u": 3, "v": 1}
