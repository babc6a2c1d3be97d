import pytest

from sl2cv.detection import (C1, C3, DETECTED, NOT_DETECTED, WITNESS_NEGATIVE, DetectionError,
                             alpha_matrix, boundary_dichotomy, conjecture_probe, curve_type,
                             default_witnesses, detect_s4, detect_surface, ideal_points,
                             KLEIN_PERIPHERAL, TREFOIL_PERIPHERAL, primitive_pairs, restriction,
                             s4_trace, s4_word, valuation_at_infinity_in_s, valuation_of_word)
from sl2cv.families import FamilySpec, instantiate_symbolic
from sl2cv.field_arith import fq_make
from sl2cv.funcfield import Place, RatFunc
from sl2cv.groups import alpha_word, commutator, gen, longitude_word
from sl2cv.mat2 import word_eval

INF = Place.infinity()


def rep_of(tag, p, **kw):
    return instantiate_symbolic(FamilySpec(tag, p, **kw))


def test_c_t1_restrictions_and_witness():
    rep = rep_of("C_T1", 2)
    F = fq_make(2)
    t = RatFunc.t(F)
    assert curve_type(rep) == C3
    assert restriction(rep, "K") == (0 * t,) * 3
    assert restriction(rep, "M") == (0 * t, 0 * t, t ** 0)
    assert [repr(P) for P in ideal_points(rep)] == ["Infinity"]
    w = commutator(gen(2) * gen(3, -1), gen(0))
    assert word_eval(rep, w).trace() == t * t
    assert valuation_of_word(rep, w, INF) == -2
    v = detect_surface(rep, "S2", INF)
    assert v.verdict == WITNESS_NEGATIVE and v.valuation == -2
    assert detect_surface(rep, "S1", INF).verdict == DETECTED


def test_restriction_needs_four_generators():
    with pytest.raises(DetectionError):
        restriction(rep_of("KleinIrr", 3), "K")


@pytest.mark.parametrize("tag,p", [("C_SA", 2), ("C_SB", 3), ("C_SB", 7), ("C_RB", 2)])
def test_c1_curves(tag, p):
    assert curve_type(rep_of(tag, p)) == C1
    assert detect_surface(rep_of(tag, p), "S1", INF).verdict == NOT_DETECTED


def test_slopes():
    assert boundary_dichotomy(rep_of("KleinIrr", 5), KLEIN_PERIPHERAL, INF).slope == (1, 0)
    assert boundary_dichotomy(rep_of("TrefoilIrr", 5), TREFOIL_PERIPHERAL, INF).slope == (6, 1)
    assert boundary_dichotomy(rep_of("TrefoilAbDiag", 5), TREFOIL_PERIPHERAL, INF).slope == (0, 1)


def test_primitive_pairs():
    assert primitive_pairs(2) == [(0, 1), (1, 0), (1, -1), (1, 1), (1, -2), (1, 2), (2, -1), (2, 1)]
    pairs = primitive_pairs(3)
    assert len(pairs) == len(set(pairs))
    assert (2, 2) not in pairs and (0, -1) not in pairs


@pytest.mark.parametrize("case,tag,p", [("S2", "C_SA", 2), ("S3", "C_SB", 5), ("S5", "C_RB", 2)])
def test_case_detection(case, tag, p):
    rep = rep_of(tag, p)
    assert all(detect_surface(rep, case, P).verdict == DETECTED
               for P in (Place.at_zero(rep[0].a11.field), INF))


def test_trefoil_longitude_pole():
    rep = rep_of("TrefoilIrr", 5)
    lon = word_eval(rep, longitude_word()).trace()
    assert valuation_at_infinity_in_s(lon) == -6


@pytest.mark.parametrize("p", [3, 7])
def test_alpha_matrix_matches_word(p):
    rep = rep_of("C_uv", p, u=2, v=1)
    for q in range(7):
        assert alpha_matrix(rep[0], rep[1], q) == word_eval(rep, alpha_word(q))
        assert s4_trace(rep, q) == word_eval(rep, s4_word(q)).trace()


def test_s4_valuation_pattern():
    # frozen: -1 below and above the line u = q - 1, 0 on it
    for q in range(9):
        vals = [detect_s4(0, 1, u, 1, q, 7).valuation for u in (q - 2, q - 1, q)]
        assert vals == [-1, 0, -1]


def test_s4_example():
    v = detect_s4(0, 1, 3, 1, 4, 7)
    assert v.verdict == DETECTED
    assert v.detail["valuations"] == {"Finite(t)": 0, "Infinity": 0}


def test_s4_errors():
    with pytest.raises(DetectionError):
        detect_s4(0, 1, 1, 0, 2)
    with pytest.raises(DetectionError):
        conjecture_probe(0, 1, 4, 2)


def test_conjecture_probe():
    r1 = conjecture_probe(0, 1, 2, 1)
    assert r1["verdict"] == detect_s4(0, 1, 1, 1, 2).verdict == DETECTED
    r2 = conjecture_probe(0, 1, 3, 2)
    assert r2["verdict"] is None and r2["table"]


def test_witness_list():
    ws = default_witnesses()
    assert len(ws) == 49 and len(set(ws)) == 49
