import pytest

from sl2cv import suite
from sl2cv.groups import GluingMatrix


def test_expectations_file():
    exp = suite.load_expectations()
    assert set(exp["lemmas"]) == {"S1", "S2", "S3", "S4", "S5"}
    assert len(exp["theorems"]) == 6
    assert "censuses" in exp["certification"]


@pytest.mark.parametrize("entries,p,expected", [
    ((0, 1, -1, 0), 2, True),
    ((0, 1, -1, 0), 3, False),
    ((1, 0, 6, 1), 2, False),
    ((0, 1, -1, -6), 5, True),
    ((1, 7, -1, -6), 2, True),
])
def test_torus_rule(entries, p, expected):
    assert suite.expected_verdict("S1", GluingMatrix(*entries), p) is expected


def test_torus_check_agrees_with_rule():
    for p in (2, 3):
        assert suite.check_torus(p, GluingMatrix(0, 1, -1, 0)).ok
        assert suite.check_torus(p, GluingMatrix(1, 0, 6, 1)).ok


def test_torus_char2_on_wrong_phi():
    c = suite.check_torus(2, GluingMatrix(1, 0, 6, 1), char2=True)
    assert c.ok and c.data["applicable"] is False


def test_unknown_condition():
    with pytest.raises(ValueError):
        suite._cond("sometimes", GluingMatrix(1, 0, 0, 1), 2)


@pytest.mark.parametrize("name", sorted(set(suite.LEMMAS) - {"theorems", "census", "irreducibility-criterion"}))
def test_each_lemma_passes_at_p5_or_p2(name):
    p = 2 if name in ("witness", "torus-char2") else 5
    assert all(c.ok for c in suite.LEMMAS[name](p, None))
