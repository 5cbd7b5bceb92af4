import pytest

from sgtrees.config import StageBoundError
from sgtrees.counts import f_factored, fgh


def test_initial_and_first_steps():
    assert (fgh(0).f, fgh(0).g, fgh(0).h) == (3, 1, 1)
    assert (fgh(1).f, fgh(1).g, fgh(1).h) == (54, 30, 50)
    assert (fgh(2).f, fgh(2).g, fgh(2).h) == (524880, 486000, 1350000)


def test_stage_three_value():
    # value confirmed by the determinant oracle
    assert fgh(3).f == 803355125990400000
    assert f_factored(3) == (13, 22, 5)


@pytest.mark.parametrize("n", range(0, 13))
def test_identity_and_factorisation(n):
    t = fgh(n)
    assert 3 * t.g**2 == t.f * t.h
    a, b, c = f_factored(n)
    assert t.f == 2**a * 3**b * 5**c


def test_bound(monkeypatch):
    with pytest.raises(StageBoundError):
        fgh(13)
    monkeypatch.setenv("SG_MAX_STAGE", "2")
    assert fgh(2).f == 524880
    with pytest.raises(StageBoundError):
        fgh(3)
