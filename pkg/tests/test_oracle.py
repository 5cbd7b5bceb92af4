from fractions import Fraction as Fr

import pytest

from conftest import load_report
from sgtrees.counts import fgh
from sgtrees.oracle.exhaustive import count_ensemble, exhaustive_profiles
from sgtrees.oracle.mtt import (
    interpolate_coefficients,
    mtt_count,
    mtt_degree_profile,
    mtt_forest_counts,
    mtt_profiles,
)
from sgtrees.oracle.wilson import wilson_sample


def test_exhaustive_small():
    r0 = exhaustive_profiles(0)
    assert r0.f == 3 and r0.profiles[(0, 0)].counts == (2, 1, 0, 0)
    r1 = exhaustive_profiles(1)
    assert (r1.f, r1.g, r1.h) == (54, 30, 50)
    assert r1.profiles[(0, 0)].counts == (42, 12, 0, 0)
    assert r1.to_json() == load_report("exhaustive_n1.json")
    with pytest.raises(ValueError):
        exhaustive_profiles(3)


def test_split_enumeration_is_additive():
    whole = count_ensemble(1, "tree")
    parts = count_ensemble(1, "tree", workers=2, split_depth=3)
    assert (whole.total, whole.by_degree) == (parts.total, parts.by_degree)


@pytest.mark.parametrize("n", range(0, 4))
def test_determinant_counts(n):
    t = fgh(n)
    assert mtt_count(n) == t.f
    assert mtt_forest_counts(n) == (t.g, t.h)


def test_interpolation():
    # 2y + 3y^2 + y^4 sampled at 1..5
    ys = [2 * y + 3 * y * y + y**4 for y in range(1, 6)]
    assert interpolate_coefficients((1, 2, 3, 4, 5), ys) == [0, 2, 3, 0, 1]


def test_degree_profiles_agree_with_enumeration(exhaustive_n2):
    prof = mtt_profiles(2)
    for pr in exhaustive_n2["profiles"]:
        assert list(prof[(pr["p"], pr["q"])].counts) == pr["counts"]
    assert mtt_degree_profile(1, (0, 0)).counts == (42, 12, 0, 0)
    with pytest.raises(KeyError):
        mtt_degree_profile(1, (5, 5))


def test_sampler_is_reproducible_and_worker_independent():
    a = wilson_sample(1, 12_000, seed=11)
    b = wilson_sample(1, 12_000, seed=11)
    c = wilson_sample(1, 12_000, seed=11, workers=2)
    assert a.to_json() == b.to_json() == c.to_json()
    assert a.prng.startswith("numpy.random.Philox")
    assert wilson_sample(1, 12_000, seed=12).to_json() != a.to_json()


def test_sampler_corner_frequency():
    s = wilson_sample(1, 40_000, seed=5)
    freq = s.frequencies()[(0, 0)]
    err = s.stderr()[(0, 0)]
    assert abs(freq[0] - 7 / 9) <= 4 * err[0]
    for row in s.frequencies().values():
        assert sum(row) == pytest.approx(1.0)
    with pytest.raises(ValueError):
        wilson_sample(1, 0, seed=1)
