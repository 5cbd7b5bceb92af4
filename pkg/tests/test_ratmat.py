from fractions import Fraction as Fr

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from sgtrees.ratmat import (
    DimensionError,
    DivergentSeriesError,
    GeomPoly,
    RatMatrix,
    SingularMatrixError,
    det_fraction_free,
    geom_tail_sum,
    mat_pow,
    to_fraction,
)

small_ints = st.integers(min_value=-6, max_value=6)


def square(k):
    return st.lists(st.lists(small_ints, min_size=k, max_size=k), min_size=k, max_size=k)


def det_by_elimination(rows):
    m = [[Fr(x) for x in r] for r in rows]
    n, det = len(m), Fr(1)
    for c in range(n):
        piv = next((r for r in range(c, n) if m[r][c] != 0), None)
        if piv is None:
            return Fr(0)
        if piv != c:
            m[c], m[piv] = m[piv], m[c]
            det = -det
        det *= m[c][c]
        for r in range(c + 1, n):
            f = m[r][c] / m[c][c]
            m[r] = [a - f * b for a, b in zip(m[r], m[c])]
    return det


def test_floats_are_rejected():
    with pytest.raises(TypeError):
        to_fraction(0.5)
    assert to_fraction("3/4") == Fr(3, 4)


def test_shapes_and_products():
    a = RatMatrix([[1, 2], [3, 4]])
    assert a.shape == (2, 2)
    assert a @ RatMatrix.identity(2) == a
    assert (a @ a)[1, 0] == 15
    with pytest.raises(DimensionError):
        a @ RatMatrix([[1, 2, 3]])


def test_inverse_and_singular():
    a = RatMatrix([[2, 1], [7, 4]])
    assert a @ a.inverse() == RatMatrix.identity(2)
    with pytest.raises(SingularMatrixError):
        RatMatrix([[1, 2], [2, 4]]).inverse()


def test_known_determinants():
    assert det_fraction_free([[2, -1], [-1, 2]]) == 3
    assert det_fraction_free([[0, 1], [1, 0]]) == -1
    assert det_fraction_free([[1, 2], [2, 4]]) == 0
    assert det_fraction_free([]) == 1


@settings(max_examples=60, deadline=None)
@given(st.integers(min_value=1, max_value=5).flatmap(square))
def test_bareiss_matches_elimination(rows):
    assert det_fraction_free(rows) == det_by_elimination(rows)


@settings(max_examples=40, deadline=None)
@given(square(3), st.integers(min_value=0, max_value=7))
def test_power_by_squaring(rows, k):
    m = RatMatrix(rows)
    slow = RatMatrix.identity(3)
    for _ in range(k):
        slow = slow @ m
    assert mat_pow(m, k) == slow


def test_geompoly_algebra():
    p = GeomPoly({1: Fr(1, 2), Fr(1, 3): 2})
    q = GeomPoly.power(Fr(1, 3), -2)
    assert p + q == Fr(1, 2)
    assert (p * p)(3) == p(3) ** 2
    assert p.shift(2)(1) == p(3)
    assert p.limit() == Fr(1, 2)


def test_tail_sum():
    # sum_{m>=1} (1/3)^m = 1/2 and sum (1/3)^m (3/5)^m = 1/4
    assert geom_tail_sum(GeomPoly.constant(1), Fr(1, 3)) == Fr(1, 2)
    assert geom_tail_sum(GeomPoly.power(Fr(3, 5)), Fr(1, 3)) == Fr(1, 4)
    assert geom_tail_sum(GeomPoly.power(Fr(1, 375)), Fr(1, 3)) == Fr(1, 1124)
    with pytest.raises(DivergentSeriesError):
        geom_tail_sum(GeomPoly.constant(1), 1)
