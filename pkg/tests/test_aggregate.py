import math
from fractions import Fraction as Fr

import pytest

from sgtrees import aggregate as agg
from sgtrees.gasket import vertex_count
from sgtrees.ratmat import GeomPoly


def test_first_stages():
    r = agg.phi_sum(1, 1)
    assert (r.Phi, r.phi) == (3, Fr(1, 2))
    assert agg.phi_sum(2, 1).phi == Fr(163, 450)
    assert agg.phi_sum(5, 4).phi == Fr(2883432928358, 105527021484375)


def test_direct_sum_examples():
    assert agg.phi_sum_direct(0, 2) == 1
    assert agg.phi_sum_direct(2, 1) == Fr(163, 30)
    assert agg.phi_sum_direct(3, 3) == 42 * Fr(7787951, 38272500)


@pytest.mark.parametrize("n", range(0, 6))
def test_table_rows(n):
    assert agg.phi_vector(n) == agg.PHI_TABLE[n]


@pytest.mark.parametrize("n", range(0, 7))
def test_two_ways_and_handshake(n):
    v = vertex_count(n)
    total = 0
    for j in agg.DEGREES:
        res = agg.phi_sum(n, j)
        assert res.Phi == agg.phi_sum_direct(n, j)
        total += j * res.Phi
    assert total == 2 * (v - 1)
    assert sum(j * p for j, p in zip(agg.DEGREES, agg.phi_vector(n))) == 2 - Fr(2, v)


def test_monotone_in_n():
    rows = [agg.phi_vector(n) for n in range(7)]
    for a, b in zip(rows, rows[1:]):
        assert b[0] < a[0]
        assert all(b[j] > a[j] for j in (1, 2, 3))


def test_stage_six_is_close_to_the_limit():
    # absolute gap below 0.004 for every j
    for j in agg.DEGREES:
        assert abs(agg.phi_sum(6, j).phi - agg.LIMITS[j]) < Fr(4, 1000)


def test_eigen_identities():
    lm = agg.limit_machinery()
    lm.check()
    assert agg.DCAL == agg.RatMatrix.diag([Fr(1, 2), Fr(10, 27), Fr(25, 69), Fr(5, 14), Fr(15, 44)])


def test_limits_and_theta():
    assert agg.phi_limit(1) == Fr(10957, 40464)
    assert agg.phi_limit(2) == Fr(6626035, 13636368)
    assert agg.phi_limit(3) == Fr(2943139, 13636368)
    assert agg.phi_limit(4) == Fr(124895, 4545456)
    assert agg.theta() == 2


def test_reference_dcal_order_misses_the_limits():
    rt = agg.limit_machinery(agg.DCAL_REFERENCE).Rtilde
    col = [rt[i, 0] for i in range(5)]
    v = sum((p * c for p, c in zip(agg.z_poly(1), col)), GeomPoly())
    assert Fr(4, 3) * agg.geom_tail_sum(v, Fr(1, 3)) != agg.LIMITS[1]


def test_z_poly_examples():
    z1 = agg.z_poly(1)
    assert z1[0].coeff(Fr(3, 5)) == Fr(605, 392)
    assert z1[1] == z1[2] == z1[3]
    assert agg.z_poly(2)[0].coeff(1) == Fr(363, 196)


def test_lambda_table_consistency():
    assert agg.lambda_consistency()


def test_lambda_known_misprint_is_reported():
    _, found = agg.lambda_report()
    documented = [d for d in found if d.documented]
    assert len(documented) == 1
    d = documented[0]
    assert (d.j, d.k, d.component, d.derived) == (2, 1, 0, Fr(-275, 392))
    assert "-275/396" in str(d)


def test_square_lattice_reference():
    f = agg.square_lattice_reference()
    assert f[0] == pytest.approx(0.2945449182, abs=1e-10)
    assert f[1] == pytest.approx(0.4469901311, abs=1e-10)
    assert math.isclose(sum(f), 1.0, abs_tol=1e-14)
    assert sum(j * x for j, x in zip(agg.DEGREES, f)) == pytest.approx(2.0)
