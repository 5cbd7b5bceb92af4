"""Average degree distribution over all vertices of SG(n) and its n -> oo limit.

``Phi_j(n)`` is the sum of ``F_j(n, x)`` over the vertices and
``phi_j(n) = Phi_j(n) / v(n)``.  The sum is assembled from the stage
boundary matrices:

    Phi_j(n) = 3 F_j(n, o)
             + sum_{m=1}^{n}   z(m) L^{n-m} e1
             + 2 sum_{m=1}^{n-1} z(m) R L^{n-m-1} e1
             + 2 sum_{m=1}^{n-2} sum_{s=1}^{n-m-1} z(m) R (ER)^s L^{n-1-m-s} e1

with ``z(m) = (1, 1, 1) B_j(m, m-1)``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .config import DEFAULT_TABLE_STAGE, check_stage
from .cornerdist import b_init, boundary_polys, corner_probs_o
from .gasket import vertex_count
from .ratmat import GeomPoly, RatMatrix, geom_tail_sum
from .vertexdist import E, L, R, full_table

Fr = Fraction
DEGREES = (1, 2, 3, 4)

PHI_TABLE = {
    0: (Fr(2, 3), Fr(1, 3), Fr(0), Fr(0)),
    1: (Fr(1, 2), Fr(19, 54), Fr(7, 54), Fr(1, 54)),
    2: (Fr(163, 450), Fr(5257, 12150), Fr(2203, 12150), Fr(289, 12150)),
    3: (Fr(143357, 472500), Fr(17871899, 38272500), Fr(7787951, 38272500), Fr(1000733, 38272500)),
    4: (
        Fr(24381607, 86484375),
        Fr(30227565716, 63047109375),
        Fr(13341669059, 63047109375),
        Fr(1703683097, 63047109375),
    ),
    5: (
        Fr(39739246273, 144755859375),
        Fr(51047283737324, 105527021484375),
        Fr(22626394285676, 105527021484375),
        Fr(2883432928358, 105527021484375),
    ),
}

LIMITS = {1: Fr(10957, 40464), 2: Fr(6626035, 13636368), 3: Fr(2943139, 13636368), 4: Fr(124895, 4545456)}


@dataclass(frozen=True)
class PhiResult:
    n: int
    j: int
    Phi: Fraction
    phi: Fraction


def _e1() -> RatMatrix:
    return RatMatrix.column_vector([1, 0, 0, 0, 0])


@lru_cache(maxsize=None)
def _z(m: int, j: int) -> RatMatrix:
    return RatMatrix.row_vector([1, 1, 1]) @ b_init(m, j).matrix


def _x(n: int, m: int, j: int) -> Fraction:
    """``(1,1,1) B_j(m+1, m) L^{n-m-1} e1``"""
    return (_z(m + 1, j) @ (L ** (n - m - 1)) @ _e1())[0, 0]


def _y(n: int, m: int, j: int) -> Fraction:
    """``(1,1,1) B_j(m+1, m) R L^{n-m-2} e1``"""
    return (_z(m + 1, j) @ R @ (L ** (n - m - 2)) @ _e1())[0, 0]


def _small(n: int, j: int) -> Fraction:
    corner = 3 * corner_probs_o(n, 1)[0] if j == 1 else 3 * corner_probs_o(n, 2)[0] if j == 2 else Fr(0)
    if n == 0:
        return corner
    if n == 1:
        return corner + _x(1, 0, j)
    return corner + _x(2, 0, j) + _x(2, 1, j) + 2 * _y(2, 0, j)


@lru_cache(maxsize=None)
def _pipeline(n: int, j: int) -> Fraction:
    f1, f2 = corner_probs_o(n, 1)[0], corner_probs_o(n, 2)[0]
    total = 3 * {1: f1, 2: f2}.get(j, Fr(0))
    # column vectors L^k e1 and R L^k e1, reused across m
    lcols = [_e1()]
    for _ in range(n):
        lcols.append(L @ lcols[-1])
    er = E @ R
    for m in range(1, n + 1):
        z = _z(m, j)
        total += (z @ lcols[n - m])[0, 0]
        if m <= n - 1:
            total += 2 * (z @ R @ lcols[n - m - 1])[0, 0]
        left = z @ R
        for s in range(1, n - m):
            left = left @ er
            total += 2 * (left @ lcols[n - 1 - m - s])[0, 0]
    return total


def phi_sum(n: int, j: int) -> PhiResult:
    check_stage(n)
    if j not in DEGREES:
        raise ValueError("degree j must be 1..4")
    Phi = _small(n, j) if n <= 2 else _pipeline(n, j)
    if n <= 2 and Phi != _pipeline(n, j):
        raise AssertionError(f"small-stage formula disagrees with the pipeline at n={n}")
    return PhiResult(n, j, Phi, Phi / vertex_count(n))


def phi_sum_direct(n: int, j: int) -> Fraction:
    """Plain column sum of the full per-vertex table."""
    check_stage(n, DEFAULT_TABLE_STAGE)
    return sum((d[j - 1] for d in full_table(n).values()), Fr(0))


def phi_vector(n: int) -> tuple[Fraction, ...]:
    out = tuple(phi_sum(n, j).phi for j in DEGREES)
    if sum(out) != 1:
        raise AssertionError(f"phi({n}) does not sum to 1")
    return out


# -- the n -> oo limit --------------------------------------------------------

Q1 = RatMatrix(
    [
        [159, -87, 0, -3, -3],
        [38, 14, 1, 2, 1],
        [38, 14, 0, 2, -4],
        [38, 14, -1, 2, 1],
        [15, 45, 0, -3, 5],
    ]
)
Q2 = RatMatrix(
    [
        [18, 0, -27, 0, -2],
        [5, -1, 98, -1, 1],
        [5, 0, -32, 1, 1],
        [0, 1, -52, 0, 0],
        [0, 0, 13, 0, 0],
    ]
)
D1 = RatMatrix.diag([0, 1, Fr(2, 5), Fr(3, 25), 0])
D1BAR = RatMatrix.diag([3, 0, 0, 0, 0])
D2 = RatMatrix.diag([1, Fr(3, 10), Fr(6, 25), Fr(1, 5), Fr(1, 15)])
D1TILDE = RatMatrix.diag([1, 0, 0, 0, 0])
# sum_s 3^s D2^(k-s) ~ 3^k diag(1 / (3 - d)), in the order of D2
DCAL = RatMatrix.diag([1 / (3 - D2[i, i]) for i in range(5)])
# the reference ordering of the same entries; it does not match D2
DCAL_REFERENCE = RatMatrix.diag([Fr(25, 69), Fr(15, 44), Fr(1, 2), Fr(5, 14), Fr(10, 27)])


@dataclass(frozen=True)
class LimitMachinery:
    Q1: RatMatrix
    D1: RatMatrix
    D1bar: RatMatrix
    Q2: RatMatrix
    D2: RatMatrix
    D1tilde: RatMatrix
    Dcal: RatMatrix
    Rtilde: RatMatrix

    def check(self) -> None:
        if E @ R != self.Q1 @ (self.D1 + self.D1bar) @ self.Q1.inverse():
            raise AssertionError("ER is not diagonalised by Q1")
        if L != self.Q2 @ self.D2 @ self.Q2.inverse():
            raise AssertionError("L is not diagonalised by Q2")


@lru_cache(maxsize=None)
def limit_machinery(dcal: RatMatrix = DCAL) -> LimitMachinery:
    rt = R @ Q1 @ D1TILDE @ Q1.inverse() @ Q2 @ dcal @ Q2.inverse()
    lm = LimitMachinery(Q1, D1, D1BAR, Q2, D2, D1TILDE, dcal, rt)
    lm.check()
    return lm


LAMBDA_BASES = (Fr(1), Fr(3, 5), Fr(1, 25), Fr(1, 375), Fr(1, 15), Fr(1, 225))


def _vec(*xs) -> tuple[Fraction, ...]:
    return tuple(Fr(x) for x in xs)


def _flat(c) -> tuple[Fraction, ...]:
    return (Fr(c),) * 5


# index 0: multiple of (1,1,1,1,1); 1..5: vectors of the bases above
LAMBDA_REFERENCE = {
    1: (
        _flat(0),
        _vec("605/392", "121/56", "121/56", "121/56", "1089/392"),
        _vec("-1375/196", "-55/28", "-55/28", "-55/28", "1221/196"),
        _vec("3125/392", "-375/56", "-375/56", "-375/56", "585/392"),
        _flat(0),
        _flat(0),
    ),
    2: (
        _flat("363/196"),
        _vec("-275/396", "-55/56", "-55/56", "-55/56", "-495/392"),
        _vec("2375/196", "95/28", "95/28", "95/28", "-2109/196"),
        _vec("-9375/392", "1125/56", "1125/56", "1125/56", "-1755/392"),
        _vec("-1265/196", "-187/196", "-187/196", "-187/196", "891/196"),
        _vec("10/49", "-240/49", "-240/49", "-240/49", "54/49"),
    ),
    3: (
        _flat("99/98"),
        _vec("-285/392", "-57/56", "-57/56", "-57/56", "-513/392"),
        _vec("-625/196", "-25/28", "-25/28", "-25/28", "555/196"),
        _vec("-9375/392", "-1125/56", "-1125/56", "-1125/56", "1755/392"),
        _vec("230/49", "34/49", "34/49", "34/49", "-162/49"),
        _vec("500/49", "480/49", "480/49", "480/49", "-108/49"),
    ),
    4: (
        _flat("27/196"),
        _vec("-45/392", "-9/56", "-9/56", "-9/56", "-81/392"),
        _vec("-375/196", "-15/28", "-15/28", "-15/28", "333/196"),
        _vec("-3125/392", "375/56", "375/56", "375/56", "-585/392"),
        _vec("345/196", "51/196", "51/196", "51/196", "-243/196"),
        _vec("250/49", "-240/49", "-240/49", "-240/49", "54/49"),
    ),
}

# the one documented reference entry that symbolic expansion does not reproduce
KNOWN_MISPRINTS = {(2, 1, 0): (Fr(-275, 392), Fr(-275, 396))}
# Fraction reduces -275/396, keep the reference spelling for reports
REFERENCE_TEXT = {(2, 1, 0): "-275/396"}


@lru_cache(maxsize=None)
def z_poly(j: int) -> tuple[GeomPoly, ...]:
    """``Z_j(m) = (1,1,1) B_j(m, m-1)`` as five GeomPolys in ``m``."""
    f, ga, gb, h = boundary_polys()[j]
    # the boundary entries are written in n = m - 1
    f, ga, gb, h = (p.shift(-1) for p in (f, ga, gb, h))
    g = ga + 2 * gb
    return (3 * f, g, g, g, 3 * h)


@dataclass(frozen=True)
class LambdaDiscrepancy:
    j: int
    k: int
    component: int
    derived: Fraction
    reference: Fraction

    @property
    def documented(self) -> bool:
        return KNOWN_MISPRINTS.get((self.j, self.k, self.component)) == (self.derived, self.reference)

    def __str__(self) -> str:
        tag = "documented" if self.documented else "UNDOCUMENTED"
        return (
            f"lambda_{self.k}^({self.j})[{self.component + 1}]: derived {self.derived}, "
            f"reference {REFERENCE_TEXT.get((self.j, self.k, self.component), self.reference)} ({tag})"
        )


def lambda_table(j: int) -> tuple[tuple[Fraction, ...], ...]:
    """Coefficient vectors of ``Z_j`` on the bases 1, 3/5, 1/25, 1/375, 1/15, 1/225."""
    z = z_poly(j)
    extra = set().union(*(p.bases() for p in z)) - set(LAMBDA_BASES)
    if extra:
        raise AssertionError(f"unexpected bases {sorted(extra)} in Z_{j}")
    return tuple(tuple(p.coeff(b) for p in z) for b in LAMBDA_BASES)


def lambda_discrepancies() -> list[LambdaDiscrepancy]:
    out = []
    for j in DEGREES:
        for k, (derived, reference) in enumerate(zip(lambda_table(j), LAMBDA_REFERENCE[j])):
            for c, (d, p) in enumerate(zip(derived, reference)):
                if d != p:
                    out.append(LambdaDiscrepancy(j, k, c, d, p))
    return out


def lambda_consistency() -> bool:
    """Sanity of the derived table on its own.

    ``sum_j F_j = 1`` makes the first component of ``sum_j Z_j`` the constant
    3, so every non-constant base must cancel across ``j``.
    """
    tables = [lambda_table(j) for j in DEGREES]
    for k in range(1, len(LAMBDA_BASES)):
        if sum(t[k][0] for t in tables) != 0:
            return False
    return sum(t[0][0] for t in tables) == 3


def lambda_report() -> tuple[bool, list[LambdaDiscrepancy]]:
    """``(ok, discrepancies)``: ok only when the reference table differs by the known misprint alone."""
    found = lambda_discrepancies()
    keys = {(d.j, d.k, d.component): (d.derived, d.reference) for d in found}
    return keys == KNOWN_MISPRINTS, found


def phi_limit(j: int) -> Fraction:
    if j not in DEGREES:
        raise ValueError("degree j must be 1..4")
    rt = limit_machinery().Rtilde
    col = [rt[i, 0] for i in range(5)]
    v = GeomPoly()
    for p, c in zip(z_poly(j), col):
        v = v + p * c
    value = Fr(4, 3) * geom_tail_sum(v, Fr(1, 3))
    if value != LIMITS[j]:
        raise AssertionError(f"phi_{j} limit {value} != {LIMITS[j]}")
    return value


def theta() -> Fraction:
    t = sum((j * phi_limit(j) for j in DEGREES), Fr(0))
    if t != 2:
        raise AssertionError(f"theta = {t}")
    return t


def square_lattice_reference() -> tuple[float, float, float, float]:
    """Degree probabilities of a uniform spanning tree on the square lattice (floats)."""
    p = math.pi
    return (
        8 / p**2 - 16 / p**3,
        8 / p - 36 / p**2 + 48 / p**3,
        2 - 16 / p + 48 / p**2 - 48 / p**3,
        -1 + 8 / p - 20 / p**2 + 16 / p**3,
    )
