"""Degree distributions at the corner o and at the stage-boundary vertices.

Three layers, each checked against the next:

* closed forms in the stage index (GeomPolys) for the probabilities at ``o``
  and the auxiliary forest probabilities at ``b_n`` / ``o``;
* the linear recursions those closed forms solve, iterated exactly;
* the stage-boundary matrices ``B_j(m, m-1)`` (rows ``a, b, c``, columns
  ``F, G, G~, G^, H``) and their propagation through ``L'`` to larger stages.

Probability names follow the forest ensembles: ``F`` for spanning trees,
``G`` for two-tree forests separating ``b_n`` from ``{o, a_n}``, ``H`` for
three-tree forests separating all corners.
"""

from __future__ import annotations

from dataclasses import dataclass, fields
from fractions import Fraction
from functools import lru_cache
from typing import Generic, TypeVar

from .ratmat import GeomPoly, RatMatrix, mat_pow

Fr = Fraction
T = TypeVar("T")

ONE = Fr(1)
T15 = Fr(1, 15)
U35 = Fr(3, 5)
W25 = Fr(1, 25)
V375 = Fr(1, 375)
S225 = Fr(1, 225)

# (F_j(n,o), G_j(n,o)) evolves by this matrix
A_MATRIX = RatMatrix([[Fr(2, 3), Fr(1, 3)], [Fr(3, 5), Fr(2, 5)]])
# (G_i(n,b_n), H_i(n,o)) evolves by this matrix plus a source term for i = 1, 2
B_MATRIX = RatMatrix([[Fr(2, 5), Fr(3, 10)], [Fr(6, 25), Fr(6, 25)]])

L_PRIME = RatMatrix(
    [
        [Fr(2, 3), Fr(3, 5), Fr(3, 5)],
        [Fr(1, 6), Fr(3, 10), Fr(1, 10)],
        [Fr(1, 6), Fr(1, 10), Fr(3, 10)],
    ]
)


def _gp(*pairs) -> GeomPoly:
    return GeomPoly(pairs)


# Closed forms at the corner o.
F_O = {
    1: _gp((ONE, Fr(11, 14)), (T15, Fr(-5, 42))),
    2: _gp((ONE, Fr(3, 14)), (T15, Fr(5, 42))),
}
G_O = {
    1: _gp((ONE, Fr(11, 14)), (T15, Fr(3, 14))),
    2: _gp((ONE, Fr(3, 14)), (T15, Fr(-3, 14))),
}


@dataclass(frozen=True)
class BoundaryProbs(Generic[T]):
    G0_b: T
    H0_o: T
    G1_b: T
    G2_b: T
    H1_o: T
    H2_o: T

    def at(self, n: int) -> "BoundaryProbs[Fraction]":
        return BoundaryProbs(*(getattr(self, f.name)(n) for f in fields(self)))

    def as_tuple(self) -> tuple:
        return tuple(getattr(self, f.name) for f in fields(self))


BOUNDARY = BoundaryProbs(
    G0_b=_gp((U35, Fr(33, 28)), (W25, Fr(-5, 28))),
    H0_o=_gp((U35, Fr(11, 14)), (W25, Fr(3, 14))),
    G1_b=_gp((ONE, Fr(11, 14)), (T15, Fr(-2, 7)), (U35, Fr(-6, 7)), (W25, Fr(5, 14))),
    G2_b=_gp((ONE, Fr(3, 14)), (T15, Fr(2, 7)), (U35, Fr(-9, 28)), (W25, Fr(-5, 28))),
    H1_o=_gp((ONE, Fr(11, 14)), (T15, Fr(3, 14)), (U35, Fr(-4, 7)), (W25, Fr(-3, 7))),
    H2_o=_gp((ONE, Fr(3, 14)), (T15, Fr(-3, 14)), (U35, Fr(-3, 14)), (W25, Fr(3, 14))),
)


class ClosedFormMismatch(AssertionError):
    pass


@lru_cache(maxsize=None)
def _o_recursion(n: int, j: int) -> tuple[Fraction, Fraction]:
    v0 = {1: (Fr(2, 3), ONE), 2: (Fr(1, 3), Fr(0))}[j]
    an = mat_pow(A_MATRIX, n)
    return (an[0, 0] * v0[0] + an[0, 1] * v0[1], an[1, 0] * v0[0] + an[1, 1] * v0[1])


def corner_probs_o(n: int, j: int) -> tuple[Fraction, Fraction]:
    """``(F_j(n,o), G_j(n,o))`` for ``j in {1, 2}``; closed form and recursion must agree."""
    if j not in (1, 2):
        raise ValueError("o has graph degree 2; only j = 1, 2 are defined")
    if n < 0:
        raise ValueError("stage must be non-negative")
    closed = (F_O[j](n), G_O[j](n))
    rec = _o_recursion(n, j)
    if closed != rec:
        raise ClosedFormMismatch(f"stage {n}, j={j}: closed {closed} != recursion {rec}")
    return closed


@lru_cache(maxsize=None)
def _boundary_recursion(n: int) -> BoundaryProbs:
    if n == 0:
        return BoundaryProbs(ONE, ONE, Fr(0), Fr(0), Fr(0), Fr(0))
    p = _boundary_recursion(n - 1)
    f1, g1 = _o_recursion(n - 1, 1)
    f2, g2 = _o_recursion(n - 1, 2)

    def step(gb, ho, fo, go):
        return (
            Fr(2, 5) * gb + Fr(3, 10) * ho + Fr(1, 10) * fo + Fr(1, 5) * go,
            Fr(6, 25) * gb + Fr(6, 25) * ho + Fr(6, 25) * fo + Fr(7, 25) * go,
        )

    g0b, h0 = step(p.G0_b, p.H0_o, 0, 0)
    g1b, h1 = step(p.G1_b, p.H1_o, f1, g1)
    g2b, h2 = step(p.G2_b, p.H2_o, f2, g2)
    return BoundaryProbs(g0b, h0, g1b, g2b, h1, h2)


def boundary_probs(n: int) -> BoundaryProbs:
    if n < 0:
        raise ValueError("stage must be non-negative")
    closed = BOUNDARY.at(n)
    rec = _boundary_recursion(n)
    if closed != rec:
        raise ClosedFormMismatch(f"stage {n}: boundary closed forms {closed} != recursion {rec}")
    return closed


def boundary_entries(F1, F2, G1, G2, G0b, H0, G1b, G2b, H1, H2) -> dict[int, tuple]:
    """Row-``a`` data ``(F, G(a), G(b), H)`` of ``B_j(n+1, n)`` for ``j = 1..4``.

    Arguments are the stage-``n`` quantities at ``o`` and ``b_n``.  Works
    for Fractions and for GeomPolys alike.
    """
    third, fifth, tenth, t25 = Fr(1, 3), Fr(1, 5), Fr(1, 10), Fr(1, 25)
    S1 = G1 + G1b
    S2 = G2 + G2b
    F = {
        1: F1 * G0b * third,
        2: (F2 * G0b + F1 * F1 + F1 * S1) * third,
        3: (F2 * S1 + 2 * F1 * F2 + F1 * S2) * third,
        4: (F2 * S2 + F2 * F2) * third,
    }
    Ga = {
        1: F1 * G0b * fifth,
        2: 3 * F1 * F1 * tenth + F1 * (2 * G1 + G1b) * fifth + F2 * G0b * fifth + G1 * G1 * tenth,
        3: 3 * F2 * F1 * fifth
        + F2 * (2 * G1 + G1b) * fifth
        + G2 * G1 * fifth
        + F1 * (2 * G2 + G2b) * fifth,
        4: 3 * F2 * F2 * tenth + F2 * (2 * G2 + G2b) * fifth + G2 * G2 * tenth,
    }
    Gb = {
        1: 3 * F1 * H0 * tenth + (F1 + G1) * G0b * fifth,
        2: 3 * (F2 * H0 + F1 * H1) * tenth
        + G1 * G1 * tenth
        + F1 * S1 * fifth
        + F2 * G0b * fifth
        + (G0b * G2 + G1 * G1b) * fifth,
        3: 3 * (F2 * H1 + F1 * H2) * tenth
        + ((G1b + G1) * G2 + G1 * G2b) * fifth
        + F1 * S2 * fifth
        + F2 * S1 * fifth,
        4: 3 * F2 * H2 * tenth + (F2 * S2 + G2 * G2b) * fifth + G2 * G2 * tenth,
    }
    H = {
        1: 3 * F1 * (2 * H0 + G0b) * t25 + 6 * G1 * H0 * t25 + 4 * G1 * G0b * t25,
        2: 6 * (F2 * H0 + F1 * H1) * t25
        + 3 * F1 * S1 * t25
        + 3 * F2 * G0b * t25
        + 4 * (G2 * G0b + G1 * G1b) * t25
        + 3 * G1 * G1 * t25
        + 6 * (H0 * G2 + H1 * G1) * t25,
        3: 6 * (F2 * H1 + F1 * H2) * t25
        + 3 * F2 * S1 * t25
        + 3 * F1 * S2 * t25
        + 6 * (G2 * H1 + G1 * H2) * t25
        + (4 * G1b + 6 * G1) * G2 * t25
        + 4 * G1 * G2b * t25,
        4: 6 * F2 * H2 * t25
        + 3 * F2 * S2 * t25
        + 6 * G2 * H2 * t25
        + 4 * G2 * G2b * t25
        + 3 * G2 * G2 * t25,
    }
    return {j: (F[j], Ga[j], Gb[j], H[j]) for j in (1, 2, 3, 4)}


def expand_rows(f, ga, gb, h) -> list[list]:
    """Fill rows a, b, c from row-a data using the stage-boundary symmetries.

    ``F`` and ``H`` agree on all three letters and ``G(c) = G(b)``.  The
    tilde partners are ``(b, a, c)`` and the hat partners ``(c, b, a)``.
    """
    g = {"a": ga, "b": gb, "c": gb}
    tilde = {"a": "b", "b": "a", "c": "c"}
    hat = {"a": "c", "b": "b", "c": "a"}
    return [[f, g[x], g[tilde[x]], g[hat[x]], h] for x in "abc"]


@dataclass(frozen=True)
class BMatrix:
    """``B_j(stage, tag)``: rows a, b, c; columns F, G, G~, G^, H."""

    stage: int
    tag: str
    j: int
    matrix: RatMatrix

    def row(self, letter: str) -> tuple[Fraction, ...]:
        return self.matrix.row("abc".index(letter))

    def restricted(self) -> RatMatrix:
        """The 3x3 ``(F, G, G~)`` block."""
        return RatMatrix([r[:3] for r in self.matrix.tolist()])


@lru_cache(maxsize=None)
def _b_init_all(m: int) -> dict[int, BMatrix]:
    n = m - 1
    f1, g1 = corner_probs_o(n, 1)
    f2, g2 = corner_probs_o(n, 2)
    lp = boundary_probs(n)
    ent = boundary_entries(f1, f2, g1, g2, lp.G0_b, lp.H0_o, lp.G1_b, lp.G2_b, lp.H1_o, lp.H2_o)
    return {
        j: BMatrix(m, f"({m},{m - 1})", j, RatMatrix(expand_rows(*ent[j]))) for j in (1, 2, 3, 4)
    }


def b_init(m: int, j: int) -> BMatrix:
    """``B_j(m, m-1)``: the 3x5 boundary matrix of ``a_{m-1}, b_{m-1}, c_{m-1}`` in SG(m)."""
    if m < 1:
        raise ValueError("b_init needs m >= 1")
    if j not in (1, 2, 3, 4):
        raise ValueError("degree j must be 1..4")
    return _b_init_all(m)[j]


@lru_cache(maxsize=None)
def boundary_polys() -> dict[int, tuple[GeomPoly, GeomPoly, GeomPoly, GeomPoly]]:
    """Row-a entries of ``B_j(n+1, n)`` as GeomPolys in ``n``."""
    L = BOUNDARY
    return boundary_entries(
        F_O[1], F_O[2], G_O[1], G_O[2], L.G0_b, L.H0_o, L.G1_b, L.G2_b, L.H1_o, L.H2_o
    )


CORNER_LIMITS = {1: Fr(0), 2: Fr(121, 196), 3: Fr(33, 98), 4: Fr(9, 196)}

# Reference corner closed forms, read as
#   F_j(n+m+1, x_n) = P(n) + (1/15)^m * Q(n),
# where P and Q are sums over the listed bases raised to n.
_CORNER_FORMS = {
    ("a", 1): (
        {U35: Fr(1815, 5488), W25: Fr(-99, 1372), V375: Fr(55, 16464)},
        {U35: Fr(-121, 5488), W25: Fr(-22, 1029), V375: Fr(185, 49392)},
    ),
    ("a", 2): (
        {ONE: Fr(121, 196), U35: Fr(-825, 5488), W25: Fr(171, 1372), V375: Fr(-55, 5488),
         T15: Fr(-121, 1176), S225: Fr(1, 294)},
        {U35: Fr(55, 5488), W25: Fr(38, 1029), V375: Fr(-185, 16464), T15: Fr(-143, 3528),
         S225: Fr(11, 2646)},
    ),
    ("a", 3): (
        {ONE: Fr(33, 98), U35: Fr(-855, 5488), W25: Fr(-45, 1372), V375: Fr(55, 5488),
         T15: Fr(11, 147), S225: Fr(-1, 147)},
        {U35: Fr(57, 5488), W25: Fr(-10, 1029), V375: Fr(185, 16464), T15: Fr(13, 441),
         S225: Fr(-11, 1323)},
    ),
    ("a", 4): (
        {ONE: Fr(9, 196), U35: Fr(-135, 5488), W25: Fr(-27, 1372), V375: Fr(-55, 16464),
         T15: Fr(11, 392), S225: Fr(1, 294)},
        {U35: Fr(9, 5488), W25: Fr(-2, 343), V375: Fr(-185, 49392), T15: Fr(13, 1176),
         S225: Fr(11, 2646)},
    ),
    ("c", 1): (
        {U35: Fr(1089, 2744), W25: Fr(-22, 343), V375: Fr(5, 8232)},
        {U35: Fr(-121, 1372), W25: Fr(-121, 4116), V375: Fr(20, 3087)},
    ),
    ("c", 2): (
        {ONE: Fr(121, 196), U35: Fr(-495, 2744), W25: Fr(38, 343), V375: Fr(-5, 2744),
         T15: Fr(-55, 588)},
        {U35: Fr(55, 1372), W25: Fr(209, 4116), V375: Fr(-20, 1029), T15: Fr(-22, 441),
         S225: Fr(10, 1323)},
    ),
    ("c", 3): (
        {ONE: Fr(33, 98), U35: Fr(-513, 2744), W25: Fr(-10, 343), V375: Fr(5, 2744),
         T15: Fr(10, 147)},
        {U35: Fr(57, 1372), W25: Fr(-55, 4116), V375: Fr(20, 1029), T15: Fr(16, 441),
         S225: Fr(-20, 1323)},
    ),
    ("c", 4): (
        {ONE: Fr(9, 196), U35: Fr(-81, 2744), W25: Fr(-6, 343), V375: Fr(-5, 8232),
         T15: Fr(5, 196)},
        {U35: Fr(9, 1372), W25: Fr(-11, 1372), V375: Fr(-20, 3087), T15: Fr(2, 147),
         S225: Fr(10, 1323)},
    ),
}

CORNER_FORMS = {key: (GeomPoly(p), GeomPoly(q)) for key, (p, q) in _CORNER_FORMS.items()}


def corner_closed_form(n: int, m: int, j: int, letter: str) -> Fraction:
    key = ("a" if letter == "b" else letter, j)
    p, q = CORNER_FORMS[key]
    return p(n) + T15**m * q(n)


def corner_forms_derived(j: int, letter: str) -> tuple[GeomPoly, GeomPoly]:
    """``(P, Q)`` obtained by diagonalising ``L'`` symbolically.

    The first column of ``B'(n+1, n) L'^m`` is
    ``[9/14 + 5/14 t^m] F + 5/28 [1 - t^m] (G(x) + G(x~))`` with ``t = 1/15``.
    """
    f, ga, gb, _h = boundary_polys()[j]
    gsum = ga + gb if letter in "ab" else 2 * gb
    p = f * Fr(9, 14) + gsum * Fr(5, 28)
    q = f * Fr(5, 14) - gsum * Fr(5, 28)
    return p, q


def corner_dist(n: int, m: int, j: int) -> dict[str, Fraction]:
    """``F_j(n+m+1, x_n)`` for ``x in {a, b, c}`` by ``L'`` propagation.

    The propagated value is authoritative; the closed form is checked against it.
    """
    if n < 0 or m < 0:
        raise ValueError("n and m must be non-negative")
    bp = b_init(n + 1, j).restricted()
    col = (bp @ mat_pow(L_PRIME, m)).col(0)
    out = dict(zip("abc", col))
    for x in "abc":
        closed = corner_closed_form(n, m, j, x)
        if closed != out[x]:
            raise ClosedFormMismatch(
                f"F_{j}({n + m + 1}, {x}_{n}): propagation {out[x]} != closed form {closed}"
            )
    return out
