"""Determinant oracles: Matrix-Tree counts and per-vertex degree profiles.

Weighting every edge at ``x`` by ``y`` turns the tree count into the
polynomial ``sum_j f_j(n, x) y**j``.  Its values at ``y = 1..5`` pin down
the coefficients, which are recovered by exact Lagrange interpolation.
"""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction
from functools import lru_cache

from ..gasket import Coord, GasketGraph, build_graph, laplacian
from ..ratmat import det_fraction_free
from .exhaustive import DegreeProfile

MAX_COUNT_STAGE = 6
MAX_FOREST_STAGE = 5
MAX_PROFILE_STAGE = 5

EVAL_POINTS = (1, 2, 3, 4, 5)


def _minor(mat: list[list[int]], rows: set[int], cols: set[int]) -> list[list[int]]:
    return [[x for c, x in enumerate(r) if c not in cols] for i, r in enumerate(mat) if i not in rows]


def _check(n: int, bound: int) -> None:
    if n < 0 or n > bound:
        raise ValueError(f"stage {n} outside 0..{bound} for this oracle")


@lru_cache(maxsize=None)
def mtt_count(n: int) -> int:
    _check(n, MAX_COUNT_STAGE)
    g = build_graph(n)
    lap = laplacian(g)
    return det_fraction_free(_minor(lap, {0}, {0}))


def mtt_forest_counts(n: int) -> tuple[int, int]:
    """``(g(n), h(n))`` from all-minors determinants.

    ``h``: delete the rows and columns of all three corners.
    ``g``: delete rows ``{a_n, b_n}`` and columns ``{o, b_n}``; the minor
    counts two-tree forests with ``b_n`` alone in one tree and ``a_n``, ``o``
    together in the other (up to sign).
    """
    _check(n, MAX_FOREST_STAGE)
    g = build_graph(n)
    lap = laplacian(g)
    o, a, b = (g.index[c] for c in g.corners)
    h_val = det_fraction_free(_minor(lap, {o, a, b}, {o, a, b}))
    g_val = abs(det_fraction_free(_minor(lap, {a, b}, {o, b})))
    return g_val, h_val


def interpolate_coefficients(xs, ys) -> list[Fraction]:
    """Monomial coefficients of the unique degree ``< len(xs)`` interpolant."""
    k = len(xs)
    coeffs = [Fraction(0)] * k
    for i, (xi, yi) in enumerate(zip(xs, ys)):
        basis = [Fraction(1)]
        denom = Fraction(1)
        for m, xm in enumerate(xs):
            if m == i:
                continue
            basis = [Fraction(0)] + basis
            for d in range(len(basis) - 1):
                basis[d] -= xm * basis[d + 1]
            denom *= xi - xm
        for d, c in enumerate(basis):
            coeffs[d] += yi * c / denom
    return coeffs


def _reduced_weighted(g: GasketGraph, x: Coord, y: int) -> list[list[int]]:
    lap = laplacian(g, (x, y))
    # keep the hub: delete a corner other than x
    root = next(g.index[c] for c in g.corners if c != x)
    return _minor(lap, {root}, {root})


def _profile(args) -> DegreeProfile:
    n, x = args
    g = build_graph(n)
    total = mtt_count(n) if n <= MAX_COUNT_STAGE else None
    values = []
    for y in EVAL_POINTS:
        if y == 1 and total is not None:
            values.append(total)
        else:
            values.append(det_fraction_free(_reduced_weighted(g, x, y)))
    coeffs = interpolate_coefficients(EVAL_POINTS, values)
    if any(c.denominator != 1 for c in coeffs):
        raise AssertionError(f"non-integral interpolation at {x}")
    ints = [int(c) for c in coeffs]
    if ints[0] != 0 or any(c < 0 for c in ints):
        raise AssertionError(f"bad degree polynomial at {x}: {ints}")
    return DegreeProfile(x, tuple(ints[1:5]), values[0])


def mtt_degree_profile(n: int, x: Coord) -> DegreeProfile:
    _check(n, MAX_PROFILE_STAGE)
    g = build_graph(n)
    if x not in g.index:
        raise KeyError(f"{x} is not a vertex of SG({n})")
    prof = _profile((n, x))
    if sum(prof.counts) != prof.total:
        raise AssertionError("degree counts do not add up to the tree count")
    return prof


def mtt_profiles(n: int, workers: int = 1) -> dict[Coord, DegreeProfile]:
    """Degree profiles of every vertex of SG(n)."""
    _check(n, MAX_PROFILE_STAGE)
    g = build_graph(n)
    mtt_count(n)
    tasks = [(n, v) for v in g.vertices]
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            profs = list(pool.map(_profile, tasks, chunksize=8))
    else:
        profs = [_profile(t) for t in tasks]
    return {p.vertex: p for p in profs}


def mtt_report(n: int, workers: int = 1) -> dict:
    f = mtt_count(n)
    g_val, h_val = mtt_forest_counts(n)
    profiles = mtt_profiles(n, workers)
    return {
        "n": n,
        "engine": "mtt",
        "f": f,
        "g": g_val,
        "h": h_val,
        "profiles": [
            {"p": v[0], "q": v[1], "counts": list(pr.counts), "total": pr.total}
            for v, pr in sorted(profiles.items(), key=lambda kv: (kv[0][1], kv[0][0]))
        ],
    }
