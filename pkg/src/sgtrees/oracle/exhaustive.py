"""Brute-force enumeration of spanning trees and corner-separating forests.

Edge subsets are grown edge by edge with a rollback union-find; a branch is
cut as soon as it would close a cycle, join two components that must stay
apart, or can no longer reach the target size.
"""

from __future__ import annotations

import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

from ..gasket import Coord, GasketGraph, build_graph

MAX_EXHAUSTIVE_STAGE = 2

# root tags: which corner(s) a component contains
_TAGS = {
    "tree": (0, 0, 0),
    "g": (1, 1, 2),  # o and a may share a tree, b may not join them
    "h": (1, 2, 4),
}


def _forbidden(mode: str, tu: int, tv: int) -> bool:
    if mode == "tree" or not tu or not tv:
        return False
    if mode == "g":
        return (tu | tv) == 3
    return True


@dataclass
class EnsembleCounts:
    """Number of configurations and, per vertex, how many give it degree ``i``."""

    total: int = 0
    by_degree: list[list[int]] = field(default_factory=list)

    def merge(self, other: "EnsembleCounts") -> None:
        self.total += other.total
        for mine, theirs in zip(self.by_degree, other.by_degree):
            for i, c in enumerate(theirs):
                mine[i] += c


def _run(args) -> EnsembleCounts:
    stage, mode, prefix = args
    g = build_graph(stage)
    nv = len(g.vertices)
    edges = g.edges
    ne = len(edges)
    target = nv - {"tree": 1, "g": 2, "h": 3}[mode]
    parent = list(range(nv))
    size = [1] * nv
    tag = [0] * nv
    o, a, b = (g.index[c] for c in g.corners)
    tag[o], tag[a], tag[b] = _TAGS[mode]
    deg = [0] * nv
    counts = [[0] * 5 for _ in range(nv)]
    total = 0
    forbidden = _forbidden

    def find(x):
        while parent[x] != x:
            x = parent[x]
        return x

    def try_union(k):
        u, v = edges[k]
        ru, rv = find(u), find(v)
        if ru == rv or forbidden(mode, tag[ru], tag[rv]):
            return None
        if size[ru] < size[rv]:
            ru, rv = rv, ru
        parent[rv] = ru
        size[ru] += size[rv]
        old = tag[ru]
        tag[ru] |= tag[rv]
        deg[u] += 1
        deg[v] += 1
        return (ru, rv, old, u, v)

    def undo(rec):
        ru, rv, old, u, v = rec
        parent[rv] = rv
        size[ru] -= size[rv]
        tag[ru] = old
        deg[u] -= 1
        deg[v] -= 1

    def dfs(k, chosen):
        nonlocal total
        if chosen == target:
            total += 1
            for x in range(nv):
                counts[x][deg[x]] += 1
            return
        if ne - k < target - chosen:
            return
        rec = try_union(k)
        if rec is not None:
            dfs(k + 1, chosen + 1)
            undo(rec)
        dfs(k + 1, chosen)

    # replay the fixed leading decisions
    chosen = 0
    for k, take in enumerate(prefix):
        if take:
            if try_union(k) is None:
                return EnsembleCounts(0, counts)
            chosen += 1
    if chosen <= target:
        dfs(len(prefix), chosen)
    return EnsembleCounts(total, counts)


def count_ensemble(stage: int, mode: str, workers: int = 1, split_depth: int = 5) -> EnsembleCounts:
    """Enumerate one ensemble (``tree``, ``g`` or ``h``) on SG(stage)."""
    if stage > MAX_EXHAUSTIVE_STAGE:
        raise ValueError(f"exhaustive enumeration is limited to n <= {MAX_EXHAUSTIVE_STAGE}; use the mtt oracle")
    if mode not in _TAGS:
        raise ValueError(f"unknown ensemble {mode!r}")
    nv = len(build_graph(stage).vertices)
    depth = min(split_depth, len(build_graph(stage).edges)) if workers > 1 else 0
    prefixes = [tuple((p >> i) & 1 == 1 for i in range(depth)) for p in range(1 << depth)]
    tasks = [(stage, mode, p) for p in prefixes]
    result = EnsembleCounts(0, [[0] * 5 for _ in range(nv)])
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            for part in pool.map(_run, tasks):
                result.merge(part)
    else:
        for t in tasks:
            result.merge(_run(t))
    return result


@dataclass(frozen=True)
class DegreeProfile:
    vertex: Coord
    counts: tuple[int, int, int, int]
    total: int

    def probabilities(self):
        from fractions import Fraction

        return tuple(Fraction(c, self.total) for c in self.counts)


@dataclass
class ExhaustiveReport:
    n: int
    f: int
    g: int
    h: int
    profiles: dict[Coord, DegreeProfile]
    # degree counts i = 0..4 inside the forest ensembles
    g_profiles: dict[Coord, tuple[int, ...]]
    h_profiles: dict[Coord, tuple[int, ...]]

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "engine": "exhaustive",
            "f": self.f,
            "g": self.g,
            "h": self.h,
            "profiles": [
                {"p": v[0], "q": v[1], "counts": list(pr.counts), "total": pr.total}
                for v, pr in sorted(self.profiles.items(), key=lambda kv: (kv[0][1], kv[0][0]))
            ],
        }


def exhaustive_profiles(n: int, workers: int = 1) -> ExhaustiveReport:
    if n > MAX_EXHAUSTIVE_STAGE:
        raise ValueError(f"exhaustive enumeration is limited to n <= {MAX_EXHAUSTIVE_STAGE}; use the mtt oracle")
    g: GasketGraph = build_graph(n)
    trees = count_ensemble(n, "tree", workers)
    gf = count_ensemble(n, "g", workers)
    hf = count_ensemble(n, "h", workers)
    profiles = {}
    for v, c in zip(g.vertices, trees.by_degree):
        if c[0]:
            raise AssertionError("a spanning tree left a vertex isolated")
        profiles[v] = DegreeProfile(v, tuple(c[1:]), trees.total)
    return ExhaustiveReport(
        n,
        trees.total,
        gf.total,
        hf.total,
        profiles,
        {v: tuple(c) for v, c in zip(g.vertices, gf.by_degree)},
        {v: tuple(c) for v, c in zip(g.vertices, hf.by_degree)},
    )


if __name__ == "__main__":  # pragma: no cover
    import time

    t0 = time.perf_counter()
    rep = exhaustive_profiles(int(sys.argv[1]) if len(sys.argv) > 1 else 2)
    print(rep.f, rep.g, rep.h, f"{time.perf_counter() - t0:.1f}s")
