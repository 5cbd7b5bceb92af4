"""Monte Carlo oracle: uniform spanning trees by Wilson's loop-erased walks.

Trials are cut into fixed-size chunks, and chunk ``k`` draws from the
``k``-th child of ``SeedSequence(seed)``.  All tallies are integers, so the
merged result is the same for any number of workers.
"""

from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from ..gasket import Coord, build_graph

PRNG_NAME = "numpy.random.Philox"
CHUNK = 5000
_BLOCK = 1 << 16


@dataclass
class _Tally:
    trials: int = 0
    # per vertex, number of trees giving it degree 1..4
    counts: list[list[int]] = field(default_factory=list)
    # per j, sum over trees of (#vertices of degree j) and of its square
    level_sum: list[int] = field(default_factory=lambda: [0] * 4)
    level_sq: list[int] = field(default_factory=lambda: [0] * 4)

    def merge(self, other: "_Tally") -> None:
        if not self.counts:
            self.counts = [[0] * 4 for _ in other.counts]
        self.trials += other.trials
        for mine, theirs in zip(self.counts, other.counts):
            for i in range(4):
                mine[i] += theirs[i]
        for i in range(4):
            self.level_sum[i] += other.level_sum[i]
            self.level_sq[i] += other.level_sq[i]


def _chunk(args) -> _Tally:
    stage, trials, seed_seq = args
    g = build_graph(stage)
    nv = len(g.vertices)
    nbrs = [list(g.neighbors[v]) for v in range(nv)]
    rng = np.random.Generator(np.random.Philox(seed_seq))
    # 2 and 4 both divide 2**32, so ``r % deg`` is unbiased
    buf = rng.integers(0, 1 << 32, size=_BLOCK, dtype=np.uint64).tolist()
    pos = 0
    counts = [[0] * 4 for _ in range(nv)]
    level_sum = [0] * 4
    level_sq = [0] * 4
    edges_expected = 2 * (nv - 1)

    for _ in range(trials):
        in_tree = [False] * nv
        nxt = [-1] * nv
        in_tree[0] = True
        for start in range(1, nv):
            u = start
            while not in_tree[u]:
                if pos == _BLOCK:
                    buf = rng.integers(0, 1 << 32, size=_BLOCK, dtype=np.uint64).tolist()
                    pos = 0
                nb = nbrs[u]
                nxt[u] = nb[buf[pos] % len(nb)]
                pos += 1
                u = nxt[u]
            u = start
            while not in_tree[u]:
                in_tree[u] = True
                u = nxt[u]
        deg = [0] * nv
        for u in range(1, nv):
            deg[u] += 1
            deg[nxt[u]] += 1
        if sum(deg) != edges_expected:
            raise AssertionError("sampled tree breaks the handshake identity")
        level = [0] * 4
        for u in range(nv):
            d = deg[u] - 1
            counts[u][d] += 1
            level[d] += 1
        for i in range(4):
            level_sum[i] += level[i]
            level_sq[i] += level[i] * level[i]
    return _Tally(trials, counts, level_sum, level_sq)


@dataclass
class SampleStats:
    n: int
    trials: int
    seed: int
    prng: str
    vertices: list[Coord]
    counts: list[list[int]]
    level_sum: list[int]
    level_sq: list[int]

    def frequencies(self) -> dict[Coord, tuple[float, ...]]:
        return {v: tuple(c / self.trials for c in row) for v, row in zip(self.vertices, self.counts)}

    def stderr(self) -> dict[Coord, tuple[float, ...]]:
        t = self.trials
        out = {}
        for v, row in zip(self.vertices, self.counts):
            out[v] = tuple(math.sqrt(max(c / t * (1 - c / t), 0.0) / t) for c in row)
        return out

    def phi_hat(self) -> tuple[tuple[float, float], ...]:
        """Average degree distribution over vertices, with the standard error of each mean."""
        t, nv = self.trials, len(self.vertices)
        out = []
        for s, sq in zip(self.level_sum, self.level_sq):
            mean = s / t
            var = (sq / t - mean * mean) * t / (t - 1) if t > 1 else 0.0
            out.append((mean / nv, math.sqrt(max(var, 0.0) / t) / nv))
        return tuple(out)

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "engine": "wilson",
            "trials": self.trials,
            "seed": self.seed,
            "prng": self.prng,
            "phi_hat": [{"value": m, "stderr": e} for m, e in self.phi_hat()],
            "profiles": [
                {"p": v[0], "q": v[1], "counts": row, "total": self.trials}
                for v, row in sorted(zip(self.vertices, self.counts), key=lambda vr: (vr[0][1], vr[0][0]))
            ],
        }


def wilson_sample(n: int, trials: int, seed: int, workers: int = 1) -> SampleStats:
    if trials < 1:
        raise ValueError("trials must be at least 1")
    if not 0 <= seed < 1 << 64:
        raise ValueError("seed must be an unsigned 64-bit integer")
    g = build_graph(n)
    sizes = [CHUNK] * (trials // CHUNK)
    if trials % CHUNK:
        sizes.append(trials % CHUNK)
    seeds = np.random.SeedSequence(seed).spawn(len(sizes))
    tasks = [(n, k, s) for k, s in zip(sizes, seeds)]
    total = _Tally()
    if workers > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            for part in pool.map(_chunk, tasks):
                total.merge(part)
    else:
        for t in tasks:
            total.merge(_chunk(t))
    return SampleStats(n, trials, seed, PRNG_NAME, list(g.vertices), total.counts, total.level_sum, total.level_sq)
