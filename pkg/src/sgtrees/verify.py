"""Verification suites shared by ``sg verify`` and the test-suite."""

from __future__ import annotations

import time
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable

from . import aggregate as agg
from .cornerdist import CORNER_LIMITS, corner_dist, corner_probs_o, boundary_probs
from .counts import f_factored, fgh
from .gasket import build_graph, enumerate_addresses, resolve_address, vertex_count
from .vertexdist import full_table, transfer_matrices


@dataclass
class Check:
    name: str
    passed: bool
    detail: str = ""
    seconds: float = 0.0

    def line(self) -> str:
        return f"{'PASS' if self.passed else 'FAIL'}  {self.name}  {self.detail}  ({self.seconds:.1f}s)"


def run_check(name: str, fn: Callable[[], tuple[bool, str]]) -> Check:
    t0 = time.perf_counter()
    try:
        ok, detail = fn()
    except Exception as exc:  # a raised mismatch is a failed check, not a crash
        ok, detail = False, f"{type(exc).__name__}: {exc}"
    return Check(name, ok, detail, time.perf_counter() - t0)


# -- individual checks --------------------------------------------------------


def check_counts(top: int = 5) -> tuple[bool, str]:
    from .oracle.mtt import mtt_count, mtt_forest_counts

    for n in range(top + 1):
        t = fgh(n)
        if not t.identity_holds():
            return False, f"3g^2 != fh at n={n}"
        a, b, c = f_factored(n)
        if t.f != 2**a * 3**b * 5**c:
            return False, f"factored form fails at n={n}"
    if (mtt_count(1), mtt_count(2)) != (54, 524880):
        return False, "Matrix-Tree determinant disagrees"
    if mtt_forest_counts(1) != (30, 50):
        return False, "all-minors forest counts disagree"
    return True, f"n <= {top}"


def check_corner_o(top: int = 12) -> tuple[bool, str]:
    for n in range(top + 1):
        # both raise on a closed-form/recursion mismatch
        corner_probs_o(n, 1)
        corner_probs_o(n, 2)
        boundary_probs(n)
        if Fraction(11, 14) - corner_probs_o(n, 1)[0] != Fraction(5, 42) * Fraction(1, 15) ** n:
            return False, f"gap to 11/14 wrong at n={n}"
    return True, f"n <= {top}"


def check_corners(top: int = 4) -> tuple[bool, str]:
    worst = Fraction(0)
    for n in range(top + 1):
        for m in range(top + 1):
            for j in (1, 2, 3, 4):
                d = corner_dist(n, m, j)  # raises if the closed form disagrees
                for x in "abc":
                    gap = abs(d[x] - CORNER_LIMITS[j])
                    env = Fraction(3, 5) ** min(n, m)
                    if gap > env:
                        return False, f"F_{j} at {x}: gap {float(gap):.3g} > envelope {float(env):.3g}"
                    worst = max(worst, gap / env)
    return True, f"n, m <= {top}; worst gap/envelope {float(worst):.3f}"


def check_structure(top: int = 6) -> tuple[bool, str]:
    for n in range(top + 1):
        g = build_graph(n)
        addrs = enumerate_addresses(n)
        coords = {resolve_address(a, n) for a in addrs}
        if len(addrs) != vertex_count(n) or coords != set(g.vertices):
            return False, f"address map is not a bijection at n={n}"
        table = full_table(n)
        for a, d in table.items():
            if sum(d) != 1:
                return False, f"{a} at n={n} sums to {sum(d)}"
            kind = a.kind(n)
            if kind in ("origin", "corner") and (d[2], d[3]) != (0, 0):
                return False, f"corner {a} has degree > 2"
    return True, f"n <= {top}"


def check_phi_table() -> tuple[bool, str]:
    for n, row in agg.PHI_TABLE.items():
        if agg.phi_vector(n) != row:
            return False, f"row n={n} differs"
    return True, "n = 0..5"


def check_phi_two_ways(top: int = 6) -> tuple[bool, str]:
    for n in range(top + 1):
        total = Fraction(0)
        for j in agg.DEGREES:
            res = agg.phi_sum(n, j)
            if res.Phi != agg.phi_sum_direct(n, j):
                return False, f"pipeline and direct sum differ at n={n}, j={j}"
            total += j * res.Phi
        if total != 2 * (vertex_count(n) - 1):
            return False, f"handshake fails at n={n}"
    return True, f"n <= {top}"


def check_limits() -> tuple[bool, str]:
    transfer_matrices()
    agg.limit_machinery().check()
    vals = [agg.phi_limit(j) for j in agg.DEGREES]
    if agg.theta() != 2:
        return False, "theta != 2"
    rel = [abs(agg.phi_sum(5, j).phi - agg.LIMITS[j]) / agg.LIMITS[j] for j in agg.DEGREES]
    worst = max(rel)
    # "about 1%": the largest relative deviation at n = 5 rounds to one percent
    if not Fraction(1, 200) <= worst < Fraction(3, 200):
        return False, f"largest n=5 deviation {float(worst):.2%}"
    return True, f"{', '.join(map(str, vals))}; n=5 deviation up to {float(worst):.2%}"


def check_lambda() -> tuple[bool, str]:
    if not agg.lambda_consistency():
        return False, "derived table is not self-consistent"
    ok, found = agg.lambda_report()
    text = "; ".join(str(d) for d in found)
    return ok, f"{len(found)} discrepancies: {text}"


def check_exhaustive(workers: int = 1) -> tuple[bool, str]:
    from .oracle.exhaustive import exhaustive_profiles

    rep = exhaustive_profiles(2, workers)
    table = full_table(2)
    bad = [a for a, d in table.items() if rep.profiles[resolve_address(a, 2)].probabilities() != d]
    if (rep.f, rep.g, rep.h) != (fgh(2).f, fgh(2).g, fgh(2).h):
        return False, "counts differ"
    return not bad, f"{len(table) - len(bad)}/{len(table)} vertices agree"


def check_mtt(stages=(3, 4), workers: int = 1) -> tuple[bool, str]:
    from .oracle.mtt import mtt_profiles

    notes = []
    for n in stages:
        prof = mtt_profiles(n, workers)
        table = full_table(n)
        bad = [a for a, d in table.items() if prof[resolve_address(a, n)].probabilities() != d]
        if bad:
            return False, f"n={n}: {len(bad)} vertices differ, first {bad[0]}"
        notes.append(f"n={n}: {len(table)} vertices")
    return True, "; ".join(notes)


def sampler_deviations(stats, exact) -> list[float]:
    """Distance of each empirical phi_j from the exact value, in standard errors."""
    out = []
    for (mean, se), e in zip(stats.phi_hat(), exact):
        out.append(abs(mean - float(e)) / se if se > 0 else (0.0 if mean == float(e) else float("inf")))
    return out


def check_sampler(seed: int = 7, trials: int = 100_000, workers: int = 1) -> tuple[bool, str]:
    from .oracle.wilson import wilson_sample

    stats = wilson_sample(3, trials, seed, workers)
    z = sampler_deviations(stats, agg.PHI_TABLE[3])
    ok = all(d <= 4 for d in z)
    return ok, f"{stats.prng}, seed {seed}, {trials} trials; |z| = " + ", ".join(f"{d:.2f}" for d in z)


# -- suites -------------------------------------------------------------------

LEVELS = ("closed-forms", "oracle", "sampler")


def suite(level: str, seed: int = 7, trials: int = 100_000, threads: int = 1) -> list[Check]:
    if level == "closed-forms":
        return [
            run_check("counts", check_counts),
            run_check("corner o and boundary closed forms", check_corner_o),
            run_check("corner distributions", check_corners),
            run_check("structure", check_structure),
            run_check("average table", check_phi_table),
            run_check("average two ways", check_phi_two_ways),
            run_check("limits", check_limits),
            run_check("lambda table", check_lambda),
        ]
    if level == "oracle":
        return [
            run_check("exhaustive n=2", lambda: check_exhaustive(threads)),
            run_check("determinant n=3,4", lambda: check_mtt((3, 4), threads)),
        ]
    if level == "sampler":
        return [run_check("wilson n=3", lambda: check_sampler(seed, trials, threads))]
    raise ValueError(f"unknown level {level!r}")
