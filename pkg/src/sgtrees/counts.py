"""Spanning-tree and spanning-forest counts f(n), g(n), h(n) on SG(n).

f counts spanning trees; g counts two-tree spanning forests with ``b_n`` in
one tree and ``{o, a_n}`` in the other; h counts three-tree forests that
separate the three corners.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .config import check_stage


@dataclass(frozen=True)
class FghTriple:
    f: int
    g: int
    h: int

    def identity_holds(self) -> bool:
        return 3 * self.g * self.g == self.f * self.h


@lru_cache(maxsize=None)
def _fgh(n: int) -> FghTriple:
    if n == 0:
        return FghTriple(3, 1, 1)
    prev = _fgh(n - 1)
    f, g, h = prev.f, prev.g, prev.h
    nxt = FghTriple(6 * f * f * g, 10 * f * g * g, 50 * g**3)
    if not nxt.identity_holds():
        raise AssertionError(f"3g^2 = fh fails at stage {n}")
    # the unreduced recursions must agree with the reduced ones
    assert nxt.g == f * f * h + 7 * f * g * g
    assert nxt.h == 12 * f * g * h + 14 * g**3
    return nxt


def fgh(n: int) -> FghTriple:
    check_stage(n)
    return _fgh(n)


def f_factored(n: int) -> tuple[int, int, int]:
    """Exponents ``(alpha, beta, gamma)`` with ``f(n) = 2**alpha 3**beta 5**gamma``."""
    if n < 0:
        raise ValueError("stage must be non-negative")
    p = 3**n
    alpha, r1 = divmod(p - 1, 2)
    beta, r2 = divmod(3 * p + 2 * n + 1, 4)
    gamma, r3 = divmod(p - 2 * n - 1, 4)
    assert r1 == r2 == r3 == 0
    return alpha, beta, gamma
