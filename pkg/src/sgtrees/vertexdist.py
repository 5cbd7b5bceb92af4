"""F_j(n, x) at every vertex of SG(n).

A vertex address is compiled into a word of 5x5 transfer matrices that acts
on a stage-boundary matrix ``B_j(k, k-1)``.  Descending into sub-triangle
``g`` permutes the letters and the remaining digits:

====  ================  =================
 g     letters           later digits
====  ================  =================
 0     b <-> c           1 <-> 0
 1     identity          identity
 2     a <-> b           1 <-> 2
====  ================  =================

and contributes the factor ``E_g @ R``.  The tilde image of a vertex has the
same distribution, so tildes never reach the matrices.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .config import DEFAULT_TABLE_STAGE, check_stage
from .cornerdist import L_PRIME, b_init, corner_dist, corner_probs_o
from .gasket import AddressError, VertexAddress, enumerate_addresses
from .ratmat import RatMatrix

Fr = Fraction

R = RatMatrix(
    [
        [Fr(2, 3), Fr(3, 5), Fr(1, 10), Fr(3, 5), Fr(6, 25)],
        [Fr(1, 6), Fr(3, 10), Fr(1, 10), Fr(1, 10), Fr(7, 50)],
        [0, 0, Fr(2, 5), 0, Fr(6, 25)],
        [Fr(1, 6), Fr(1, 10), Fr(1, 10), Fr(3, 10), Fr(7, 50)],
        [0, 0, Fr(3, 10), 0, Fr(6, 25)],
    ]
)
L = RatMatrix(
    [
        [Fr(2, 3), Fr(3, 5), Fr(3, 5), Fr(3, 5), Fr(6, 25)],
        [Fr(1, 6), Fr(3, 10), Fr(1, 10), 0, Fr(7, 50)],
        [Fr(1, 6), Fr(1, 10), Fr(3, 10), Fr(1, 10), Fr(7, 50)],
        [0, 0, 0, Fr(3, 10), Fr(6, 25)],
        [0, 0, 0, 0, Fr(6, 25)],
    ]
)


def _perm(cols: tuple[int, ...]) -> RatMatrix:
    """Permutation matrix whose column ``k`` is ``e_{cols[k]}``."""
    return RatMatrix([[int(cols[c] == r) for c in range(5)] for r in range(5)])


E0 = _perm((0, 1, 3, 2, 4))
E1 = RatMatrix.identity(5)
E2 = _perm((0, 2, 1, 3, 4))
E = E0 + E1 + E2


@dataclass(frozen=True)
class TransferMatrices:
    R: RatMatrix
    L: RatMatrix
    Lp: RatMatrix
    E0: RatMatrix
    E1: RatMatrix
    E2: RatMatrix
    E: RatMatrix

    def check(self) -> None:
        assert self.E1 == RatMatrix.identity(5)
        assert self.E == self.E0 + self.E1 + self.E2
        # L acts on (F, G, G~) like L' whenever the hat and H columns vanish
        for r in range(3):
            for c in range(3):
                assert self.L[r, c] == self.Lp[r, c]


def transfer_matrices() -> TransferMatrices:
    tm = TransferMatrices(R, L, L_PRIME, E0, E1, E2, E)
    tm.check()
    return tm


FACTORS = {"R": R, "L": L, "E0R": E0 @ R, "E1R": E1 @ R, "E2R": E2 @ R}

_LETTER_MAP = {
    0: {"a": "a", "b": "c", "c": "b"},
    1: {"a": "a", "b": "b", "c": "c"},
    2: {"a": "b", "b": "a", "c": "c"},
}
_DIGIT_MAP = {0: {0: 1, 1: 0, 2: 2}, 1: {0: 0, 1: 1, 2: 2}, 2: {0: 0, 1: 2, 2: 1}}


@dataclass(frozen=True)
class MatrixWord:
    """``row(letter, B_j(base_stage, base_stage-1)) @ factors[0] @ factors[1] @ ...``"""

    base_stage: int
    factors: tuple[str, ...]

    def matrices(self) -> list[RatMatrix]:
        return [FACTORS[f] for f in self.factors]


def compile_word(addr: VertexAddress, n: int) -> tuple[str, MatrixWord]:
    kind = addr.kind(n)
    if kind in ("origin", "corner"):
        raise AddressError(f"{addr} is a corner of SG({n}); use cornerdist.corner_probs_o")
    if kind == "single":
        m = addr.digits[0]
        check_stage(n)
        if m > n - 1:
            raise AddressError(f"{addr} is not a vertex of SG({n})")
        return addr.letter, MatrixWord(m + 1, ("L",) * (n - m - 1))
    g1 = addr.digits[0]
    if g1 > n - 1:
        raise AddressError(f"{addr} is not a vertex of SG({n})")
    letter = addr.letter
    rest = list(addr.digits[2:])
    outer: list[str] = []
    while rest:
        g = rest.pop(0)
        outer.append(f"E{g}R")
        letter = _LETTER_MAP[g][letter]
        rest = [_DIGIT_MAP[g][d] for d in rest]
    base = g1 - len(outer)
    factors = ("R",) + tuple(reversed(outer)) + ("L",) * (n - g1 - 1)
    return letter, MatrixWord(base, factors)


@lru_cache(maxsize=None)
def _product(base_stage: int, j: int, factors: tuple[str, ...]) -> RatMatrix:
    if not factors:
        return b_init(base_stage, j).matrix
    return _product(base_stage, j, factors[:-1]) @ FACTORS[factors[-1]]


def boundary_row(addr: VertexAddress, n: int, j: int) -> tuple[Fraction, ...]:
    """The full 5-entry row ``(F, G, G~, G^, H)`` of degree ``j`` at a non-corner vertex."""
    letter, word = compile_word(addr, n)
    return _product(word.base_stage, j, word.factors).row("abc".index(letter))


def vertex_distribution(n: int, addr: VertexAddress) -> tuple[Fraction, Fraction, Fraction, Fraction]:
    check_stage(n)
    kind = addr.kind(n)
    if kind in ("origin", "corner"):
        return (corner_probs_o(n, 1)[0], corner_probs_o(n, 2)[0], Fr(0), Fr(0))
    if kind == "single":
        m = addr.digits[0]
        if m > n - 1:
            raise AddressError(f"{addr} is not a vertex of SG({n})")
        return tuple(corner_dist(m, n - m - 1, j)[addr.letter] for j in (1, 2, 3, 4))
    dist = tuple(boundary_row(addr, n, j)[0] for j in (1, 2, 3, 4))
    if sum(dist) != 1:
        raise AssertionError(f"{addr} at stage {n}: probabilities sum to {sum(dist)}")
    return dist


def full_table(n: int, bound: int = DEFAULT_TABLE_STAGE) -> dict[VertexAddress, tuple[Fraction, ...]]:
    """Every canonical address of SG(n) mapped to ``(F_1, F_2, F_3, F_4)``, sorted by address."""
    check_stage(n, bound)
    return {addr: vertex_distribution(n, addr) for addr in enumerate_addresses(n)}
