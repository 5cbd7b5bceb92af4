"""The Sierpinski gasket SG(n) as an explicit graph, plus vertex addresses.

Coordinates are integer pairs ``(p, q)`` in the 60-degree lattice basis, i.e.
the Euclidean point ``p*(1, 0) + q*(1/2, sqrt(3)/2)``.  SG(n) spans the
triangle ``p, q >= 0, p + q <= 2**n`` with ``o = (0, 0)``, ``a_n = (2**n, 0)``
and ``b_n = (0, 2**n)``.  Reflection through the axis ``p = q`` (through ``o``
and ``c_0``) is the swap ``(p, q) -> (q, p)``.

Address text grammar::

    o
    a[m] | b[m] | c[m]                      stage-boundary vertices
    [~]x[g1,1,g3,...,gs]  with x in {a,b,c}  interior words, g_k in {0,1,2}
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterator

from .config import check_stage

Coord = tuple[int, int]

LETTERS = ("a", "b", "c")
_LETTER_ORDER = {"o": 0, "a": 1, "b": 2, "c": 3}


class AddressError(ValueError):
    pass


@dataclass(frozen=True, order=False)
class VertexAddress:
    """Canonical vertex name.

    ``letter`` is ``"o"`` or one of ``a, b, c``.  ``digits`` is empty for
    ``o``, ``(m,)`` for the stage-boundary vertex ``x_m`` and
    ``(g1, 1, g3, ..., gs)`` for an interior word.  ``tilde`` is only ever set
    on words.
    """

    letter: str
    digits: tuple[int, ...] = ()
    tilde: bool = False

    def __str__(self) -> str:
        if self.letter == "o":
            return "o"
        body = f"{self.letter}[{','.join(str(d) for d in self.digits)}]"
        return "~" + body if self.tilde else body

    @property
    def is_origin(self) -> bool:
        return self.letter == "o"

    @property
    def is_word(self) -> bool:
        return len(self.digits) >= 2

    @property
    def is_single(self) -> bool:
        return len(self.digits) == 1

    def kind(self, stage: int) -> str:
        """One of ``origin``, ``corner``, ``single``, ``word`` inside SG(stage)."""
        if self.is_origin:
            return "origin"
        if self.is_single:
            return "corner" if self.digits[0] == stage else "single"
        return "word"

    def sort_key(self) -> tuple:
        return (len(self.digits), self.digits, _LETTER_ORDER[self.letter], self.tilde)

    def __lt__(self, other: "VertexAddress") -> bool:
        return self.sort_key() < other.sort_key()


ORIGIN = VertexAddress("o")

_SINGLE_TILDE = {"a": "b", "b": "a", "c": "c"}

_ADDR_RE = re.compile(r"^\s*(~?)\s*([abc])\s*\[\s*([0-9]+(?:\s*,\s*[0-9]+)*)\s*\]\s*$")


def _validate(addr: VertexAddress, stage: int | None) -> None:
    if addr.is_origin:
        return
    d = addr.digits
    if addr.is_single:
        m = d[0]
        if stage is not None:
            top = stage - 1 if addr.letter == "c" else stage
            if m > top:
                raise AddressError(f"{addr}: index {m} out of range for SG({stage})")
        return
    g1 = d[0]
    if g1 < 1:
        raise AddressError(f"{addr}: leading index must be at least 1")
    if d[1] != 1:
        raise AddressError(f"{addr}: second index must be 1")
    bad = [g for g in d[2:] if g not in (0, 1, 2)]
    if bad:
        raise AddressError(f"{addr}: sub-triangle digits must be 0, 1 or 2")
    if len(d) > g1 + 1:
        raise AddressError(f"{addr}: depth {len(d)} exceeds {g1 + 1} allowed for leading index {g1}")
    if stage is not None and g1 > stage - 1:
        raise AddressError(f"{addr}: leading index {g1} needs stage >= {g1 + 1}, got SG({stage})")


def make_address(letter: str, digits=(), tilde: bool = False, stage: int | None = None) -> VertexAddress:
    """Build a canonical address, applying tilde rewrites on non-words."""
    digits = tuple(int(x) for x in digits)
    if letter == "o":
        if digits:
            raise AddressError("o takes no index")
        return ORIGIN
    if letter not in LETTERS:
        raise AddressError(f"unknown letter {letter!r}")
    if not digits:
        raise AddressError(f"{letter} needs an index")
    if len(digits) == 1 and tilde:
        letter, tilde = _SINGLE_TILDE[letter], False
    addr = VertexAddress(letter, digits, tilde)
    _validate(addr, stage)
    return addr


def parse_address(text: str, stage: int | None = None) -> VertexAddress:
    s = text.strip()
    if s in ("o", "~o"):
        return ORIGIN
    m = _ADDR_RE.match(s)
    if not m:
        raise AddressError(f"cannot parse address {text!r}")
    tilde, letter, body = m.groups()
    digits = tuple(int(x) for x in body.split(","))
    return make_address(letter, digits, bool(tilde), stage)


def tilde(addr: VertexAddress) -> VertexAddress:
    """Mirror image through the axis ``p = q``; an involution."""
    if addr.is_origin:
        return addr
    if addr.is_single:
        return VertexAddress(_SINGLE_TILDE[addr.letter], addr.digits)
    return VertexAddress(addr.letter, addr.digits, not addr.tilde)


def _mid(u: Coord, v: Coord) -> Coord:
    return ((u[0] + v[0]) // 2, (u[1] + v[1]) // 2)


def resolve_address(addr: VertexAddress, n: int) -> Coord:
    _validate(addr, n)
    if addr.is_origin:
        return (0, 0)
    if addr.is_single:
        k = 1 << addr.digits[0]
        return {"a": (k, 0), "b": (0, k), "c": (k, k)}[addr.letter]
    g1 = addr.digits[0]
    k = 1 << g1
    p1, p2, apex = (k, 0), (2 * k, 0), (k, k)
    for g in addr.digits[2:]:
        a_, b_, c_ = _mid(p1, p2), _mid(p1, apex), _mid(p2, apex)
        p1, p2, apex = ((p1, a_, b_), (a_, p2, c_), (b_, c_, apex))[g]
    pt = {"a": _mid(p1, p2), "b": _mid(p1, apex), "c": _mid(p2, apex)}[addr.letter]
    return (pt[1], pt[0]) if addr.tilde else pt


def _words(g1: int) -> Iterator[tuple[int, ...]]:
    def rec(prefix: tuple[int, ...], room: int):
        yield prefix
        if room:
            for g in (0, 1, 2):
                yield from rec(prefix + (g,), room - 1)

    yield from rec((g1, 1), g1 - 1)


def enumerate_addresses(n: int) -> list[VertexAddress]:
    """All canonical addresses of SG(n), sorted."""
    out = [ORIGIN, VertexAddress("a", (n,)), VertexAddress("b", (n,))]
    for m in range(n):
        out.extend(VertexAddress(x, (m,)) for x in LETTERS)
    for g1 in range(1, n):
        for digits in _words(g1):
            for x in LETTERS:
                out.append(VertexAddress(x, digits))
                out.append(VertexAddress(x, digits, True))
    out.sort()
    return out


def vertex_count(n: int) -> int:
    return 3 * (3**n + 1) // 2


def edge_count(n: int) -> int:
    return 3 ** (n + 1)


@dataclass(frozen=True)
class GasketGraph:
    stage: int
    vertices: tuple[Coord, ...]
    edges: tuple[tuple[int, int], ...]
    index: dict[Coord, int] = field(compare=False, repr=False)

    @property
    def corners(self) -> tuple[Coord, Coord, Coord]:
        k = 1 << self.stage
        return ((0, 0), (k, 0), (0, k))

    @cached_property
    def neighbors(self) -> tuple[tuple[int, ...], ...]:
        adj: list[list[int]] = [[] for _ in self.vertices]
        for i, j in self.edges:
            adj[i].append(j)
            adj[j].append(i)
        return tuple(tuple(sorted(a)) for a in adj)

    def degree(self, v: Coord) -> int:
        return len(self.neighbors[self.index[v]])

    def to_json(self) -> dict:
        return {
            "stage": self.stage,
            "vertices": [{"id": i, "p": p, "q": q} for i, (p, q) in enumerate(self.vertices)],
            "edges": [[i, j] for i, j in self.edges],
        }


def build_graph(n: int) -> GasketGraph:
    check_stage(n)
    verts: set[Coord] = {(0, 0), (1, 0), (0, 1)}
    edges: set[tuple[Coord, Coord]] = {((0, 0), (1, 0)), ((0, 0), (0, 1)), ((0, 1), (1, 0))}
    for k in range(n):
        s = 1 << k
        nv: set[Coord] = set()
        ne: set[tuple[Coord, Coord]] = set()
        for dp, dq in ((0, 0), (s, 0), (0, s)):
            nv.update((p + dp, q + dq) for p, q in verts)
            for u, v in edges:
                a = (u[0] + dp, u[1] + dq)
                b = (v[0] + dp, v[1] + dq)
                ne.add((a, b) if a < b else (b, a))
        verts, edges = nv, ne
    order = sorted(verts, key=lambda c: (c[1], c[0]))
    index = {c: i for i, c in enumerate(order)}
    eids = sorted(tuple(sorted((index[u], index[v]))) for u, v in edges)
    return GasketGraph(n, tuple(order), tuple(eids), index)


def laplacian(g: GasketGraph, edge_weight_at: tuple[Coord, int] | None = None) -> list[list[int]]:
    """Combinatorial Laplacian ``D - A``.

    With ``edge_weight_at=(x, y)`` every edge touching ``x`` carries weight
    ``y``; all other edges weigh 1.
    """
    hub = None
    y = 1
    if edge_weight_at is not None:
        x, y = edge_weight_at
        if x not in g.index:
            raise KeyError(f"{x} is not a vertex of SG({g.stage})")
        if int(y) != y or y <= 0:
            raise ValueError("edge weight must be a positive integer")
        hub = g.index[x]
    size = len(g.vertices)
    lap = [[0] * size for _ in range(size)]
    for i, j in g.edges:
        w = y if hub in (i, j) else 1
        lap[i][i] += w
        lap[j][j] += w
        lap[i][j] -= w
        lap[j][i] -= w
    return lap
