"""Exact rational matrices, fraction-free determinants, and geometric polynomials.

Every quantity in this package is an exact :class:`fractions.Fraction` or
Python ``int``.  Two small containers live here:

``RatMatrix``
    an immutable dense matrix of Fractions with the handful of operations the
    transfer-matrix machinery needs (product, power, inverse).

``GeomPoly``
    a finite sum ``sum(c_b * b**m)`` over positive rational bases ``b <= 1``.
    All closed forms in terms of the stage index are carried as GeomPolys, so
    products of closed forms stay closed forms and infinite tail sums can be
    evaluated exactly.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Mapping, Sequence

__all__ = [
    "Fraction",
    "RatMatrix",
    "SingularMatrixError",
    "DimensionError",
    "DivergentSeriesError",
    "mat_mul",
    "mat_pow",
    "mat_inv",
    "det_fraction_free",
    "GeomPoly",
    "geom_eval",
    "geom_add",
    "geom_mul",
    "geom_tail_sum",
    "to_fraction",
]


class DimensionError(ValueError):
    pass


class SingularMatrixError(ArithmeticError):
    def __init__(self, column: int):
        super().__init__(f"matrix is singular: no nonzero pivot in column {column}")
        self.column = column


class DivergentSeriesError(ArithmeticError):
    pass


def to_fraction(x) -> Fraction:
    """Coerce ints, Fractions and ``"p/q"`` strings; floats are rejected."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, bool):
        raise TypeError("bool is not a rational number")
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x)
    raise TypeError(f"refusing to convert {type(x).__name__} to an exact rational")


class RatMatrix:
    """Immutable dense matrix over the rationals."""

    __slots__ = ("rows", "cols", "_data")

    def __init__(self, entries: Iterable[Iterable]):
        data = tuple(tuple(to_fraction(x) for x in row) for row in entries)
        if not data:
            raise DimensionError("matrix needs at least one row")
        width = len(data[0])
        if width == 0 or any(len(r) != width for r in data):
            raise DimensionError("ragged or empty rows")
        self._data = data
        self.rows = len(data)
        self.cols = width

    @classmethod
    def _wrap(cls, data: tuple[tuple[Fraction, ...], ...]) -> "RatMatrix":
        m = object.__new__(cls)
        m._data = data
        m.rows = len(data)
        m.cols = len(data[0])
        return m

    @classmethod
    def identity(cls, size: int) -> "RatMatrix":
        one, zero = Fraction(1), Fraction(0)
        return cls._wrap(
            tuple(tuple(one if i == j else zero for j in range(size)) for i in range(size))
        )

    @classmethod
    def diag(cls, values: Sequence) -> "RatMatrix":
        vals = [to_fraction(v) for v in values]
        k = len(vals)
        return cls._wrap(
            tuple(tuple(vals[i] if i == j else Fraction(0) for j in range(k)) for i in range(k))
        )

    @classmethod
    def row_vector(cls, values: Sequence) -> "RatMatrix":
        return cls([values])

    @classmethod
    def column_vector(cls, values: Sequence) -> "RatMatrix":
        return cls([[v] for v in values])

    @property
    def shape(self) -> tuple[int, int]:
        return (self.rows, self.cols)

    def __getitem__(self, idx):
        i, j = idx
        return self._data[i][j]

    def row(self, i: int) -> tuple[Fraction, ...]:
        return self._data[i]

    def col(self, j: int) -> tuple[Fraction, ...]:
        return tuple(r[j] for r in self._data)

    def tolist(self) -> list[list[Fraction]]:
        return [list(r) for r in self._data]

    def transpose(self) -> "RatMatrix":
        return RatMatrix._wrap(tuple(zip(*self._data)))

    def __eq__(self, other) -> bool:
        if not isinstance(other, RatMatrix):
            return NotImplemented
        return self._data == other._data

    def __hash__(self) -> int:
        return hash(self._data)

    def __repr__(self) -> str:
        body = "; ".join(", ".join(str(x) for x in r) for r in self._data)
        return f"RatMatrix([{body}])"

    def __add__(self, other: "RatMatrix") -> "RatMatrix":
        if self.shape != other.shape:
            raise DimensionError(f"cannot add {self.shape} and {other.shape}")
        return RatMatrix._wrap(
            tuple(tuple(a + b for a, b in zip(r, s)) for r, s in zip(self._data, other._data))
        )

    def __sub__(self, other: "RatMatrix") -> "RatMatrix":
        return self + other.scale(-1)

    def __neg__(self) -> "RatMatrix":
        return self.scale(-1)

    def scale(self, c) -> "RatMatrix":
        c = to_fraction(c)
        return RatMatrix._wrap(tuple(tuple(c * x for x in r) for r in self._data))

    def __matmul__(self, other: "RatMatrix") -> "RatMatrix":
        return mat_mul(self, other)

    def __pow__(self, k: int) -> "RatMatrix":
        return mat_pow(self, k)

    def inverse(self) -> "RatMatrix":
        return mat_inv(self)


def mat_mul(a: RatMatrix, b: RatMatrix) -> RatMatrix:
    if a.cols != b.rows:
        raise DimensionError(f"cannot multiply {a.shape} by {b.shape}")
    bt = tuple(zip(*b._data))
    out = []
    for r in a._data:
        out.append(
            tuple(sum((x * y for x, y in zip(r, c) if x and y), Fraction(0)) for c in bt)
        )
    return RatMatrix._wrap(tuple(out))


def mat_pow(m: RatMatrix, k: int) -> RatMatrix:
    """``m**k`` by repeated squaring; ``k = 0`` gives the identity."""
    if m.rows != m.cols:
        raise DimensionError(f"power of non-square matrix {m.shape}")
    if k < 0:
        raise ValueError("negative exponent; invert explicitly")
    result = RatMatrix.identity(m.rows)
    base = m
    while k:
        if k & 1:
            result = mat_mul(result, base)
        k >>= 1
        if k:
            base = mat_mul(base, base)
    return result


def mat_inv(m: RatMatrix) -> RatMatrix:
    """Gauss-Jordan inverse over the rationals."""
    if m.rows != m.cols:
        raise DimensionError(f"inverse of non-square matrix {m.shape}")
    n = m.rows
    aug = [list(r) + [Fraction(int(i == j)) for j in range(n)] for i, r in enumerate(m._data)]
    for col in range(n):
        pivot = next((r for r in range(col, n) if aug[r][col] != 0), None)
        if pivot is None:
            raise SingularMatrixError(col)
        aug[col], aug[pivot] = aug[pivot], aug[col]
        p = aug[col][col]
        aug[col] = [x / p for x in aug[col]]
        for r in range(n):
            if r != col and aug[r][col] != 0:
                f = aug[r][col]
                aug[r] = [x - f * y for x, y in zip(aug[r], aug[col])]
    return RatMatrix._wrap(tuple(tuple(r[n:]) for r in aug))


def det_fraction_free(m: Sequence[Sequence[int]]) -> int:
    """Exact determinant of an integer matrix by Bareiss elimination.

    Every intermediate value is an integer (a minor of ``m``), so the
    divisions below are exact.
    """
    n = len(m)
    if any(len(r) != n for r in m):
        raise DimensionError("determinant of non-square matrix")
    if n == 0:
        return 1
    a = [[int(x) for x in row] for row in m]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if a[i][k] != 0), None)
            if swap is None:
                return 0
            a[k], a[swap] = a[swap], a[k]
            sign = -sign
        pk = a[k][k]
        rk = a[k]
        for i in range(k + 1, n):
            ri = a[i]
            f = ri[k]
            if f == 0:
                if pk != prev:
                    for j in range(k + 1, n):
                        if ri[j]:
                            ri[j] = ri[j] * pk // prev
            else:
                for j in range(k + 1, n):
                    ri[j] = (ri[j] * pk - f * rk[j]) // prev
            ri[k] = 0
        prev = pk
    return sign * a[n - 1][n - 1]


class GeomPoly:
    """Exact ``sum(coeff * base**m)`` over distinct bases in ``(0, 1]``.

    Zero coefficients are never stored, so two GeomPolys are equal iff they
    describe the same function of ``m``.
    """

    __slots__ = ("_terms",)

    def __init__(self, terms: Mapping | Iterable[tuple] = ()):
        acc: dict[Fraction, Fraction] = {}
        items = terms.items() if isinstance(terms, Mapping) else terms
        for base, coeff in items:
            b = to_fraction(base)
            if not (0 < b <= 1):
                raise ValueError(f"base {b} outside (0, 1]")
            acc[b] = acc.get(b, Fraction(0)) + to_fraction(coeff)
        self._terms = {b: c for b, c in acc.items() if c != 0}

    @classmethod
    def constant(cls, c) -> "GeomPoly":
        return cls({1: c})

    @classmethod
    def power(cls, base, coeff=1) -> "GeomPoly":
        return cls({base: coeff})

    @property
    def terms(self) -> dict[Fraction, Fraction]:
        return dict(self._terms)

    def coeff(self, base) -> Fraction:
        return self._terms.get(to_fraction(base), Fraction(0))

    def bases(self) -> list[Fraction]:
        return sorted(self._terms, reverse=True)

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __eq__(self, other) -> bool:
        if isinstance(other, GeomPoly):
            return self._terms == other._terms
        if isinstance(other, (int, Fraction)):
            return self == GeomPoly.constant(other)
        return NotImplemented

    def __hash__(self) -> int:
        return hash(frozenset(self._terms.items()))

    def __repr__(self) -> str:
        if not self._terms:
            return "GeomPoly(0)"
        parts = []
        for b in self.bases():
            c = self._terms[b]
            parts.append(f"{c}" if b == 1 else f"{c}*({b})^m")
        return "GeomPoly(" + " + ".join(parts) + ")"

    def __call__(self, m: int) -> Fraction:
        return geom_eval(self, m)

    def _coerce(self, other) -> "GeomPoly":
        if isinstance(other, GeomPoly):
            return other
        return GeomPoly.constant(to_fraction(other))

    def __add__(self, other) -> "GeomPoly":
        return geom_add(self, self._coerce(other))

    __radd__ = __add__

    def __neg__(self) -> "GeomPoly":
        return GeomPoly({b: -c for b, c in self._terms.items()})

    def __sub__(self, other) -> "GeomPoly":
        return geom_add(self, -self._coerce(other))

    def __rsub__(self, other) -> "GeomPoly":
        return geom_add(self._coerce(other), -self)

    def __mul__(self, other) -> "GeomPoly":
        if isinstance(other, GeomPoly):
            return geom_mul(self, other)
        c = to_fraction(other)
        return GeomPoly({b: c * v for b, v in self._terms.items()})

    __rmul__ = __mul__

    def __truediv__(self, other) -> "GeomPoly":
        return self * (1 / to_fraction(other))

    def shift(self, k: int) -> "GeomPoly":
        """The polynomial ``m -> self(m + k)``."""
        return GeomPoly({b: c * b**k for b, c in self._terms.items()})

    def limit(self) -> Fraction:
        """Value as ``m -> infinity`` (the coefficient of base 1)."""
        return self.coeff(1)


def geom_eval(p: GeomPoly, m: int) -> Fraction:
    if m < 0:
        raise ValueError("GeomPoly is evaluated at non-negative integers only")
    return sum((c * b**m for b, c in p._terms.items()), Fraction(0))


def geom_add(p: GeomPoly, q: GeomPoly) -> GeomPoly:
    acc = dict(p._terms)
    for b, c in q._terms.items():
        acc[b] = acc.get(b, Fraction(0)) + c
    return GeomPoly(acc)


def geom_mul(p: GeomPoly, q: GeomPoly) -> GeomPoly:
    acc: dict[Fraction, Fraction] = {}
    for b1, c1 in p._terms.items():
        for b2, c2 in q._terms.items():
            b = b1 * b2
            acc[b] = acc.get(b, Fraction(0)) + c1 * c2
    return GeomPoly(acc)


def geom_tail_sum(p: GeomPoly, ratio) -> Fraction:
    """``sum_{m >= 1} ratio**m * p(m)`` in closed form."""
    r = to_fraction(ratio)
    total = Fraction(0)
    for b, c in p._terms.items():
        q = r * b
        if abs(q) >= 1:
            raise DivergentSeriesError(f"ratio*base = {q} does not converge")
        total += c * q / (1 - q)
    return total
