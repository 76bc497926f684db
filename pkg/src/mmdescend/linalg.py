"""Dense exact linear algebra over Q[sqrt(d)].

All routines work on :class:`ExactMat`, an immutable row-major grid of
:class:`~mmdescend.exactnum.QElem`.  Elimination always takes the first
nonzero entry of a column as pivot, so every returned basis is deterministic.
"""

from __future__ import annotations

import random
from fractions import Fraction
from typing import Iterable, Sequence

from .exactnum import Field, FieldMismatchError, QElem, format_entry, parse_entry

__all__ = [
    "ExactMat",
    "SingularMatrixError",
    "DimensionError",
    "matmul",
    "matconj",
    "matinv",
    "rref",
    "nullspace",
    "rank",
    "det",
    "rank_over_base",
    "random_matrix",
    "random_invertible",
]

Vector = tuple[QElem, ...]


class DimensionError(ValueError):
    """Raised on incompatible matrix shapes."""


class SingularMatrixError(ZeroDivisionError):
    """Raised when inverting a singular matrix; ``rank`` holds the rank found."""

    def __init__(self, rank: int, size: int) -> None:
        super().__init__(f"matrix is singular (rank {rank} < {size})")
        self.rank = rank
        self.size = size


def _coerce_entry(x, K: Field) -> QElem:
    if isinstance(x, QElem):
        if x.field is not K:
            raise FieldMismatchError(f"entry in {x.field}, matrix over {K}")
        return x
    if isinstance(x, str) or isinstance(x, int):
        return parse_entry(x, K)
    if isinstance(x, Fraction):
        return QElem(x, Fraction(0), K)
    raise TypeError(f"cannot use {x!r} as a matrix entry")


class ExactMat:
    """Immutable dense matrix over a quadratic field.

    >>> from mmdescend.exactnum import Field
    >>> K = Field(-1)
    >>> A = ExactMat([["i", 0], [0, 1]], K)
    >>> (A @ A.conj()).is_identity()
    True
    >>> (A @ A).is_identity()
    False
    >>> A.inv()
    ExactMat([['-i', '0'], ['0', '1']], d=-1)
    """

    __slots__ = ("rows", "cols", "field", "_e")

    def __init__(self, rows: Iterable[Iterable], field: Field) -> None:
        K = Field(field)
        data = tuple(tuple(_coerce_entry(x, K) for x in row) for row in rows)
        ncols = len(data[0]) if data else 0
        for row in data:
            if len(row) != ncols:
                raise DimensionError("ragged matrix rows")
        self.rows = len(data)
        self.cols = ncols
        self.field = K
        self._e = data

    @classmethod
    def _wrap(cls, data: tuple[tuple[QElem, ...], ...], K: Field, cols: int | None = None) -> ExactMat:
        obj = cls.__new__(cls)
        obj._e = data
        obj.rows = len(data)
        obj.cols = len(data[0]) if data else (cols or 0)
        obj.field = K
        return obj

    # constructors ---------------------------------------------------------

    @classmethod
    def identity(cls, n: int, field: Field) -> ExactMat:
        K = Field(field)
        z, o = K.zero, K.one
        return cls._wrap(tuple(tuple(o if i == j else z for j in range(n)) for i in range(n)), K)

    @classmethod
    def zeros(cls, rows: int, cols: int, field: Field) -> ExactMat:
        K = Field(field)
        return cls._wrap(tuple((K.zero,) * cols for _ in range(rows)), K, cols)

    @classmethod
    def diag(cls, values: Sequence, field: Field) -> ExactMat:
        K = Field(field)
        vals = [_coerce_entry(v, K) for v in values]
        n = len(vals)
        return cls._wrap(
            tuple(tuple(vals[i] if i == j else K.zero for j in range(n)) for i in range(n)), K
        )

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[QElem]], field: Field) -> ExactMat:
        return cls(rows, field)

    # access ---------------------------------------------------------------

    @property
    def shape(self) -> tuple[int, int]:
        return (self.rows, self.cols)

    @property
    def entries(self) -> tuple[tuple[QElem, ...], ...]:
        return self._e

    def __getitem__(self, idx):
        i, j = idx
        return self._e[i][j]

    def row(self, i: int) -> Vector:
        return self._e[i]

    def col(self, j: int) -> Vector:
        return tuple(r[j] for r in self._e)

    def __iter__(self):
        return iter(self._e)

    def flat(self) -> Vector:
        """Row-major vectorization."""
        return tuple(x for r in self._e for x in r)

    def to_strings(self) -> list[list[str]]:
        return [[format_entry(x) for x in r] for r in self._e]

    def __repr__(self) -> str:
        return f"ExactMat({self.to_strings()!r}, d={self.field.d})"

    def __str__(self) -> str:
        cells = self.to_strings()
        width = max((len(c) for r in cells for c in r), default=1)
        return "\n".join("[" + " ".join(c.rjust(width) for c in r) + "]" for r in cells)

    def __eq__(self, other) -> bool:
        if not isinstance(other, ExactMat):
            return NotImplemented
        return self.field is other.field and self.shape == other.shape and self._e == other._e

    def __hash__(self) -> int:
        return hash((self.field.d, self._e))

    # predicates -----------------------------------------------------------

    @property
    def is_square(self) -> bool:
        return self.rows == self.cols

    @property
    def is_rational(self) -> bool:
        return all(not x.b for r in self._e for x in r)

    def is_zero(self) -> bool:
        return not any(x for r in self._e for x in r)

    def is_identity(self) -> bool:
        if not self.is_square:
            return False
        return all(
            (x == 1) if i == j else (not x)
            for i, r in enumerate(self._e)
            for j, x in enumerate(r)
        )

    def scalar_value(self) -> QElem | None:
        """Return ``c`` if this matrix equals ``c*I``, else ``None``."""
        if not self.is_square or self.rows == 0:
            return None
        c = self._e[0][0]
        for i, r in enumerate(self._e):
            for j, x in enumerate(r):
                if i == j:
                    if x != c:
                        return None
                elif x:
                    return None
        return c

    # arithmetic -----------------------------------------------------------

    def _check_same(self, other: ExactMat) -> None:
        if other.field is not self.field:
            raise FieldMismatchError(f"matrices over {self.field} and {other.field}")
        if other.shape != self.shape:
            raise DimensionError(f"shape mismatch {self.shape} vs {other.shape}")

    def __add__(self, other: ExactMat) -> ExactMat:
        self._check_same(other)
        return ExactMat._wrap(
            tuple(tuple(x + y for x, y in zip(r, s)) for r, s in zip(self._e, other._e)),
            self.field,
            self.cols,
        )

    def __sub__(self, other: ExactMat) -> ExactMat:
        self._check_same(other)
        return ExactMat._wrap(
            tuple(tuple(x - y for x, y in zip(r, s)) for r, s in zip(self._e, other._e)),
            self.field,
            self.cols,
        )

    def __neg__(self) -> ExactMat:
        return ExactMat._wrap(tuple(tuple(-x for x in r) for r in self._e), self.field, self.cols)

    def scale(self, c) -> ExactMat:
        c = _coerce_entry(c, self.field) if not isinstance(c, QElem) else c
        if c.field is not self.field:
            raise FieldMismatchError(f"scalar in {c.field}, matrix over {self.field}")
        return ExactMat._wrap(tuple(tuple(c * x for x in r) for r in self._e), self.field, self.cols)

    def __mul__(self, c) -> ExactMat:
        if isinstance(c, ExactMat):
            raise TypeError("use @ for matrix products")
        return self.scale(c)

    __rmul__ = __mul__

    def __matmul__(self, other: ExactMat) -> ExactMat:
        return matmul(self, other)

    @property
    def T(self) -> ExactMat:
        return ExactMat._wrap(tuple(zip(*self._e)), self.field, self.rows) if self.rows else \
            ExactMat.zeros(self.cols, 0, self.field)

    def conj(self) -> ExactMat:
        return matconj(self)

    def inv(self) -> ExactMat:
        return matinv(self)

    def trace(self) -> QElem:
        if not self.is_square:
            raise DimensionError("trace of a non-square matrix")
        t = self.field.zero
        for i in range(self.rows):
            t = t + self._e[i][i]
        return t

    def rank(self) -> int:
        return rank(self)

    def det(self) -> QElem:
        return det(self)

    def map(self, fn) -> ExactMat:
        return ExactMat._wrap(tuple(tuple(fn(x) for x in r) for r in self._e), self.field, self.cols)


def matmul(A: ExactMat, B: ExactMat) -> ExactMat:
    """Exact product ``A @ B``."""
    if A.field is not B.field:
        raise FieldMismatchError(f"matrices over {A.field} and {B.field}")
    if A.cols != B.rows:
        raise DimensionError(f"cannot multiply {A.shape} by {B.shape}")
    K = A.field
    zero = K.zero
    Bcols = list(zip(*B._e)) if B.rows else [() for _ in range(B.cols)]
    out = []
    for r in A._e:
        nz = [(k, x) for k, x in enumerate(r) if x]
        row = []
        for c in Bcols:
            acc = zero
            for k, x in nz:
                y = c[k]
                if y:
                    acc = acc + x * y
            row.append(acc)
        out.append(tuple(row))
    return ExactMat._wrap(tuple(out), K, B.cols)


def matconj(A: ExactMat) -> ExactMat:
    """Entrywise conjugate ``a + b*sqrt(d) -> a - b*sqrt(d)``."""
    if A.is_rational:
        return A
    return A.map(QElem.conj)


def rref(rows: Sequence[Sequence[QElem]], ncols: int, K: Field) -> tuple[list[list[QElem]], list[int]]:
    """Reduced row echelon form; returns ``(rows, pivot_columns)``.

    Zero rows are dropped from the output.
    """
    m = [list(r) for r in rows if any(r)]
    pivots: list[int] = []
    pr = 0
    for c in range(ncols):
        if pr >= len(m):
            break
        sel = next((i for i in range(pr, len(m)) if m[i][c]), None)
        if sel is None:
            continue
        if sel != pr:
            m[pr], m[sel] = m[sel], m[pr]
        piv = m[pr][c]
        if piv != 1:
            inv = piv.inverse()
            m[pr] = [x * inv if x else x for x in m[pr]]
        prow = m[pr]
        for i in range(len(m)):
            if i != pr:
                f = m[i][c]
                if f:
                    m[i] = [x - f * y if y else x for x, y in zip(m[i], prow)]
        pivots.append(c)
        pr += 1
    return m[:pr], pivots


def rank(A: ExactMat) -> int:
    return len(rref(A._e, A.cols, A.field)[1])


def matinv(A: ExactMat) -> ExactMat:
    """Inverse by Gauss-Jordan elimination; raises :class:`SingularMatrixError`."""
    if not A.is_square:
        raise DimensionError(f"cannot invert a {A.rows}x{A.cols} matrix")
    n = A.rows
    K = A.field
    aug = [list(r) + [K.one if i == j else K.zero for j in range(n)] for i, r in enumerate(A._e)]
    red, piv = rref(aug, n, K)
    if len(piv) < n or piv[:n] != list(range(n)):
        r = sum(1 for p in piv if p < n)
        raise SingularMatrixError(r, n)
    return ExactMat._wrap(tuple(tuple(r[n:]) for r in red), K, n)


def det(A: ExactMat) -> QElem:
    """Determinant by elimination."""
    if not A.is_square:
        raise DimensionError(f"determinant of a {A.rows}x{A.cols} matrix")
    K = A.field
    m = [list(r) for r in A.entries]
    n = A.rows
    result = K.one
    for c in range(n):
        sel = next((i for i in range(c, n) if m[i][c]), None)
        if sel is None:
            return K.zero
        if sel != c:
            m[c], m[sel] = m[sel], m[c]
            result = -result
        piv = m[c][c]
        result = result * piv
        inv = piv.inverse()
        for i in range(c + 1, n):
            f = m[i][c]
            if f:
                f = f * inv
                m[i] = [x - f * y if y else x for x, y in zip(m[i], m[c])]
    return result


def nullspace(A: ExactMat) -> list[Vector]:
    """Basis of the right kernel ``{v : A v = 0}``.

    Each basis vector has a 1 in one free column and 0 in the other free
    columns (reduced echelon parameterization), ordered by free column.
    """
    K = A.field
    red, piv = rref(A._e, A.cols, K)
    pivset = set(piv)
    basis = []
    for f in range(A.cols):
        if f in pivset:
            continue
        v = [K.zero] * A.cols
        v[f] = K.one
        for r, c in zip(red, piv):
            if r[f]:
                v[c] = -r[f]
        basis.append(tuple(v))
    return basis


def _split(v: Sequence[QElem]) -> list[Fraction]:
    return [x.a for x in v] + [x.b for x in v]


def rank_over_base(vectors: Sequence[Sequence[QElem]]) -> tuple[int, list[Vector]]:
    """Rank over Q of vectors in Q[sqrt(d)]^n and a greedy independent subset.

    Each vector is viewed as a length-2n rational vector (rational parts, then
    sqrt(d) parts).  Vectors are kept in input order whenever they are
    independent of those already kept.
    """
    basis: list[tuple[int, list[Fraction]]] = []  # (pivot index, reduced row)
    chosen: list[Vector] = []
    for v in vectors:
        w = _split(v)
        for p, b in basis:
            f = w[p]
            if f:
                w = [x - f * y for x, y in zip(w, b)]
        p = next((k for k, x in enumerate(w) if x), None)
        if p is None:
            continue
        inv = 1 / w[p]
        w = [x * inv for x in w]
        basis.append((p, w))
        chosen.append(tuple(v))
    return len(chosen), chosen


def random_matrix(rows: int, cols: int, field: Field, rng: random.Random,
                  height: int = 5, rational: bool = False) -> ExactMat:
    """Random matrix with integer parts in ``[-height, height]``."""
    K = Field(field)
    return ExactMat._wrap(
        tuple(
            tuple(
                QElem(Fraction(rng.randint(-height, height)),
                      Fraction(0 if rational else rng.randint(-height, height)), K)
                for _ in range(cols)
            )
            for _ in range(rows)
        ),
        K,
        cols,
    )


def random_invertible(n: int, field: Field, rng: random.Random, height: int = 5,
                      rational: bool = False) -> ExactMat:
    while True:
        A = random_matrix(n, n, field, rng, height, rational)
        if rank(A) == n:
            return A
