"""Bilinear matrix-multiplication schemes and their symmetries.

A scheme ``<m,n,p,r>`` is stored as ``r`` triples ``(O_j, P_j, Q_j)`` with
shapes ``m x n``, ``n x p`` and ``p x m``.  It is valid when it satisfies the
Brent equations

    sum_t O_t(i1,j1) P_t(j2,k1) Q_t(k2,i2) = [i1==i2][j1==j2][k1==k2].

Public indices are 0-based; reports printed for humans are 1-based.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from typing import NamedTuple, Sequence

from .exactnum import Field, FieldMismatchError, QElem
from .linalg import DimensionError, ExactMat, SingularMatrixError

__all__ = [
    "Triple",
    "Scheme",
    "BrentReport",
    "EncodingMatrices",
    "TransformTriple",
    "Ring",
    "VARIANTS",
    "brent_verify",
    "to_encoding",
    "from_encoding",
    "apply_transform",
    "cyclic_shift",
    "transpose_action",
    "scalar_redistribute",
    "products",
    "product_traces",
    "detect_ring",
    "standard_scheme",
]

VARIANTS = ("OPQ", "PQO", "QOP")
SLOTS = ("O", "P", "Q")


class Triple(NamedTuple):
    O: ExactMat
    P: ExactMat
    Q: ExactMat


@dataclass(frozen=True)
class Scheme:
    """An ``<m,n,p,r>`` scheme over ``Q[sqrt(d)]``."""

    m: int
    n: int
    p: int
    triples: tuple[Triple, ...]
    field: Field

    def __post_init__(self) -> None:
        K = Field(self.field)
        object.__setattr__(self, "field", K)
        ts = tuple(Triple(*t) for t in self.triples)
        object.__setattr__(self, "triples", ts)
        if min(self.m, self.n, self.p) < 1:
            raise DimensionError(f"dimensions must be positive, got {self.dims}")
        if not ts:
            raise ValueError("a scheme needs at least one triple (r >= 1)")
        want = ((self.m, self.n), (self.n, self.p), (self.p, self.m))
        for j, t in enumerate(ts):
            for name, mat, shape in zip(SLOTS, t, want):
                if mat.field is not K:
                    raise FieldMismatchError(f"triple {j} factor {name} is over {mat.field}, scheme over {K}")
                if mat.shape != shape:
                    raise DimensionError(f"triple {j} factor {name} has shape {mat.shape}, expected {shape}")

    @property
    def r(self) -> int:
        return len(self.triples)

    @property
    def dims(self) -> tuple[int, int, int]:
        return (self.m, self.n, self.p)

    @property
    def is_rational(self) -> bool:
        return all(f.is_rational for t in self.triples for f in t)

    def label(self) -> str:
        return f"⟨{self.m},{self.n},{self.p},{self.r}⟩"

    def __repr__(self) -> str:
        return f"Scheme({self.label()}, d={self.field.d})"

    def replace_triples(self, triples, dims: tuple[int, int, int] | None = None) -> Scheme:
        m, n, p = dims or self.dims
        return Scheme(m, n, p, tuple(triples), self.field)


# ---------------------------------------------------------------------------
# Brent equations


@dataclass(frozen=True)
class BrentReport:
    """Result of :func:`brent_verify`.

    ``violation`` is the first failing index tuple ``(i1, j1, j2, k1, k2, i2)``
    (0-based) in lexicographic order, ``value`` the computed sum there and
    ``expected`` the required Kronecker value.
    """

    ok: bool
    violation: tuple[int, int, int, int, int, int] | None = None
    value: QElem | None = None
    expected: int | None = None
    equations: int = 0

    def __bool__(self) -> bool:
        return self.ok

    def __str__(self) -> str:
        if self.ok:
            return f"Brent equations hold ({self.equations} checked)"
        idx = ",".join(str(i + 1) for i in self.violation)
        return f"Brent violation at (i1,j1,j2,k1,k2,i2)=({idx}): sum {self.value}, expected {self.expected}"


def _nonzeros(A: ExactMat) -> list[tuple[int, int, QElem]]:
    return [(i, j, x) for i, row in enumerate(A.entries) for j, x in enumerate(row) if x]


def brent_verify(s: Scheme) -> BrentReport:
    """Check all ``(mnp)^2`` Brent equations exactly."""
    m, n, p = s.dims
    acc: dict[tuple, QElem] = {}
    for O, P, Q in s.triples:
        nzP = _nonzeros(P)
        nzQ = _nonzeros(Q)
        for i1, j1, x in _nonzeros(O):
            for j2, k1, y in nzP:
                xy = x * y
                for k2, i2, z in nzQ:
                    key = (i1, j1, j2, k1, k2, i2)
                    v = xy * z
                    prev = acc.get(key)
                    acc[key] = v if prev is None else prev + v
    bad = [k for k, v in acc.items() if v != (1 if k[0] == k[5] and k[1] == k[2] and k[3] == k[4] else 0)]
    for i in range(m):
        for j in range(n):
            for k in range(p):
                key = (i, j, j, k, k, i)
                if key not in acc:
                    bad.append(key)
    total = (m * n * p) ** 2
    if not bad:
        return BrentReport(True, equations=total)
    first = min(bad)
    expected = 1 if first[0] == first[5] and first[1] == first[2] and first[3] == first[4] else 0
    return BrentReport(False, first, acc.get(first, s.field.zero), expected, total)


# ---------------------------------------------------------------------------
# encoding matrices


@dataclass(frozen=True)
class EncodingMatrices:
    """Rows of ``U``, ``V``, ``W`` are ``vec(O_j)``, ``vec(P_j)``, ``vec(Q_j^T)`` (row-major)."""

    U: ExactMat
    V: ExactMat
    W: ExactMat
    dims: tuple[int, int, int]

    @property
    def field(self) -> Field:
        return self.U.field


def to_encoding(s: Scheme) -> EncodingMatrices:
    K = s.field
    U = ExactMat([t.O.flat() for t in s.triples], K)
    V = ExactMat([t.P.flat() for t in s.triples], K)
    W = ExactMat([t.Q.T.flat() for t in s.triples], K)
    return EncodingMatrices(U, V, W, s.dims)


def _unvec(row: Sequence[QElem], rows: int, cols: int) -> list[list[QElem]]:
    return [list(row[i * cols:(i + 1) * cols]) for i in range(rows)]


def from_encoding(e: EncodingMatrices) -> Scheme:
    m, n, p = e.dims
    K = e.U.field
    if not (e.U.rows == e.V.rows == e.W.rows):
        raise DimensionError("U, V, W must have the same number of rows")
    if (e.U.cols, e.V.cols, e.W.cols) != (m * n, n * p, p * m):
        raise DimensionError(
            f"encoding widths {(e.U.cols, e.V.cols, e.W.cols)} do not match dims {e.dims}"
        )
    triples = []
    for u, v, w in zip(e.U.entries, e.V.entries, e.W.entries):
        O = ExactMat(_unvec(u, m, n), K)
        P = ExactMat(_unvec(v, n, p), K)
        Q = ExactMat(_unvec(w, m, p), K).T
        triples.append(Triple(O, P, Q))
    return Scheme(m, n, p, tuple(triples), K)


# ---------------------------------------------------------------------------
# De Groote actions


@dataclass(frozen=True)
class TransformTriple:
    """Invertible ``X`` (m x m), ``Y`` (n x n), ``Z`` (p x p); inverses are cached."""

    X: ExactMat
    Y: ExactMat
    Z: ExactMat
    Xinv: ExactMat = dc_field(init=False, repr=False, compare=False)
    Yinv: ExactMat = dc_field(init=False, repr=False, compare=False)
    Zinv: ExactMat = dc_field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        for name in ("X", "Y", "Z"):
            M = getattr(self, name)
            if not M.is_square:
                raise DimensionError(f"{name} must be square, got {M.shape}")
            try:
                inv = M.inv()
            except SingularMatrixError as exc:
                raise SingularMatrixError(exc.rank, exc.size) from None
            object.__setattr__(self, name + "inv", inv)

    @classmethod
    def identity(cls, dims: tuple[int, int, int], K: Field) -> TransformTriple:
        m, n, p = dims
        return cls(ExactMat.identity(m, K), ExactMat.identity(n, K), ExactMat.identity(p, K))

    @property
    def dims(self) -> tuple[int, int, int]:
        return (self.X.rows, self.Y.rows, self.Z.rows)

    def is_identity(self) -> bool:
        return self.X.is_identity() and self.Y.is_identity() and self.Z.is_identity()


def apply_transform(s: Scheme, t: TransformTriple) -> Scheme:
    """Sandwich action ``(X O Y^-1, Y P Z^-1, Z Q X^-1)``."""
    if t.dims != s.dims:
        raise DimensionError(f"transform dims {t.dims} do not match scheme dims {s.dims}")
    if t.X.field is not s.field:
        raise FieldMismatchError(f"transform over {t.X.field}, scheme over {s.field}")
    X, Y, Z, Xi, Yi, Zi = t.X, t.Y, t.Z, t.Xinv, t.Yinv, t.Zinv
    out = [Triple(X @ O @ Yi, Y @ P @ Zi, Z @ Q @ Xi) for O, P, Q in s.triples]
    return s.replace_triples(out)


def cyclic_shift(s: Scheme) -> Scheme:
    """``sum P_j (x) Q_j (x) O_j``, an ``<n,p,m,r>`` scheme."""
    return s.replace_triples([Triple(P, Q, O) for O, P, Q in s.triples], (s.n, s.p, s.m))


def transpose_action(s: Scheme) -> Scheme:
    """``sum P_j^T (x) O_j^T (x) Q_j^T``, an ``<p,n,m,r>`` scheme."""
    return s.replace_triples([Triple(P.T, O.T, Q.T) for O, P, Q in s.triples], (s.p, s.n, s.m))


def scalar_redistribute(s: Scheme, j: int, alpha, slots: tuple[str, str] = ("O", "P")) -> Scheme:
    """Multiply factor ``slots[0]`` of triple ``j`` by ``alpha`` and ``slots[1]`` by ``1/alpha``."""
    K = s.field
    if not isinstance(alpha, QElem):
        alpha = K(alpha)
    if not alpha:
        raise ZeroDivisionError("alpha must be nonzero")
    src, dst = slots
    if src not in SLOTS or dst not in SLOTS or src == dst:
        raise ValueError(f"slots must be two distinct names from {SLOTS}, got {slots}")
    t = s.triples[j]._asdict()
    t[src] = t[src].scale(alpha)
    t[dst] = t[dst].scale(alpha.inverse())
    triples = list(s.triples)
    triples[j] = Triple(**t)
    return s.replace_triples(triples)


def products(s: Scheme, variant: str = "OPQ") -> list[ExactMat]:
    """Square products ``O_jP_jQ_j`` (m x m), ``P_jQ_jO_j`` (n x n) or ``Q_jO_jP_j`` (p x p)."""
    if variant == "OPQ":
        return [O @ P @ Q for O, P, Q in s.triples]
    if variant == "PQO":
        return [P @ Q @ O for O, P, Q in s.triples]
    if variant == "QOP":
        return [Q @ O @ P for O, P, Q in s.triples]
    raise ValueError(f"unknown variant {variant!r}; expected one of {VARIANTS}")


def product_traces(s: Scheme, variant: str = "OPQ") -> list[QElem]:
    return [M.trace() for M in products(s, variant)]


# ---------------------------------------------------------------------------
# ring detection


def _factorize(n: int) -> dict[int, int]:
    out: dict[int, int] = {}
    k = 2
    while k * k <= n:
        while n % k == 0:
            out[k] = out.get(k, 0) + 1
            n //= k
        k += 1
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


@dataclass(frozen=True)
class Ring:
    """Smallest standard ring containing every coefficient of a scheme.

    ``kind`` is ``"Z"``, ``"Z[1/L]"`` or ``"Q[sqrt d]"``.
    """

    kind: str
    L: int = 1
    factors: tuple[tuple[int, int], ...] = ()
    d: int | None = None

    @property
    def is_rational(self) -> bool:
        return self.kind != "Q[sqrt d]"

    def __str__(self) -> str:
        if self.kind == "Z":
            return "ℤ"
        if self.kind == "Z[1/L]":
            return f"ℤ[1/{self.L}]"
        return "ℚ[i]" if self.d == -1 else f"ℚ[√{self.d}]"


def detect_ring(s: Scheme) -> Ring:
    entries = [x for t in s.triples for f in t for row in f.entries for x in row]
    if any(x.b for x in entries):
        return Ring("Q[sqrt d]", d=s.field.d)
    L = 1
    for x in entries:
        L = math.lcm(L, x.a.denominator)
    if L == 1:
        return Ring("Z")
    return Ring("Z[1/L]", L, tuple(sorted(_factorize(L).items())))


# ---------------------------------------------------------------------------
# reference schemes


def standard_scheme(m: int, n: int, p: int, field: Field = Field(-1)) -> Scheme:
    """The classical ``<m,n,p,mnp>`` scheme ``sum E_ab (x) E_bc (x) E_ca``."""
    K = Field(field)

    def unit(rows, cols, i, j):
        return ExactMat([[K.one if (r, c) == (i, j) else K.zero for c in range(cols)] for r in range(rows)], K)

    triples = [
        Triple(unit(m, n, a, b), unit(n, p, b, c), unit(p, m, c, a))
        for a in range(m)
        for b in range(n)
        for c in range(p)
    ]
    return Scheme(m, n, p, tuple(triples), K)
