"""Trace obstructions to integer-equivalent schemes.

If some product ``M_{j1} M_{j2} ... M_{jk}`` of the square products of a
rational scheme has a non-integer trace, then no simultaneous conjugation
makes every ``M_j`` an integer matrix, hence no De Groote transform gives an
integer scheme.  A negative search result proves nothing: it only means no
obstruction exists up to the searched depth.

Matrices are handled as integer numerators over one common denominator ``L``,
so a depth-``k`` trace ``t / L^k`` is integral iff ``L^k`` divides ``t``.
"""

from __future__ import annotations

import itertools
import math
import os
from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from typing import Sequence

from .exactnum import QElem
from .linalg import ExactMat
from .scheme import Scheme, products

__all__ = [
    "UnsupportedFieldError",
    "ObstructionReport",
    "DepthCensus",
    "integer_obstruction",
    "obstruction_search",
    "trace_profile",
    "trace_profile_matrices",
    "default_memo_cap",
    "DEFAULT_DEPTH",
]

DEFAULT_DEPTH = 3
DEFAULT_MEMO_CAP = 10**6

IntMat = tuple[tuple[int, ...], ...]


class UnsupportedFieldError(ValueError):
    """Integer obstructions are only defined for schemes with rational entries."""


def default_memo_cap() -> int:
    """Memoization cap, overridable through ``MMDESCEND_MEMO_CAP``."""
    raw = os.environ.get("MMDESCEND_MEMO_CAP")
    return int(raw) if raw else DEFAULT_MEMO_CAP


@dataclass
class ObstructionReport:
    """``witness`` holds 0-based indices; ``to_dict`` reports them 1-based."""

    found: bool
    witness: tuple[int, ...] | None
    trace_value: QElem | None
    depth_searched: int
    products_examined: int

    def __bool__(self) -> bool:
        return self.found

    def summary(self) -> str:
        if self.found:
            idx = ",".join(str(j + 1) for j in self.witness)
            return (
                f"obstruction found: trace of product ({idx}) is {self.trace_value}, "
                f"not an integer (depth {len(self.witness)}, {self.products_examined} products examined)"
            )
        return (
            f"no obstruction found up to depth {self.depth_searched} "
            f"({self.products_examined} products examined)"
        )

    def to_dict(self) -> dict:
        return {
            "status": "obstruction found" if self.found else "no obstruction found",
            "witness": None if self.witness is None else [j + 1 for j in self.witness],
            "trace": None if self.trace_value is None else str(self.trace_value),
            "depth": len(self.witness) if self.witness else None,
            "depth_searched": self.depth_searched,
            "products_examined": self.products_examined,
        }


def _integerize(Ms: Sequence[ExactMat]) -> tuple[list[IntMat], int]:
    if not Ms:
        raise ValueError("need at least one matrix")
    for M in Ms:
        if not M.is_square or M.shape != Ms[0].shape:
            raise ValueError("matrices must be square and of equal size")
        if not M.is_rational:
            raise UnsupportedFieldError(
                "integer obstructions need rational entries; descend the scheme to Q first"
            )
    L = 1
    for M in Ms:
        for row in M.entries:
            for x in row:
                L = math.lcm(L, x.a.denominator)
    ints = [
        tuple(tuple(int(x.a * L) for x in row) for row in M.entries) for M in Ms
    ]
    return ints, L


def _mul(A: IntMat, B: IntMat) -> IntMat:
    Bt = list(zip(*B))
    return tuple(tuple(sum(a * b for a, b in zip(row, col)) for col in Bt) for row in A)


def _trace_mul(A: IntMat, B: IntMat) -> int:
    n = len(A)
    return sum(A[a][b] * B[b][a] for a in range(n) for b in range(n))


def _identity(n: int) -> IntMat:
    return tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n))


def _walk(ints: list[IntMat], k_max: int, memo_cap: int):
    """Yield ``(depth, sequence, trace_numerator)`` in depth-then-lexicographic order."""
    r = len(ints)
    n = len(ints[0])
    level: list[tuple[tuple[int, ...], IntMat]] | None = [((), _identity(n))]
    base = level
    base_depth = 0
    for k in range(1, k_max + 1):
        store = k < k_max and r**k <= memo_cap
        nxt: list[tuple[tuple[int, ...], IntMat]] = []
        if level is not None:
            for seq, P in level:
                for j, N in enumerate(ints):
                    yield k, seq + (j,), _trace_mul(P, N)
                    if store:
                        nxt.append((seq + (j,), _mul(P, N)))
        else:
            # over the cap: rebuild products from the deepest stored level
            for seq, P in base:
                for tail in itertools.product(range(r), repeat=k - base_depth - 1):
                    Q = P
                    for j in tail:
                        Q = _mul(Q, ints[j])
                    for j, N in enumerate(ints):
                        yield k, seq + tail + (j,), _trace_mul(Q, N)
        if store:
            level = nxt
            base, base_depth = nxt, k
        else:
            level = None


def obstruction_search(
    Ms: Sequence[ExactMat], k_max: int = DEFAULT_DEPTH, memo_cap: int | None = None
) -> ObstructionReport:
    """First index sequence (by depth, then lexicographic) whose product has non-integer trace."""
    if k_max < 1:
        raise ValueError("k_max must be at least 1")
    ints, L = _integerize(Ms)
    cap = default_memo_cap() if memo_cap is None else memo_cap
    K = Ms[0].field
    examined = 0
    for k, seq, t in _walk(ints, k_max, cap):
        examined += 1
        den = L**k
        if t % den:
            return ObstructionReport(True, seq, K(Fraction(t, den)), k_max, examined)
    return ObstructionReport(False, None, None, k_max, examined)


def integer_obstruction(
    s: Scheme, variant: str = "OPQ", k_max: int = DEFAULT_DEPTH, memo_cap: int | None = None
) -> ObstructionReport:
    """Search the ``variant`` products of a rational scheme for a trace obstruction."""
    if not s.is_rational:
        raise UnsupportedFieldError(
            f"scheme has entries outside Q (field {s.field}); integer obstructions need a rational scheme"
        )
    return obstruction_search(products(s, variant), k_max, memo_cap)


@dataclass
class DepthCensus:
    depth: int
    non_integer: int
    examined: int
    witnesses: list[tuple[tuple[int, ...], Fraction]] = dc_field(default_factory=list)

    def to_dict(self) -> dict:
        return {
            "depth": self.depth,
            "non_integer": self.non_integer,
            "examined": self.examined,
            "witnesses": [
                {"sequence": [j + 1 for j in seq], "trace": str(t)} for seq, t in self.witnesses
            ],
        }


def trace_profile_matrices(
    Ms: Sequence[ExactMat], k_max: int = DEFAULT_DEPTH, samples: int = 5, memo_cap: int | None = None
) -> list[DepthCensus]:
    ints, L = _integerize(Ms)
    cap = default_memo_cap() if memo_cap is None else memo_cap
    table = [DepthCensus(k, 0, 0) for k in range(1, k_max + 1)]
    for k, seq, t in _walk(ints, k_max, cap):
        row = table[k - 1]
        row.examined += 1
        if t % L**k:
            row.non_integer += 1
            if len(row.witnesses) < samples:
                row.witnesses.append((seq, Fraction(t, L**k)))
    return table


def trace_profile(s: Scheme, k_max: int = DEFAULT_DEPTH, variant: str = "OPQ", samples: int = 5) -> list[DepthCensus]:
    """Per-depth census of non-integer traces among all products up to ``k_max``."""
    if not s.is_rational:
        raise UnsupportedFieldError(f"scheme has entries outside Q (field {s.field})")
    return trace_profile_matrices(products(s, variant), k_max, samples)
