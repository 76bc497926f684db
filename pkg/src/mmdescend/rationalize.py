"""Descent of schemes from Q[sqrt(d)] to Q under De Groote actions.

For each cyclic product family ``M_j`` (``O_jP_jQ_j``, ``P_jQ_jO_j``,
``Q_jO_jP_j``) we look for an intertwiner ``S`` with ``S M_j = conj(M_j) S``
for all ``j`` and ``S conj(S) = I``.  If one family admits no such ``S`` there
is no rational scheme in the orbit.  Otherwise the fixed vectors of the
anti-linear involution ``x -> conj(x) S`` give the rows of a matrix ``X`` for
which every ``X M_j X^-1`` is rational; the three matrices obtained this way
form the transform ``(X, Y, Z)``.
"""

from __future__ import annotations

import itertools
import json
import math
from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from typing import Iterator, Sequence

from .exactnum import Field, QElem, format_entry, rational_sqrt
from .formats import format_matrix_literal
from .linalg import DimensionError, ExactMat, det, nullspace, rank_over_base
from .scheme import (
    VARIANTS,
    Scheme,
    TransformTriple,
    apply_transform,
    brent_verify,
    detect_ring,
    products,
    scalar_redistribute,
)

__all__ = [
    "NormalizationReport",
    "IntertwinerSolution",
    "Certificate",
    "VariantReport",
    "DescentOutcome",
    "PostCheck",
    "FixedSpaceError",
    "InvalidSchemeError",
    "intertwiner_system",
    "solve_intertwiner",
    "normalize_S",
    "solve_norm",
    "involution",
    "fixed_space",
    "descend",
    "solve_family",
    "post_check",
    "SUCCESS",
    "NO_SOLUTION",
    "INCONCLUSIVE",
]

SUCCESS = "Success"
NO_SOLUTION = "NoSolution"
INCONCLUSIVE = "Inconclusive"

UNIQUE = "unique-up-to-unit-scalar"
MULTI = "multi-dimensional"
EMPTY = "empty"

DEFAULT_HEIGHT = 50
DEFAULT_COMB = 2
DEFAULT_MAX_CANDIDATES = 20000


class FixedSpaceError(ArithmeticError):
    """Fewer than ``n`` independent fixed vectors were found."""


class InvalidSchemeError(ValueError):
    """The input of :func:`descend` does not satisfy the Brent equations."""


# ---------------------------------------------------------------------------
# intertwiners


def intertwiner_system(Ms: Sequence[ExactMat]) -> ExactMat:
    """Coefficient matrix of ``S M_j - conj(M_j) S = 0`` in the row-major entries of ``S``."""
    if not Ms:
        raise ValueError("need at least one matrix")
    n = Ms[0].rows
    K = Ms[0].field
    for M in Ms:
        if M.shape != (n, n):
            raise DimensionError(f"all matrices must be {n}x{n}, got {M.shape}")
        if M.field is not K:
            raise ValueError("matrices over different fields")
    rows = []
    zero = K.zero
    for M in Ms:
        Mc = M.conj()
        for a in range(n):
            for c in range(n):
                row = [zero] * (n * n)
                for b in range(n):
                    x = M[b, c]
                    if x:
                        row[a * n + b] = row[a * n + b] + x
                    y = Mc[a, b]
                    if y:
                        row[b * n + c] = row[b * n + c] - y
                if any(row):
                    rows.append(row)
    if not rows:
        rows = [[zero] * (n * n)]
    return ExactMat(rows, K)


@dataclass
class NormalizationReport:
    """What happened while scaling nullspace elements to ``S conj(S) = I``."""

    beta: Fraction | None = None
    alpha: QElem | None = None
    coefficients: tuple[int, ...] | None = None
    strategies_tried: list[str] = dc_field(default_factory=list)
    candidates_examined: int = 0
    scalar_test_failed: int = 0
    norm_sign_obstruction: bool = False
    truncated: bool = False

    def to_dict(self) -> dict:
        return {
            "beta": None if self.beta is None else _fmt_q(self.beta),
            "alpha": None if self.alpha is None else format_entry(self.alpha),
            "coefficients": None if self.coefficients is None else list(self.coefficients),
            "strategies_tried": list(self.strategies_tried),
            "candidates_examined": self.candidates_examined,
            "scalar_test_failed": self.scalar_test_failed,
            "norm_sign_obstruction": self.norm_sign_obstruction,
            "truncated": self.truncated,
        }


@dataclass
class IntertwinerSolution:
    basis: list[ExactMat]
    normalized_S: ExactMat | None
    uniqueness: str
    report: NormalizationReport | None = None

    @property
    def dim(self) -> int:
        return len(self.basis)


def solve_intertwiner(
    Ms: Sequence[ExactMat],
    height: int = DEFAULT_HEIGHT,
    comb: int = DEFAULT_COMB,
    use_legendre: bool = True,
    max_candidates: int = DEFAULT_MAX_CANDIDATES,
) -> IntertwinerSolution:
    """Nullspace of the intertwiner equations plus an attempt to normalize it."""
    A = intertwiner_system(Ms)
    n = Ms[0].rows
    K = Ms[0].field
    basis = [
        ExactMat([v[i * n:(i + 1) * n] for i in range(n)], K) for v in nullspace(A)
    ]
    if not basis:
        return IntertwinerSolution([], None, EMPTY, None)
    uniq = UNIQUE if len(basis) == 1 else MULTI
    S, report = normalize_S(basis, height, comb, use_legendre, max_candidates)
    return IntertwinerSolution(basis, S, uniq, report)


def _combinations(dim: int, comb: int) -> Iterator[tuple[int, ...]]:
    """Primitive integer vectors with >= 2 nonzeros, |c| <= comb, first nonzero positive.

    Ordered by L1 norm, then preferring small magnitudes and positive signs.
    """
    for total in range(2, comb * dim + 1):
        batch = []
        for c in itertools.product(range(-comb, comb + 1), repeat=dim) if dim <= 6 else ():
            if sum(abs(x) for x in c) != total or sum(1 for x in c if x) < 2:
                continue
            first = next(x for x in c if x)
            if first < 0 or math.gcd(*c) != 1:
                continue
            batch.append(c)
        if dim > 6:
            batch = [c for c in _small_support(dim, comb) if sum(abs(x) for x in c) == total]
        batch.sort(key=lambda c: tuple((abs(x), x < 0) for x in c))
        yield from batch


def _small_support(dim: int, comb: int) -> Iterator[tuple[int, ...]]:
    # high-dimensional nullspaces: pairs of basis elements only
    for i, j in itertools.combinations(range(dim), 2):
        for a in range(1, comb + 1):
            for b in range(-comb, comb + 1):
                if b and math.gcd(a, b) == 1:
                    c = [0] * dim
                    c[i], c[j] = a, b
                    yield tuple(c)


def _candidates(basis: Sequence[ExactMat], comb: int) -> Iterator[tuple[tuple[int, ...], ExactMat]]:
    dim = len(basis)
    for k in range(dim):
        c = tuple(1 if i == k else 0 for i in range(dim))
        yield c, basis[k]
    if dim == 1:
        return
    for c in _combinations(dim, comb):
        B = None
        for coef, M in zip(c, basis):
            if coef:
                term = M.scale(basis[0].field(coef))
                B = term if B is None else B + term
        yield c, B


def normalize_S(
    basis: Sequence[ExactMat],
    height: int = DEFAULT_HEIGHT,
    comb: int = DEFAULT_COMB,
    use_legendre: bool = True,
    max_candidates: int = DEFAULT_MAX_CANDIDATES,
) -> tuple[ExactMat | None, NormalizationReport]:
    """Find ``S = alpha * B`` with ``S conj(S) = I`` for ``B`` in the span of ``basis``.

    Candidates ``B`` are the basis elements, then small integer combinations
    (coefficients in ``[-comb, comb]``).  A candidate is kept only when
    ``B conj(B) = beta*I`` with rational ``beta != 0``; then the norm equation
    ``N(alpha) = 1/beta`` is attacked with :func:`solve_norm`.
    """
    report = NormalizationReport()
    if not basis:
        return None, report
    K = basis[0].field
    for c, B in _candidates(basis, comb):
        if report.candidates_examined >= max_candidates:
            report.truncated = True
            break
        report.candidates_examined += 1
        beta = (B @ B.conj()).scalar_value()
        if beta is None or not beta or beta.b:
            report.scalar_test_failed += 1
            continue
        target = 1 / beta.a
        if K.d < 0 and target < 0:
            # a^2 - d b^2 > 0 for d < 0: no alpha can exist for this B
            report.norm_sign_obstruction = True
            report.beta = beta.a
            continue
        alpha, tried = solve_norm(target, K, height, use_legendre, B)
        report.strategies_tried = tried
        report.beta = beta.a
        report.coefficients = c
        if alpha is not None:
            report.alpha = alpha
            return B.scale(alpha), report
    return None, report


def solve_norm(
    target: Fraction,
    K: Field,
    height: int = DEFAULT_HEIGHT,
    use_legendre: bool = True,
    B: ExactMat | None = None,
) -> tuple[QElem | None, list[str]]:
    """Find ``alpha`` in ``K`` with ``alpha * conj(alpha) = target``.

    Strategies, in order: rational square root; ``t*sqrt(d)``; the determinant
    identity for odd-size ``B`` with ``B conj(B) = I/target``; a
    height-bounded search over ``(x + y*sqrt(d))/z`` with ``y, z <= height``;
    finally a rational point on the conic ``x^2 - d y^2 = target z^2``.
    Returns ``(alpha or None, names of strategies tried)``.
    """
    d = K.d
    target = Fraction(target)
    tried = []

    tried.append("rational_sqrt")
    r = rational_sqrt(target)
    if r is not None:
        return K(r), tried

    tried.append("pure_root")
    t = rational_sqrt(-target / d)
    if t is not None:
        return K(0, t), tried

    if B is not None and B.rows % 2 == 1:
        tried.append("odd_determinant")
        # N(det B) = beta^n, so beta^((n-1)/2) / det(B) has norm 1/beta
        beta = 1 / target
        alpha = K(beta ** ((B.rows - 1) // 2)) / det(B)
        if alpha.norm() == target:
            return alpha, tried

    tried.append(f"height_search(H={height})")
    for z in range(1, height + 1):
        z2 = target * z * z
        for y in range(1, height + 1):
            x = rational_sqrt(z2 + d * y * y)
            if x is not None:
                return K(x / z, Fraction(y, z)), tried

    if use_legendre:
        tried.append("conic_point")
        alpha = _conic_point(target, K)
        if alpha is not None:
            return alpha, tried
    return None, tried


def _conic_point(target: Fraction, K: Field) -> QElem | None:
    from sympy import factorint
    from sympy.abc import x, y, z
    from sympy.solvers.diophantine.diophantine import diop_ternary_quadratic_normal

    # a^2 - d b^2 = u/v  <=>  (av)^2 - d (bv)^2 = uv = f^2 N0 with N0 squarefree
    u, v = target.numerator, target.denominator
    N = u * v
    sign = -1 if N < 0 else 1
    f, N0 = 1, sign
    for prime, e in factorint(abs(N)).items():
        f *= prime ** (e // 2)
        N0 *= prime ** (e % 2)
    d = K.d
    sol = diop_ternary_quadratic_normal(x**2 - d * y**2 - N0 * z**2)
    if sol is None or sol[0] is None or not sol[2]:
        return None
    x0, y0, z0 = (int(c) for c in sol)
    alpha = K(Fraction(f * x0, z0 * v), Fraction(f * y0, z0 * v))
    return alpha if alpha.norm() == target else None


# ---------------------------------------------------------------------------
# fixed space of x -> conj(x) S


def involution(S: ExactMat, x: Sequence[QElem]) -> tuple[QElem, ...]:
    """``f(x) = conj(x) S`` for a row vector ``x``."""
    K = S.field
    n = S.rows
    xc = [c.conj() for c in x]
    out = []
    for j in range(n):
        acc = K.zero
        for k in range(n):
            if xc[k]:
                s = S[k, j]
                if s:
                    acc = acc + xc[k] * s
        out.append(acc)
    return tuple(out)


def _primitive(v: Sequence[QElem]) -> tuple[QElem, ...]:
    """Positive rational multiple of ``v`` with coprime integer parts and a positive leading part."""
    parts = [q for x in v for q in (x.a, x.b)]
    L = 1
    for q in parts:
        L = math.lcm(L, q.denominator)
    g = 0
    for q in parts:
        g = math.gcd(g, int(q * L))
    scale = Fraction(L, g)
    lead = next(q for q in parts if q)
    if lead < 0:
        scale = -scale
    return tuple(x * scale for x in v)


def fixed_space(S: ExactMat, reverse: bool = False) -> ExactMat:
    """Rows form a Q-basis of ``{x : conj(x) S = x}``; requires ``S conj(S) = I``.

    Candidates are ``e_k + f(e_k)`` for ``k = 1..n`` and then
    ``sqrt(d) (e_k - f(e_k))``, each rescaled to primitive integral form; the
    first ``n`` that are independent over Q are kept (``reverse`` scans the
    candidate list backwards).
    """
    if not S.is_square:
        raise DimensionError("S must be square")
    if not (S @ S.conj()).is_identity():
        raise ValueError("fixed_space requires S conj(S) = I")
    K = S.field
    n = S.rows
    root = K.root
    cands = []
    units = [tuple(K.one if i == k else K.zero for i in range(n)) for k in range(n)]
    images = [involution(S, e) for e in units]
    for e, fe in zip(units, images):
        cands.append(tuple(a + b for a, b in zip(e, fe)))
    for e, fe in zip(units, images):
        cands.append(tuple(root * (a - b) for a, b in zip(e, fe)))
    cands = [_primitive(v) for v in cands if any(v)]
    if reverse:
        cands.reverse()
    r, chosen = rank_over_base(cands)
    if r < n:
        raise FixedSpaceError(f"only {r} independent fixed vectors found, expected {n}")
    X = ExactMat(chosen[:n], K)
    assert X.conj() @ S == X
    return X


# ---------------------------------------------------------------------------
# post check


@dataclass
class PostCheck:
    status: str  # "clean" | "scalar-adjustable" | "anomalous"
    scheme: Scheme | None
    anomaly_index: int | None = None


def _as_scalar_times_rational(F: ExactMat) -> QElem | None:
    if F.is_rational:
        return F.field.one
    lead = next(x for row in F.entries for x in row if x)
    return lead if F.scale(lead.inverse()).is_rational else None


def post_check(s: Scheme) -> PostCheck:
    """Classify a transformed scheme and, when possible, rescale triples into Q."""
    if s.is_rational:
        return PostCheck("clean", s)
    out = s
    for j, (O, P, Q) in enumerate(s.triples):
        if O.is_rational and P.is_rational and Q.is_rational:
            continue
        alphas = [_as_scalar_times_rational(F) for F in (O, P, Q)]
        if any(a is None for a in alphas):
            return PostCheck("anomalous", None, j)
        a1, a2, a3 = alphas
        if (a1 * a2 * a3).b:
            return PostCheck("anomalous", None, j)
        out = scalar_redistribute(out, j, a1.inverse(), ("O", "Q"))
        out = scalar_redistribute(out, j, a2.inverse(), ("P", "Q"))
    return PostCheck("scalar-adjustable", out)


# ---------------------------------------------------------------------------
# the full pipeline


@dataclass
class Certificate:
    reason: str
    variant: str | None = None
    nullspace_dim: int | None = None
    beta: Fraction | None = None
    strategies_tried: list[str] = dc_field(default_factory=list)
    anomaly_index: int | None = None
    detail: str = ""

    def to_dict(self) -> dict:
        return {
            "reason": self.reason,
            "variant": self.variant,
            "nullspace_dim": self.nullspace_dim,
            "beta": None if self.beta is None else _fmt_q(self.beta),
            "strategies_tried": list(self.strategies_tried),
            "anomaly_index": self.anomaly_index,
            "detail": self.detail,
        }


@dataclass
class VariantReport:
    variant: str
    status: str
    nullspace_dim: int | None
    S: ExactMat | None = None
    matrix: ExactMat | None = None
    normalization: NormalizationReport | None = None
    note: str = ""

    def to_dict(self) -> dict:
        return {
            "variant": self.variant,
            "status": self.status,
            "nullspace_dim": self.nullspace_dim,
            "S": None if self.S is None else format_matrix_literal(self.S),
            "matrix": None if self.matrix is None else format_matrix_literal(self.matrix),
            "normalization": None if self.normalization is None else self.normalization.to_dict(),
            "note": self.note,
        }


@dataclass
class DescentOutcome:
    status: str
    transform: TransformTriple | None = None
    result_scheme: Scheme | None = None
    certificate: Certificate | None = None
    variants: list[VariantReport] = dc_field(default_factory=list)
    post_check: str | None = None

    def __bool__(self) -> bool:
        return self.status == SUCCESS

    def to_dict(self) -> dict:
        t = self.transform
        doc = {
            "status": self.status,
            "transform": None
            if t is None
            else {k: format_matrix_literal(getattr(t, k)) for k in ("X", "Y", "Z")},
            "identity_transform": None if t is None else t.is_identity(),
            "post_check": self.post_check,
            "ring": None if self.result_scheme is None else str(detect_ring(self.result_scheme)),
            "certificate": None if self.certificate is None else self.certificate.to_dict(),
            "variants": [v.to_dict() for v in self.variants],
        }
        return doc

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, ensure_ascii=False) + "\n"


def _fmt_q(q: Fraction) -> str:
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def _solve_variant(s: Scheme, variant: str, height, comb, use_legendre, max_candidates) -> VariantReport:
    return solve_family(products(s, variant), variant, height, comb, use_legendre, max_candidates)


def solve_family(
    Ms: Sequence[ExactMat],
    variant: str = "OPQ",
    height: int = DEFAULT_HEIGHT,
    comb: int = DEFAULT_COMB,
    use_legendre: bool = True,
    max_candidates: int = DEFAULT_MAX_CANDIDATES,
) -> VariantReport:
    """Matrix-level descent step: intertwiner, normalization and fixed space for one family."""
    K = Ms[0].field
    size = Ms[0].rows
    if all(M.is_rational for M in Ms):
        I = ExactMat.identity(size, K)
        return VariantReport(variant, SUCCESS, None, I, I, note="all products rational; S = I")
    sol = solve_intertwiner(Ms, height, comb, use_legendre, max_candidates)
    if sol.uniqueness == EMPTY:
        return VariantReport(variant, NO_SOLUTION, 0, note="intertwiner nullspace is empty")
    rep = sol.report
    if sol.normalized_S is None:
        if sol.dim == 1 and rep.scalar_test_failed == rep.candidates_examined:
            return VariantReport(
                variant, NO_SOLUTION, 1, normalization=rep,
                note="the only intertwiner direction B has B conj(B) not a nonzero rational scalar",
            )
        if sol.dim == 1 and rep.norm_sign_obstruction:
            return VariantReport(
                variant, NO_SOLUTION, 1, normalization=rep,
                note="B conj(B) = beta I with beta < 0, but norms are positive when d < 0",
            )
        if sol.dim == 1:
            note = "norm equation N(alpha) = 1/beta not solved by the bounded search"
        else:
            note = "multi-dimensional intertwiner space; no enumerated candidate normalizes"
        return VariantReport(variant, INCONCLUSIVE, sol.dim, normalization=rep, note=note)
    X = fixed_space(sol.normalized_S)
    return VariantReport(variant, SUCCESS, sol.dim, sol.normalized_S, X, rep)


def descend(
    s: Scheme,
    height: int = DEFAULT_HEIGHT,
    comb: int = DEFAULT_COMB,
    use_legendre: bool = True,
    max_candidates: int = DEFAULT_MAX_CANDIDATES,
) -> DescentOutcome:
    """Search for a De Groote equivalent scheme with rational coefficients.

    Returns a :class:`DescentOutcome` whose status is ``"Success"`` (with the
    transform and the rational scheme), ``"NoSolution"`` (some product family
    admits no normalized intertwiner, so no rational equivalent exists) or
    ``"Inconclusive"`` (the bounded searches ran out, or the transformed
    scheme is not rational up to scalars).
    """
    report = brent_verify(s)
    if not report:
        raise InvalidSchemeError(str(report))
    K = s.field
    if s.is_rational:
        t = TransformTriple.identity(s.dims, K)
        return DescentOutcome(
            SUCCESS, t, s, Certificate("already_rational", detail="input has no sqrt(d) parts"),
            post_check="clean",
        )

    variants: list[VariantReport] = []
    for v in VARIANTS:
        vr = _solve_variant(s, v, height, comb, use_legendre, max_candidates)
        variants.append(vr)
        if vr.status == NO_SOLUTION:
            rep = vr.normalization
            return DescentOutcome(
                NO_SOLUTION,
                certificate=Certificate(
                    "empty_admissible_family",
                    variant=v,
                    nullspace_dim=vr.nullspace_dim,
                    beta=None if rep is None else rep.beta,
                    strategies_tried=[] if rep is None else rep.strategies_tried,
                    detail=vr.note,
                ),
                variants=variants,
            )
    bad = next((vr for vr in variants if vr.status == INCONCLUSIVE), None)
    if bad is not None:
        rep = bad.normalization
        reason = "norm_equation" if bad.nullspace_dim == 1 else "multi_dimensional"
        return DescentOutcome(
            INCONCLUSIVE,
            certificate=Certificate(
                reason,
                variant=bad.variant,
                nullspace_dim=bad.nullspace_dim,
                beta=rep.beta,
                strategies_tried=rep.strategies_tried,
                detail=bad.note,
            ),
            variants=variants,
        )

    t = TransformTriple(variants[0].matrix, variants[1].matrix, variants[2].matrix)
    transformed = apply_transform(s, t)
    pc = post_check(transformed)
    if pc.status == "anomalous":
        return DescentOutcome(
            INCONCLUSIVE,
            transform=t,
            certificate=Certificate(
                "post_check_anomaly",
                anomaly_index=pc.anomaly_index,
                detail="a transformed factor is not a scalar multiple of a rational matrix",
            ),
            variants=variants,
            post_check=pc.status,
        )
    result = pc.scheme
    if not result.is_rational or not brent_verify(result):
        return DescentOutcome(
            INCONCLUSIVE,
            transform=t,
            certificate=Certificate("post_check_anomaly", detail="rescaled scheme failed verification"),
            variants=variants,
            post_check=pc.status,
        )
    return DescentOutcome(
        SUCCESS,
        t,
        result,
        Certificate("descended", detail="all three product families admit normalized intertwiners"),
        variants,
        pc.status,
    )
