"""Bundled reference data: Strassen's scheme, toy schemes and small matrices."""

from __future__ import annotations

from importlib import resources

from .exactnum import Field
from .linalg import ExactMat
from .scheme import EncodingMatrices, Scheme, TransformTriple, Triple, apply_transform, from_encoding

__all__ = [
    "STRASSEN_U",
    "STRASSEN_V",
    "STRASSEN_W",
    "strassen",
    "complexified_strassen",
    "half_trace_scheme",
    "nonreal_scheme",
    "diag_i_one",
    "diag_i_minus_i",
    "g444_S_basis",
    "g444_PQO_S_basis",
    "g444_X",
    "g444_Y",
    "g444_Y_simple",
    "g444_Z",
    "data_path",
]

STRASSEN_U = [
    [1, 0, 0, 1],
    [0, 0, 1, 1],
    [1, 0, 0, 0],
    [0, 0, 0, 1],
    [1, 1, 0, 0],
    [-1, 0, 1, 0],
    [0, 1, 0, -1],
]
STRASSEN_V = [
    [1, 0, 0, 1],
    [1, 0, 0, 0],
    [0, 1, 0, -1],
    [-1, 0, 1, 0],
    [0, 0, 0, 1],
    [1, 1, 0, 0],
    [0, 0, 1, 1],
]
STRASSEN_W = [
    [1, 0, 0, 1],
    [0, 0, 1, -1],
    [0, 1, 0, 1],
    [1, 0, 1, 0],
    [-1, 1, 0, 0],
    [0, 0, 0, 1],
    [1, 0, 0, 0],
]


def strassen(field: Field = Field(-1)) -> Scheme:
    """Strassen's ``<2,2,2,7>`` scheme built from its encoding matrices."""
    K = Field(field)
    enc = EncodingMatrices(
        ExactMat(STRASSEN_U, K), ExactMat(STRASSEN_V, K), ExactMat(STRASSEN_W, K), (2, 2, 2)
    )
    return from_encoding(enc)


def complexified_strassen() -> Scheme:
    """Strassen conjugated by ``X0=[[1,i],[0,1]]``, ``Y0=[[i,0],[1,1]]``, ``Z0=I``."""
    K = Field(-1)
    t = TransformTriple(
        ExactMat([[1, "i"], [0, 1]], K),
        ExactMat([["i", 0], [1, 1]], K),
        ExactMat.identity(2, K),
    )
    return apply_transform(strassen(K), t)


def half_trace_scheme() -> Scheme:
    """A ``<2,1,1,4>`` scheme over Z[1/2] whose first integrality obstruction has depth 2.

    Its ``O_jP_jQ_j`` are ``[[0,1],[0,0]]``, ``[[0,0],[1/2,0]]``,
    ``[[1,-1],[0,0]]`` and ``[[0,0],[-1/2,1]]``: every trace is an integer but
    the product of the first two has trace 1/2.
    """
    K = Field(-1)
    cols = [((1, 0), (0, 1)), ((0, 1), ("1/2", 0)), ((1, 0), (1, -1)), ((0, 1), ("-1/2", 1))]
    triples = [
        Triple(ExactMat([[u[0]], [u[1]]], K), ExactMat([[1]], K), ExactMat([list(v)], K))
        for u, v in cols
    ]
    return Scheme(2, 1, 1, tuple(triples), K)


def nonreal_scheme() -> Scheme:
    """A ``<2,1,1,3>`` scheme over Q[i] with ``O_1P_1Q_1 = diag(i, 0)``.

    That product has a non-real characteristic polynomial, so no rational
    scheme is equivalent to this one.
    """
    K = Field(-1)
    cols = [((1, 0), ("i", 0)), ((0, 1), (0, 1)), ((1, 0), ("1-i", 0))]
    triples = [
        Triple(ExactMat([[u[0]], [u[1]]], K), ExactMat([[1]], K), ExactMat([list(v)], K))
        for u, v in cols
    ]
    return Scheme(2, 1, 1, tuple(triples), K)


def diag_i_one() -> ExactMat:
    return ExactMat.diag(["i", 1], Field(-1))


def diag_i_minus_i() -> ExactMat:
    return ExactMat.diag(["i", "-i"], Field(-1))


# g444_*: matrices from the descent of the published <4,4,4,48> scheme over Q[i]
def g444_S_basis() -> ExactMat:
    """Spanning element of the OPQ intertwiner space for the published ``<4,4,4,48>`` Q[i] scheme."""
    return ExactMat([[0, 0, 0, 1], [0, 0, "i", 0], [0, "i", 0, 0], [1, 0, 0, 0]], Field(-1))


def g444_PQO_S_basis() -> ExactMat:
    return ExactMat.diag([-1, -1, -1, 1], Field(-1))


def g444_X() -> ExactMat:
    return ExactMat([[1, 0, 0, 1], [0, 1, "i", 0], [0, "i", 1, 0], ["i", 0, 0, "-i"]], Field(-1))


def g444_Y() -> ExactMat:
    return ExactMat([["-i", "i", "i", 0], [0, "-i", 0, 0], [0, 0, "-i", 0], [0, 0, 0, 1]], Field(-1))


def g444_Y_simple() -> ExactMat:
    return ExactMat.diag(["i", "i", "i", 1], Field(-1))


def g444_Z() -> ExactMat:
    h, mh = "1/2", "-1/2"
    return ExactMat([[h, mh, h, 0], [h, h, mh, 0], [mh, h, h, 0], [0, 0, 0, 1]], Field(-1))


def data_path(name: str):
    """Path of a bundled JSON fixture, e.g. ``data_path("strassen.json")``."""
    return resources.files("mmdescend") / "data" / name
