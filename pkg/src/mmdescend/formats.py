"""Canonical text formats for schemes and matrices.

Triple form::

    {"dims": [m, n, p], "rank": r, "field": {"d": D},
     "triples": [{"O": [[...]], "P": [[...]], "Q": [[...]]}, ...]}

Encoding form::

    {"dims": [m, n, p], "field": {"d": D}, "U": [[...]], "V": [[...]], "W": [[...]]}

Entries are strings in the entry grammar of :mod:`mmdescend.exactnum`.
Output is canonical (fixed key order, reduced fractions, one matrix row per
line fragment) so files are diff-stable.
"""

from __future__ import annotations

import json
import os
import re
from pathlib import Path

from .exactnum import EntryParseError, Field, format_entry
from .linalg import DimensionError, ExactMat
from .scheme import EncodingMatrices, Scheme, Triple, brent_verify, from_encoding, to_encoding

__all__ = [
    "SchemeFormatError",
    "BrentViolationError",
    "DEFAULT_D",
    "parse_scheme",
    "load_scheme",
    "dump_scheme",
    "dump_encoding",
    "save_scheme",
    "parse_matrix_literal",
    "matrix_to_json",
    "matrix_from_json",
]

# Rational schemes that omit the "field" key are stored over Q[i].
DEFAULT_D = -1


class SchemeFormatError(ValueError):
    """Malformed scheme document; ``line``/``column`` are set for JSON syntax errors."""

    def __init__(self, message: str, line: int | None = None, column: int | None = None):
        if line is not None:
            message = f"line {line}, column {column}: {message}"
        super().__init__(message)
        self.line = line
        self.column = column


class BrentViolationError(ValueError):
    """Raised when a loaded scheme fails the Brent equations."""

    def __init__(self, report):
        super().__init__(str(report))
        self.report = report


def _mat_json(A: ExactMat) -> str:
    rows = ", ".join("[" + ", ".join(json.dumps(c) for c in r) + "]" for r in A.to_strings())
    return f"[{rows}]"


def matrix_to_json(A: ExactMat) -> list[list[str]]:
    return A.to_strings()


def matrix_from_json(obj, K: Field, where: str = "matrix") -> ExactMat:
    if not isinstance(obj, list) or not obj or not all(isinstance(r, list) for r in obj):
        raise SchemeFormatError(f"{where}: expected a non-empty list of rows")
    try:
        return ExactMat(obj, K)
    except (EntryParseError, TypeError) as exc:
        raise SchemeFormatError(f"{where}: {exc}") from None
    except DimensionError as exc:
        raise SchemeFormatError(f"{where}: {exc}") from None


def dump_scheme(s: Scheme) -> str:
    lines = [
        "{",
        f'  "dims": [{s.m}, {s.n}, {s.p}],',
        f'  "rank": {s.r},',
        f'  "field": {{"d": {s.field.d}}},',
        '  "triples": [',
    ]
    body = [
        f'    {{"O": {_mat_json(t.O)}, "P": {_mat_json(t.P)}, "Q": {_mat_json(t.Q)}}}'
        for t in s.triples
    ]
    lines.append(",\n".join(body))
    lines += ["  ]", "}"]
    return "\n".join(lines) + "\n"


def dump_encoding(s: Scheme) -> str:
    e = to_encoding(s)
    out = [
        "{",
        f'  "dims": [{s.m}, {s.n}, {s.p}],',
        f'  "field": {{"d": {s.field.d}}},',
    ]
    for name, M in (("U", e.U), ("V", e.V), ("W", e.W)):
        rows = ",\n".join("    [" + ", ".join(json.dumps(c) for c in r) + "]" for r in M.to_strings())
        out.append(f'  "{name}": [\n{rows}\n  ]' + ("," if name != "W" else ""))
    out.append("}")
    return "\n".join(out) + "\n"


def _read_dims(doc) -> tuple[int, int, int]:
    dims = doc.get("dims")
    if (
        not isinstance(dims, list)
        or len(dims) != 3
        or not all(isinstance(x, int) and not isinstance(x, bool) and x > 0 for x in dims)
    ):
        raise SchemeFormatError(f'"dims" must be three positive integers, got {dims!r}')
    return tuple(dims)


def _read_field(doc) -> Field:
    f = doc.get("field", {"d": DEFAULT_D})
    if not isinstance(f, dict) or "d" not in f:
        raise SchemeFormatError('"field" must be an object like {"d": -1}')
    try:
        return Field(f["d"])
    except (TypeError, ValueError) as exc:
        raise SchemeFormatError(f'"field": {exc}') from None


def scheme_from_doc(doc) -> tuple[Scheme, str]:
    """Build a scheme from a decoded JSON document; returns ``(scheme, form)``."""
    if not isinstance(doc, dict):
        raise SchemeFormatError("top-level value must be an object")
    dims = _read_dims(doc)
    K = _read_field(doc)
    m, n, p = dims
    if "triples" in doc:
        triples = doc["triples"]
        if not isinstance(triples, list) or not triples:
            raise SchemeFormatError('"triples" must be a non-empty list (rank >= 1)')
        if "rank" in doc and doc["rank"] != len(triples):
            raise SchemeFormatError(f'"rank" is {doc["rank"]} but {len(triples)} triples are given')
        out = []
        for j, t in enumerate(triples):
            if not isinstance(t, dict) or set(t) != {"O", "P", "Q"}:
                raise SchemeFormatError(f'triple {j}: expected keys "O", "P", "Q"')
            out.append(Triple(*(matrix_from_json(t[k], K, f"triple {j} {k}") for k in "OPQ")))
        try:
            return Scheme(m, n, p, tuple(out), K), "triples"
        except (DimensionError, ValueError) as exc:
            raise SchemeFormatError(str(exc)) from None
    if {"U", "V", "W"} <= set(doc):
        U, V, W = (matrix_from_json(doc[k], K, k) for k in "UVW")
        try:
            return from_encoding(EncodingMatrices(U, V, W, dims)), "encoding"
        except (DimensionError, ValueError) as exc:
            raise SchemeFormatError(str(exc)) from None
    raise SchemeFormatError('document needs either "triples" or "U", "V", "W"')


def parse_scheme(text: str, skip_verify: bool = False) -> tuple[Scheme, str]:
    """Parse a scheme document; Brent equations are checked unless ``skip_verify``."""
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SchemeFormatError(exc.msg, exc.lineno, exc.colno) from None
    s, form = scheme_from_doc(doc)
    if not skip_verify:
        report = brent_verify(s)
        if not report:
            raise BrentViolationError(report)
    return s, form


def load_scheme(path: str | os.PathLike, skip_verify: bool = False) -> Scheme:
    return parse_scheme(Path(path).read_text(encoding="utf-8"), skip_verify)[0]


def save_scheme(s: Scheme, path: str | os.PathLike, form: str = "triples") -> None:
    text = dump_scheme(s) if form == "triples" else dump_encoding(s)
    Path(path).write_text(text, encoding="utf-8")


_ROW_RE = re.compile(r"\[([^\[\]]*)\]")


def parse_matrix_literal(text: str, K: Field) -> ExactMat:
    """Parse ``"[[1,0],[0,i]]"`` style literals (entries need no quotes)."""
    body = text.strip()
    if not (body.startswith("[[") and body.endswith("]]")):
        raise SchemeFormatError(f"matrix literal must look like [[a,b],[c,d]], got {text!r}")
    rows = [
        [c.strip().strip('"').strip("'") for c in m.group(1).split(",")]
        for m in _ROW_RE.finditer(body[1:-1])
    ]
    return matrix_from_json(rows, K, "matrix literal")


def format_matrix_literal(A: ExactMat) -> str:
    return "[" + ",".join("[" + ",".join(format_entry(x) for x in r) + "]" for r in A.entries) + "]"
