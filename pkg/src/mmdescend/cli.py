"""Command line front end: ``mmdescend <command> <file> [options]``.

Exit codes: 0 ok, 1 usage/parse error, 2 Brent violation, 3 no rational
equivalent, 4 inconclusive descent, 5 no integrality obstruction found.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import __version__
from .exactnum import Field
from .formats import (
    BrentViolationError,
    SchemeFormatError,
    dump_encoding,
    dump_scheme,
    parse_matrix_literal,
    parse_scheme,
    matrix_from_json,
)
from .linalg import ExactMat, SingularMatrixError
from .obstruct import DEFAULT_DEPTH, UnsupportedFieldError, default_memo_cap, integer_obstruction
from .rationalize import (
    DEFAULT_COMB,
    DEFAULT_HEIGHT,
    INCONCLUSIVE,
    NO_SOLUTION,
    SUCCESS,
    descend,
)
from .scheme import VARIANTS, TransformTriple, apply_transform, brent_verify, detect_ring, product_traces

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_BRENT = 2
EXIT_NO_SOLUTION = 3
EXIT_INCONCLUSIVE = 4
EXIT_NO_OBSTRUCTION = 5


class CliError(Exception):
    def __init__(self, message: str, code: int = EXIT_USAGE):
        super().__init__(message)
        self.code = code


def _read(path: str, skip_verify: bool):
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise CliError(f"{path}: {exc.strerror or exc}") from None
    try:
        return parse_scheme(text, skip_verify=skip_verify)
    except SchemeFormatError as exc:
        raise CliError(f"{path}: {exc}") from None
    except BrentViolationError as exc:
        raise CliError(f"{path}: {exc}", EXIT_BRENT) from None


def _emit(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def cmd_verify(args) -> int:
    s, _ = _read(args.file, skip_verify=True)
    report = brent_verify(s)
    print(f"{s.label()}: {report}")
    return EXIT_OK if report else EXIT_BRENT


def cmd_info(args) -> int:
    s, form = _read(args.file, args.skip_verify)
    traces = ",".join(str(t) for t in product_traces(s, args.variant or "OPQ"))
    print(f"{s.label()}, ring {detect_ring(s)}, traces [{traces}]")
    print(f"field: {s.field} (d={s.field.d})")
    print(f"form: {form}")
    return EXIT_OK


def _load_matrix(value: str | None, size: int, K: Field, name: str) -> ExactMat:
    if value is None:
        return ExactMat.identity(size, K)
    try:
        p = Path(value)
        if not value.lstrip().startswith("[") and p.exists():
            A = matrix_from_json(json.loads(p.read_text(encoding="utf-8")), K, name)
        else:
            A = parse_matrix_literal(value, K)
    except (SchemeFormatError, json.JSONDecodeError, OSError) as exc:
        raise CliError(f"{name}: {exc}") from None
    if A.shape != (size, size):
        raise CliError(f"{name} must be {size}x{size}, got {A.rows}x{A.cols}")
    return A


def cmd_transform(args) -> int:
    s, form = _read(args.file, args.skip_verify)
    K = s.field
    mats = {
        name: _load_matrix(getattr(args, name.lower()), size, K, name)
        for name, size in zip("XYZ", s.dims)
    }
    for name, A in mats.items():
        if A.rank() < A.rows:
            raise CliError(f"{name} is singular (rank {A.rank()} < {A.rows})")
    try:
        t = TransformTriple(mats["X"], mats["Y"], mats["Z"])
    except SingularMatrixError as exc:  # pragma: no cover - rank check above
        raise CliError(str(exc)) from None
    out = apply_transform(s, t)
    report = brent_verify(out)
    if not report:
        raise CliError(f"transformed scheme fails verification: {report}", EXIT_BRENT)
    _emit(dump_scheme(out) if form == "triples" else dump_encoding(out), args.out)
    return EXIT_OK


def cmd_rationalize(args) -> int:
    s, form = _read(args.file, args.skip_verify)
    outcome = descend(s, height=args.height, comb=args.comb)
    sys.stdout.write(outcome.to_json())
    if outcome.status == SUCCESS:
        if args.out:
            r = outcome.result_scheme
            Path(args.out).write_text(dump_scheme(r) if form == "triples" else dump_encoding(r), encoding="utf-8")
        return EXIT_OK
    if outcome.status == NO_SOLUTION:
        return EXIT_NO_SOLUTION
    assert outcome.status == INCONCLUSIVE
    return EXIT_INCONCLUSIVE


def cmd_obstruct(args) -> int:
    s, _ = _read(args.file, args.skip_verify)
    try:
        report = integer_obstruction(s, args.variant or "OPQ", args.depth, default_memo_cap())
    except UnsupportedFieldError as exc:
        raise CliError(str(exc)) from None
    doc = report.to_dict()
    doc["summary"] = report.summary()
    doc["variant"] = args.variant or "OPQ"
    sys.stdout.write(json.dumps(doc, indent=2) + "\n")
    return EXIT_OK if report.found else EXIT_NO_OBSTRUCTION


def cmd_convert(args) -> int:
    s, form = _read(args.file, args.skip_verify)
    target = args.to or ("encoding" if form == "triples" else "triples")
    _emit(dump_scheme(s) if target == "triples" else dump_encoding(s), args.out)
    return EXIT_OK


COMMANDS = {
    "verify": cmd_verify,
    "info": cmd_info,
    "transform": cmd_transform,
    "rationalize": cmd_rationalize,
    "obstruct": cmd_obstruct,
    "convert": cmd_convert,
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="mmdescend",
        description="Exact tools for matrix multiplication schemes over Q[sqrt(d)].",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    parser.add_argument("command", choices=sorted(COMMANDS))
    parser.add_argument("file", help="scheme file (triple or encoding form)")
    parser.add_argument("--out", help="output file")
    parser.add_argument("--depth", type=int, default=DEFAULT_DEPTH, help="obstruct: maximal product length")
    parser.add_argument("--height", type=int, default=DEFAULT_HEIGHT, help="rationalize: norm search height bound")
    parser.add_argument("--comb", type=int, default=DEFAULT_COMB, help="rationalize: combination coefficient bound")
    parser.add_argument("--variant", choices=VARIANTS, help="product family (default OPQ)")
    parser.add_argument("--seed", type=int, default=0, help="accepted for scripting; all commands are deterministic")
    parser.add_argument("--skip-verify", action="store_true", help="do not check Brent equations on load")
    parser.add_argument("--x", help="transform: X as literal [[..],[..]] or JSON file")
    parser.add_argument("--y", help="transform: Y")
    parser.add_argument("--z", help="transform: Z")
    parser.add_argument("--to", choices=("triples", "encoding"), help="convert: target form")
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_USAGE
    if args.depth < 1:
        print("mmdescend: --depth must be at least 1", file=sys.stderr)
        return EXIT_USAGE
    try:
        return COMMANDS[args.command](args)
    except CliError as exc:
        print(f"mmdescend {args.command}: {exc}", file=sys.stderr)
        return exc.code


if __name__ == "__main__":
    sys.exit(main())
