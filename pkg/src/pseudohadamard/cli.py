"""Command-line interface.

Exit codes: 0 success, 1 I/O or parse error, 2 usage or size error,
3 semantic failure (a predicate or precondition did not hold).
"""

from __future__ import annotations

import argparse
import contextlib
import sys
from typing import Optional, Sequence

from . import generator, oracle
from .matrix import BinMatrix, hadamard_q, is_hadamard, is_pseudo_hadamard, is_row_gram_pseudo, pseudo_q
from .matrix_io import MatrixStreamHeader, MatrixStreamWriter, StreamFormatError, read_stream
from .transform import (
    conjecture_5_1_fix,
    conjecture_5_2_fix,
    extract_first_generation,
    lift_to_hadamard,
    normalize_hadamard,
    transpose,
)

EXIT_OK = 0
EXIT_IO = 1
EXIT_USAGE = 2
EXIT_FAIL = 3

PREDICATES = {
    "row-gram": is_row_gram_pseudo,
    "pseudo": is_pseudo_hadamard,
    "hadamard": is_hadamard,
}


def _err(msg: str) -> None:
    print(msg, file=sys.stderr)


@contextlib.contextmanager
def _open_out(path: str):
    if path == "-":
        yield sys.stdout
    else:
        with open(path, "w", encoding="ascii", newline="\n") as f:
            yield f


@contextlib.contextmanager
def _open_in(path: str):
    if path == "-":
        yield sys.stdin
    else:
        with open(path, encoding="ascii", newline="\n") as f:
            yield f


def _load(path: str):
    with _open_in(path) as f:
        return read_stream(f)


def _positive(text: str) -> int:
    value = int(text)
    if value <= 0:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text}")
    return value


def cmd_generate(args) -> int:
    try:
        q = generator.check_size(args.size)
    except generator.SizeError as exc:
        _err(str(exc))
        return EXIT_USAGE
    header = MatrixStreamHeader(m=args.size, kind="row-gram")
    with _open_out(args.output) as out:
        writer = MatrixStreamWriter(out, header)
        report = generator.generate(
            args.size,
            limit=args.limit,
            sink=writer,
            progress_every=args.progress_every,
            jobs=args.jobs,
            engine=args.engine,
        )
    _err(
        f"m={args.size} q={q}: {report.matrices_emitted} matrices in {report.elapsed:.3f} s"
        f" ({report.rate_per_minute:.0f} matrices/minute)"
        + (", limit reached" if report.limit_reached else "")
    )
    return EXIT_OK


def cmd_count(args) -> int:
    try:
        generator.check_size(args.size)
    except generator.SizeError as exc:
        _err(str(exc))
        return EXIT_USAGE
    report = generator.generate(args.size, limit=args.limit, jobs=args.jobs, engine=args.engine)
    print(report.matrices_emitted)
    return EXIT_OK


def cmd_oracle(args) -> int:
    m = args.size
    if pseudo_q(m) is None or m > oracle.MAX_ORACLE_SIZE:
        _err(f"Error: m={m} is incorrect size for the oracle (need m = 4q-2 <= {oracle.MAX_ORACLE_SIZE})")
        return EXIT_USAGE
    found = oracle.brute_force_row_gram(m)
    canonical = {oracle.canonicalize(M) for M in found}
    print(f"total {len(found)}")
    print(f"canonical {len(canonical)}")
    return EXIT_OK


def cmd_verify(args) -> int:
    predicate = PREDICATES[args.mode]
    _, matrices = _load(args.input)
    failed = 0
    for i, M in enumerate(matrices):
        ok = predicate(M)
        failed += not ok
        print(f"matrix {i}: {'PASS' if ok else 'FAIL'}")
    print(f"{len(matrices)} checked, {len(matrices) - failed} passed, {failed} failed")
    return EXIT_FAIL if failed else EXIT_OK


def _transform_all(args, matrices, fn, precondition, out_m: int, kind: str) -> int:
    bad = [i for i, M in enumerate(matrices) if not precondition(M)]
    if bad:
        _err("precondition failed for matrices: " + ", ".join(map(str, bad)))
        return EXIT_FAIL
    with _open_out(args.output) as out:
        writer = MatrixStreamWriter(out, MatrixStreamHeader(m=out_m, kind=kind))
        for M in matrices:
            writer.write(fn(M))
    _err(f"{len(matrices)} matrices written")
    return EXIT_OK


def cmd_lift(args) -> int:
    header, matrices = _load(args.input)
    if pseudo_q(header.m) is None:
        _err(f"m={header.m} is not a pseudo-Hadamard size (4q-2)")
        return EXIT_FAIL
    return _transform_all(args, matrices, lift_to_hadamard, is_pseudo_hadamard, header.m + 1, "hadamard")


def cmd_extract(args) -> int:
    header, matrices = _load(args.input)
    if hadamard_q(header.m) is None:
        _err(f"m={header.m} is not a Hadamard size (4q-1)")
        return EXIT_FAIL

    def extract(H: BinMatrix) -> BinMatrix:
        return extract_first_generation(normalize_hadamard(H))

    return _transform_all(args, matrices, extract, is_hadamard, header.m - 1, "pseudo")


def cmd_conjecture(args) -> int:
    _, matrices = _load(args.input)
    if args.dual:
        fix, precondition, what = conjecture_5_2_fix, lambda M: is_row_gram_pseudo(transpose(M)), "row"
    else:
        fix, precondition, what = conjecture_5_1_fix, is_row_gram_pseudo, "column"
    bad = [i for i, M in enumerate(matrices) if not precondition(M)]
    if bad:
        _err("precondition failed for matrices: " + ", ".join(map(str, bad)))
        return EXIT_FAIL
    witnesses = 0
    for i, M in enumerate(matrices):
        p = fix(M)
        if p is None:
            print(f"matrix {i}: NONE")
        else:
            witnesses += 1
            print(f"matrix {i}: {what} permutation " + " ".join(map(str, p.image)))
    print(f"{len(matrices)} checked, {witnesses} witnesses, {len(matrices) - witnesses} without witness")
    return EXIT_OK if witnesses == len(matrices) else EXIT_FAIL


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="phm",
        description="Generate, verify and transform pseudo-Hadamard matrices of the first generation.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("generate", help="exhaustively generate canonical row-Gram-valid matrices")
    p.add_argument("--size", "-m", type=int, required=True)
    p.add_argument("--limit", type=_positive)
    p.add_argument("--output", "-o", default="-", help="output file ('-' for stdout)")
    p.add_argument("--progress-every", type=_positive, help="print a timestamp every K matrices")
    p.add_argument("--jobs", type=_positive, default=1, help="worker processes (default 1)")
    p.add_argument("--engine", choices=generator.ENGINES, default="python", help="search implementation")
    p.set_defaults(func=cmd_generate)

    p = sub.add_parser("count", help="count generated matrices without writing them")
    p.add_argument("--size", "-m", type=int, required=True)
    p.add_argument("--limit", type=_positive)
    p.add_argument("--jobs", type=_positive, default=1)
    p.add_argument("--engine", choices=generator.ENGINES, default="python")
    p.set_defaults(func=cmd_count)

    p = sub.add_parser("oracle", help="brute-force all row-Gram-valid matrices (m <= 10)")
    p.add_argument("--size", "-m", type=int, required=True)
    p.set_defaults(func=cmd_oracle)

    p = sub.add_parser("verify", help="check every matrix of a stream with a predicate")
    p.add_argument("--input", "-i", required=True)
    p.add_argument("--mode", choices=sorted(PREDICATES), required=True)
    p.set_defaults(func=cmd_verify)

    for name, func, text in (
        ("lift", cmd_lift, "adjoin the initial row and column to pseudo-Hadamard matrices"),
        ("extract", cmd_extract, "normalize Hadamard matrices and delete the initial row and column"),
    ):
        p = sub.add_parser(name, help=text)
        p.add_argument("--input", "-i", required=True)
        p.add_argument("--output", "-o", default="-")
        p.set_defaults(func=func)

    p = sub.add_parser("conjecture", help="find a column permutation making each matrix pseudo-Hadamard")
    p.add_argument("--input", "-i", required=True)
    p.add_argument("--dual", action="store_true", help="permute rows of column-Gram-valid matrices instead")
    p.set_defaults(func=cmd_conjecture)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except StreamFormatError as exc:
        _err(f"malformed input: {exc}")
        return EXIT_IO
    except OSError as exc:
        _err(f"I/O error: {exc}")
        return EXIT_IO
    except RuntimeError as exc:
        _err(str(exc))
        return EXIT_USAGE


def run() -> None:
    sys.exit(main())


if __name__ == "__main__":
    run()
