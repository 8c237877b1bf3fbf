"""Plain-text matrix streams.

Format::

    PHM v1 m=<m> kind=<tag>
    <m lines of m characters from {0,1}>
    <blank line>
    ...

Lines end with a single line feed and carry no trailing whitespace.
"""

from __future__ import annotations

import io
import re
from dataclasses import dataclass
from typing import Iterable, Iterator, List, TextIO, Tuple

from .matrix import BinMatrix

VERSION = 1
KINDS = ("row-gram", "pseudo", "hadamard", "unverified")

_HEADER_RE = re.compile(r"PHM v(\d+) m=(\d+) kind=(\S+)")


class StreamFormatError(ValueError):
    """Malformed matrix stream; ``line`` is 1-based."""

    def __init__(self, line: int, message: str):
        super().__init__(f"line {line}: {message}")
        self.line = line


class HeaderError(StreamFormatError):
    pass


class CharacterError(StreamFormatError):
    pass


class RaggedRowError(StreamFormatError):
    pass


class TruncatedMatrixError(StreamFormatError):
    pass


class MissingSeparatorError(StreamFormatError):
    pass


@dataclass(frozen=True)
class MatrixStreamHeader:
    m: int
    kind: str = "unverified"
    version: int = VERSION

    def __post_init__(self):
        if self.version != VERSION:
            raise ValueError(f"unsupported format version {self.version}")
        if self.m < 1:
            raise ValueError(f"m must be positive, got {self.m}")
        if self.kind not in KINDS:
            raise ValueError(f"unknown kind {self.kind!r}; expected one of {', '.join(KINDS)}")

    def render(self) -> str:
        return f"PHM v{self.version} m={self.m} kind={self.kind}"


class MatrixStreamWriter:
    """Incremental writer; usable directly as a generator sink."""

    def __init__(self, sink: TextIO, header: MatrixStreamHeader):
        self.sink = sink
        self.header = header
        self.count = 0
        sink.write(header.render() + "\n")

    def write(self, M: BinMatrix) -> None:
        if M.m != self.header.m:
            raise ValueError(f"matrix of size {M.m} written to a stream of size {self.header.m}")
        self.sink.write("\n".join(M.to_strings()) + "\n\n")
        self.count += 1

    __call__ = write


def write_stream(sink: TextIO, header: MatrixStreamHeader, matrices: Iterable[BinMatrix]) -> int:
    w = MatrixStreamWriter(sink, header)
    for M in matrices:
        w.write(M)
    return w.count


def _parse_header(line: str) -> MatrixStreamHeader:
    match = _HEADER_RE.fullmatch(line)
    if match is None:
        raise HeaderError(1, f"malformed header {line!r}")
    version, m, kind = int(match.group(1)), int(match.group(2)), match.group(3)
    try:
        return MatrixStreamHeader(m=m, kind=kind, version=version)
    except ValueError as exc:
        raise HeaderError(1, str(exc)) from None


def iter_stream(source: TextIO) -> Tuple[MatrixStreamHeader, Iterator[BinMatrix]]:
    """Parse the header eagerly and the matrices lazily."""
    lines = iter(source)
    first = next(lines, None)
    if first is None:
        raise HeaderError(1, "empty input, expected a header line")
    header = _parse_header(first.rstrip("\n"))

    def matrices() -> Iterator[BinMatrix]:
        m = header.m
        block: List[str] = []
        start = 0
        lineno = 1
        for raw in lines:
            lineno += 1
            line = raw.rstrip("\n")
            if len(block) == m:
                if line != "":
                    raise MissingSeparatorError(lineno, f"expected a blank line after {m} rows, got {line!r}")
                yield BinMatrix.from_strings(block)
                block = []
                continue
            if not block:
                start = lineno
                if line == "":
                    raise TruncatedMatrixError(lineno, "unexpected blank line, expected a matrix row")
            if line == "":
                raise TruncatedMatrixError(
                    lineno, f"matrix starting at line {start} has {len(block)} rows, expected {m}"
                )
            bad = next((ch for ch in line if ch not in "01"), None)
            if bad is not None:
                raise CharacterError(lineno, f"invalid character {bad!r}")
            if len(line) != m:
                raise RaggedRowError(lineno, f"row has {len(line)} characters, expected {m}")
            block.append(line)
        if block:
            if len(block) == m:
                raise MissingSeparatorError(lineno, f"matrix starting at line {start} lacks its closing blank line")
            raise TruncatedMatrixError(
                lineno, f"matrix starting at line {start} has {len(block)} rows, expected {m}"
            )

    return header, matrices()


def read_stream(source: TextIO) -> Tuple[MatrixStreamHeader, List[BinMatrix]]:
    header, it = iter_stream(source)
    return header, list(it)


def dumps(header: MatrixStreamHeader, matrices: Iterable[BinMatrix]) -> str:
    buf = io.StringIO()
    write_stream(buf, header, matrices)
    return buf.getvalue()


def loads(text: str) -> Tuple[MatrixStreamHeader, List[BinMatrix]]:
    return read_stream(io.StringIO(text))
