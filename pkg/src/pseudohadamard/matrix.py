"""Zero-one matrices with bit-packed rows and the Gram-matrix predicates.

Rows are stored as Python ints; bit ``k`` of a row is the entry in column
``k``.  The scalar product of two rows is ``(r & s).bit_count()``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Optional, Sequence, Tuple

IntMatrix = Tuple[Tuple[int, ...], ...]

HADAMARD = "hadamard"
PSEUDO = "pseudo"


@dataclass(frozen=True)
class BinMatrix:
    """Square {0,1} matrix of size ``m`` with rows packed into ints."""

    m: int
    rows: Tuple[int, ...]

    def __post_init__(self):
        if self.m < 1:
            raise ValueError(f"matrix size must be positive, got {self.m}")
        rows = tuple(self.rows)
        object.__setattr__(self, "rows", rows)
        if len(rows) != self.m:
            raise ValueError(f"expected {self.m} rows, got {len(rows)}")
        limit = 1 << self.m
        for i, r in enumerate(rows):
            if r < 0 or r >= limit:
                raise ValueError(f"row {i} has bits outside columns 0..{self.m - 1}")

    @classmethod
    def from_lists(cls, entries: Sequence[Sequence[int]]) -> "BinMatrix":
        m = len(entries)
        rows = []
        for i, line in enumerate(entries):
            if len(line) != m:
                raise ValueError(f"row {i} has length {len(line)}, expected {m}")
            r = 0
            for k, v in enumerate(line):
                if v not in (0, 1):
                    raise ValueError(f"entry ({i}, {k}) is {v!r}, not 0 or 1")
                if v:
                    r |= 1 << k
            rows.append(r)
        return cls(m, tuple(rows))

    @classmethod
    def from_strings(cls, lines: Iterable[str]) -> "BinMatrix":
        return cls.from_lists([[int(ch) for ch in line] for line in lines])

    @classmethod
    def identity(cls, m: int) -> "BinMatrix":
        return cls(m, tuple(1 << i for i in range(m)))

    @classmethod
    def zeros(cls, m: int) -> "BinMatrix":
        return cls(m, (0,) * m)

    @classmethod
    def ones(cls, m: int) -> "BinMatrix":
        return cls(m, ((1 << m) - 1,) * m)

    def __getitem__(self, ij: Tuple[int, int]) -> int:
        i, k = ij
        return (self.rows[i] >> k) & 1

    def to_lists(self) -> list[list[int]]:
        return [[(r >> k) & 1 for k in range(self.m)] for r in self.rows]

    def to_strings(self) -> list[str]:
        return ["".join("1" if (r >> k) & 1 else "0" for k in range(self.m)) for r in self.rows]

    def column(self, k: int) -> int:
        """Column ``k`` packed the same way as a row (bit ``i`` = row ``i``)."""
        c = 0
        for i, r in enumerate(self.rows):
            if (r >> k) & 1:
                c |= 1 << i
        return c

    def columns(self) -> Tuple[int, ...]:
        return tuple(self.column(k) for k in range(self.m))

    def row_weights(self) -> Tuple[int, ...]:
        return tuple(r.bit_count() for r in self.rows)

    def column_sums(self) -> Tuple[int, ...]:
        return tuple(sum((r >> k) & 1 for r in self.rows) for k in range(self.m))

    def __str__(self) -> str:
        return "\n".join(self.to_strings())


def transpose(M: BinMatrix) -> BinMatrix:
    return BinMatrix(M.m, M.columns())


def _gram(vectors: Sequence[int]) -> IntMatrix:
    n = len(vectors)
    g = [[0] * n for _ in range(n)]
    for i in range(n):
        vi = vectors[i]
        g[i][i] = vi.bit_count()
        for j in range(i + 1, n):
            g[i][j] = g[j][i] = (vi & vectors[j]).bit_count()
    return tuple(tuple(row) for row in g)


def gram_of_rows(M: BinMatrix) -> IntMatrix:
    """Pairwise scalar products of the rows of ``M``."""
    return _gram(M.rows)


def gram_of_cols(M: BinMatrix) -> IntMatrix:
    """Pairwise scalar products of the columns of ``M``."""
    return _gram(M.columns())


@dataclass(frozen=True)
class GramTarget:
    """Parameters of the expected Gram matrix for a given ``q``.

    ``kind="hadamard"``: ``m = 4q-1``, diagonal ``b = 2q``, off-diagonal ``a = q``.
    ``kind="pseudo"``: ``m = 4q-2``; the first ``2q-1`` indices form a block
    with diagonal ``b_tilde = b-1`` and off-diagonal ``a_tilde = a-1``.
    """

    kind: str
    q: int
    m: int
    a: int
    b: int
    a_tilde: Optional[int] = None
    b_tilde: Optional[int] = None

    def __post_init__(self):
        q = self.q
        if not isinstance(q, int) or q < 1:
            raise ValueError(f"q must be a positive integer, got {q!r}")
        if self.a != q or self.b != 2 * q:
            raise ValueError(f"need a = q and b = 2q, got a={self.a}, b={self.b}, q={q}")
        if self.kind == HADAMARD:
            if self.m != 4 * q - 1:
                raise ValueError(f"Hadamard target needs m = 4q-1 = {4 * q - 1}, got {self.m}")
        elif self.kind == PSEUDO:
            if self.m != 4 * q - 2:
                raise ValueError(f"pseudo-Hadamard target needs m = 4q-2 = {4 * q - 2}, got {self.m}")
            if self.a_tilde != self.a - 1 or self.b_tilde != self.b - 1:
                raise ValueError("pseudo-Hadamard target needs a_tilde = a-1 and b_tilde = b-1")
        else:
            raise ValueError(f"unknown target kind {self.kind!r}")

    @classmethod
    def hadamard(cls, q: int) -> "GramTarget":
        return cls(HADAMARD, q, 4 * q - 1, q, 2 * q)

    @classmethod
    def pseudo(cls, q: int) -> "GramTarget":
        return cls(PSEUDO, q, 4 * q - 2, q, 2 * q, q - 1, 2 * q - 1)

    def entry(self, i: int, j: int) -> int:
        if self.kind == HADAMARD:
            return self.b if i == j else self.a
        block = 2 * self.q - 1
        if i < block and j < block:
            return self.b_tilde if i == j else self.a_tilde
        return self.b if i == j else self.a


def expected_gram(t: GramTarget) -> IntMatrix:
    return tuple(tuple(t.entry(i, j) for j in range(t.m)) for i in range(t.m))


def hadamard_q(m: int) -> Optional[int]:
    """``q`` with ``m = 4q-1``, or None."""
    if m >= 3 and m % 4 == 3:
        return (m + 1) // 4
    return None


def pseudo_q(m: int) -> Optional[int]:
    """``q`` with ``m = 4q-2``, or None."""
    if m >= 2 and m % 4 == 2:
        return (m + 2) // 4
    return None


def _matches(vectors: Sequence[int], t: GramTarget) -> bool:
    # compares entry by entry without materialising the Gram matrix
    n = len(vectors)
    for i in range(n):
        vi = vectors[i]
        if vi.bit_count() != t.entry(i, i):
            return False
        for j in range(i + 1, n):
            if (vi & vectors[j]).bit_count() != t.entry(i, j):
                return False
    return True


def is_hadamard(M: BinMatrix) -> bool:
    q = hadamard_q(M.m)
    if q is None:
        return False
    return _matches(M.rows, GramTarget.hadamard(q))


def is_row_gram_pseudo(M: BinMatrix) -> bool:
    q = pseudo_q(M.m)
    if q is None:
        return False
    return _matches(M.rows, GramTarget.pseudo(q))


def is_col_gram_pseudo(M: BinMatrix) -> bool:
    q = pseudo_q(M.m)
    if q is None:
        return False
    return _matches(M.columns(), GramTarget.pseudo(q))


def is_pseudo_hadamard(M: BinMatrix) -> bool:
    """True iff both the row and the column Gramians have the block form.

    This is exactly membership in the first generation of pseudo-Hadamard
    matrices.
    """
    return is_row_gram_pseudo(M) and is_col_gram_pseudo(M)
