"""Row/column permutations, normalization, minor extraction and its inverse.

Also hosts the column- and row-permutation repairs that turn a matrix with
only one correct Gramian into a first-generation pseudo-Hadamard matrix.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence, Tuple

from .matrix import (
    BinMatrix,
    is_hadamard,
    is_pseudo_hadamard,
    is_row_gram_pseudo,
    pseudo_q,
    transpose,
)

__all__ = [
    "Permutation",
    "permute_rows",
    "permute_cols",
    "normalize_hadamard",
    "is_normalized_hadamard",
    "extract_first_generation",
    "lift_to_hadamard",
    "conjecture_5_1_fix",
    "conjecture_5_2_fix",
    "transpose",
]


@dataclass(frozen=True)
class Permutation:
    """A bijection of ``range(n)``; ``image[i]`` is the source index for slot ``i``."""

    image: Tuple[int, ...]

    def __post_init__(self):
        image = tuple(self.image)
        object.__setattr__(self, "image", image)
        if sorted(image) != list(range(len(image))):
            raise ValueError(f"not a permutation of 0..{len(image) - 1}: {image}")

    @property
    def n(self) -> int:
        return len(self.image)

    @classmethod
    def identity(cls, n: int) -> "Permutation":
        return cls(tuple(range(n)))

    def inverse(self) -> "Permutation":
        inv = [0] * self.n
        for i, src in enumerate(self.image):
            inv[src] = i
        return Permutation(tuple(inv))

    def is_identity(self) -> bool:
        return all(i == src for i, src in enumerate(self.image))


def _check_size(M: BinMatrix, p: Permutation) -> None:
    if p.n != M.m:
        raise ValueError(f"permutation of size {p.n} applied to a {M.m}x{M.m} matrix")


def permute_rows(M: BinMatrix, p: Permutation) -> BinMatrix:
    """Row ``i`` of the result is row ``p.image[i]`` of ``M``."""
    _check_size(M, p)
    return BinMatrix(M.m, tuple(M.rows[src] for src in p.image))


def _permute_bits(r: int, image: Sequence[int]) -> int:
    out = 0
    for k, src in enumerate(image):
        if (r >> src) & 1:
            out |= 1 << k
    return out


def permute_cols(M: BinMatrix, p: Permutation) -> BinMatrix:
    """Column ``k`` of the result is column ``p.image[k]`` of ``M``."""
    _check_size(M, p)
    return BinMatrix(M.m, tuple(_permute_bits(r, p.image) for r in M.rows))


def normalize_hadamard(H: BinMatrix) -> BinMatrix:
    """Bring a Hadamard matrix to the form with a leading block of ones in row 0 and column 0.

    Columns are stably sorted so the ones of row 0 come first; then rows
    ``1..m-1`` are stably sorted so the ones of column 0 come first.
    """
    if not is_hadamard(H):
        raise ValueError("normalize_hadamard requires a Hadamard matrix")
    r0 = H.rows[0]
    col_order = sorted(range(H.m), key=lambda k: -((r0 >> k) & 1))
    H = permute_cols(H, Permutation(tuple(col_order)))
    tail = sorted(range(1, H.m), key=lambda i: -(H.rows[i] & 1))
    return permute_rows(H, Permutation((0, *tail)))


def _leading_ones(n_ones: int) -> int:
    return (1 << n_ones) - 1


def is_normalized_hadamard(H: BinMatrix) -> bool:
    if not is_hadamard(H):
        return False
    q = (H.m + 1) // 4
    block = _leading_ones(2 * q)
    return H.rows[0] == block and H.column(0) == block


def extract_first_generation(H: BinMatrix) -> BinMatrix:
    """Delete row 0 and column 0 of a normalized Hadamard matrix."""
    if not is_normalized_hadamard(H):
        raise ValueError("extract_first_generation requires a normalized Hadamard matrix")
    return BinMatrix(H.m - 1, tuple(r >> 1 for r in H.rows[1:]))


def lift_to_hadamard(P: BinMatrix) -> BinMatrix:
    """Adjoin the initial row and column that turn ``P`` back into a Hadamard matrix.

    The shortened initial row is recovered from the column sums of ``P``:
    every column sum is ``2q-1`` or ``2q``, and the missing entry is
    ``2q - sum``.  The initial column has ones in rows ``0..2q-1``.
    """
    if not is_pseudo_hadamard(P):
        raise ValueError("lift_to_hadamard requires a first-generation pseudo-Hadamard matrix")
    q = pseudo_q(P.m)
    first = 1
    for k, s in enumerate(P.column_sums()):
        if 2 * q - s:
            first |= 1 << (k + 1)
    rows = [first]
    for i, r in enumerate(P.rows, start=1):
        rows.append((r << 1) | (1 if i <= 2 * q - 1 else 0))
    return BinMatrix(P.m + 1, tuple(rows))


def conjecture_5_1_fix(M: BinMatrix) -> Optional[Permutation]:
    """Find a column permutation making a row-Gram-valid matrix pseudo-Hadamard.

    The expected Gram matrix is unchanged by reordering inside each of its
    two blocks, so moving the columns of sum ``2q-1`` to the front (stably)
    succeeds whenever any column permutation does.
    """
    if not is_row_gram_pseudo(M):
        raise ValueError("rows of the matrix do not produce the pseudo-Hadamard Gram matrix")
    q = pseudo_q(M.m)
    sums = M.column_sums()
    light = [k for k, s in enumerate(sums) if s == 2 * q - 1]
    heavy = [k for k, s in enumerate(sums) if s != 2 * q - 1]
    p = Permutation(tuple(light + heavy))
    if is_pseudo_hadamard(permute_cols(M, p)):
        return p
    return None


def conjecture_5_2_fix(M: BinMatrix) -> Optional[Permutation]:
    """Row-permutation dual of :func:`conjecture_5_1_fix`."""
    T = transpose(M)
    if not is_row_gram_pseudo(T):
        raise ValueError("columns of the matrix do not produce the pseudo-Hadamard Gram matrix")
    return conjecture_5_1_fix(T)
