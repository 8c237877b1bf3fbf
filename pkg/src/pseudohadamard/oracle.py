"""Brute-force enumeration of all row-Gram-valid matrices at small sizes.

Deliberately shares nothing with the class-partition search in
:mod:`pseudohadamard.generator`: rows are drawn from pools of all bit
vectors of the required weight and checked pairwise.
"""

from __future__ import annotations

from itertools import combinations
from typing import List

from .matrix import BinMatrix, is_row_gram_pseudo, pseudo_q

MAX_ORACLE_SIZE = 10


def candidate_rows(m: int, weight: int) -> List[int]:
    """Every width-``m`` bit vector with exactly ``weight`` ones, in increasing order."""
    pool = []
    for cols in combinations(range(m), weight):
        r = 0
        for k in cols:
            r |= 1 << k
        pool.append(r)
    pool.sort()
    return pool


def brute_force_row_gram(m: int) -> List[BinMatrix]:
    q = pseudo_q(m) if isinstance(m, int) else None
    if q is None or m > MAX_ORACLE_SIZE:
        raise ValueError(f"oracle needs m = 4q-2 with m <= {MAX_ORACLE_SIZE}, got {m}")
    light = candidate_rows(m, 2 * q - 1)
    heavy = candidate_rows(m, 2 * q)
    block = 2 * q - 1
    found: List[BinMatrix] = []
    rows: List[int] = []

    def extend(i: int) -> None:
        if i == m:
            found.append(BinMatrix(m, tuple(rows)))
            return
        pool = light if i < block else heavy
        target = q - 1 if i < block else q
        for r in pool:
            if all((r & s).bit_count() == target for s in rows):
                rows.append(r)
                extend(i + 1)
                rows.pop()

    extend(0)
    return found


def canonicalize(M: BinMatrix) -> BinMatrix:
    """Reorder columns so every class of equal bit history has its ones rightmost.

    Refining row by row and moving zeros before ones within each span is
    the same as sorting the columns lexicographically by their entries read
    top to bottom, which is what this does.
    """
    if not is_row_gram_pseudo(M):
        raise ValueError("canonicalize requires a row-Gram-valid matrix")
    cols = [M.column(k) for k in range(M.m)]

    def key(k: int):
        c = cols[k]
        return [(c >> i) & 1 for i in range(M.m)]

    order = sorted(range(M.m), key=key)
    rows = []
    for r in M.rows:
        out = 0
        for dst, src in enumerate(order):
            if (r >> src) & 1:
                out |= 1 << dst
        rows.append(out)
    return BinMatrix(M.m, tuple(rows))
