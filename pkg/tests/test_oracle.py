from math import comb, factorial
from collections import Counter

import pytest
from hypothesis import given, settings, strategies as st

from pseudohadamard.matrix import BinMatrix, gram_of_rows, is_row_gram_pseudo
from pseudohadamard.oracle import brute_force_row_gram, candidate_rows, canonicalize
from pseudohadamard.transform import Permutation, permute_cols

# Computed once with brute_force_row_gram(6) and frozen.
ORACLE_TOTAL_M6 = 4320


def canonicalize_by_refinement(M):
    """Literal row-by-row procedure: within each span, zeros of the current row go first."""
    cols = [M.column(k) for k in range(M.m)]
    spans = [(0, M.m)]
    for i in range(M.m):
        new_spans = []
        for lo, hi in spans:
            block = cols[lo:hi]
            zeros = [c for c in block if not (c >> i) & 1]
            ones = [c for c in block if (c >> i) & 1]
            cols[lo:hi] = zeros + ones
            if zeros:
                new_spans.append((lo, lo + len(zeros)))
            if ones:
                new_spans.append((lo + len(zeros), hi))
        spans = new_spans
    return BinMatrix(M.m, tuple(sum(((c >> i) & 1) << k for k, c in enumerate(cols)) for i in range(M.m)))


def test_candidate_pool():
    for m, w in [(6, 3), (6, 4), (10, 5)]:
        pool = candidate_rows(m, w)
        assert len(pool) == comb(m, w) == len(set(pool))
        assert all(r.bit_count() == w for r in pool)


def test_m2_exact_set():
    found = brute_force_row_gram(2)
    assert set(found) == {BinMatrix.from_lists([[1, 0], [1, 1]]), BinMatrix.from_lists([[0, 1], [1, 1]])}
    assert len(found) == 2


def test_m6_total(oracle6):
    assert len(oracle6) == ORACLE_TOTAL_M6
    assert len(set(oracle6)) == len(oracle6)
    assert all(is_row_gram_pseudo(M) for M in oracle6)


def test_m6_total_from_orbit_sizes(generated):
    # each canonical matrix stands for m!/prod(mult!) column arrangements
    total = 0
    for M in generated[6]:
        mult = Counter(M.columns())
        n = factorial(6)
        for v in mult.values():
            n //= factorial(v)
        total += n
    assert total == ORACLE_TOTAL_M6


@pytest.mark.parametrize("m", [0, 3, 4, 14, 18])
def test_size_guard(m):
    with pytest.raises(ValueError):
        brute_force_row_gram(m)


def test_canonicalize_examples():
    assert canonicalize(BinMatrix.from_lists([[1, 0], [1, 1]])).to_lists() == [[0, 1], [1, 1]]
    assert canonicalize(BinMatrix.from_lists([[0, 1], [1, 1]])).to_lists() == [[0, 1], [1, 1]]


def test_canonicalize_rejects_invalid():
    with pytest.raises(ValueError):
        canonicalize(BinMatrix.identity(2))


def test_canonicalize_matches_refinement_and_is_idempotent(oracle6):
    for M in oracle6[::5]:
        C = canonicalize(M)
        assert C == canonicalize_by_refinement(M)
        assert canonicalize(C) == C
        assert gram_of_rows(C) == gram_of_rows(M)


@settings(max_examples=100, deadline=None)
@given(st.data())
def test_canonicalize_ignores_column_order(oracle6, data):
    M = data.draw(st.sampled_from(oracle6))
    p = Permutation(tuple(data.draw(st.permutations(range(6)))))
    assert canonicalize(permute_cols(M, p)) == canonicalize(M)


@pytest.mark.parametrize("m", [2, 6])
def test_oracle_generator_equivalence(m, oracle6, generated):
    found = oracle6 if m == 6 else brute_force_row_gram(2)
    assert {canonicalize(M) for M in found} == set(generated[m])
    assert len(found) >= len(generated[m])
