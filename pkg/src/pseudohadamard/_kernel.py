"""Compiled search engine (optional, needs numba).

The same depth-first search as :func:`pseudohadamard.generator._search`,
written as a flat loop over preallocated arrays so that it can be compiled
and resumed: each call fills an output buffer and leaves the search state
in place for the next call.  Emission order is identical to the Python
engine.
"""

import numpy as np
from numba import njit

# status[0]: current depth, status[1]: mode, status[2]: floor depth
FRESH = 0
NEXT = 1
DONE = 2


@njit(cache=True)
def _prepare(d, m, ncls, sig, lo, hi, member, cap, size_left, need, left, weight, inner):
    n = ncls[d]
    for c in range(n):
        for j in range(d):
            member[d, c, j] = (sig[d, c] >> j) & 1
    for j in range(d):
        cap[d, n, j] = 0
    size_left[d, n] = 0
    for c in range(n - 1, -1, -1):
        s = hi[d, c] - lo[d, c]
        for j in range(d):
            cap[d, c, j] = cap[d, c + 1, j] + s * member[d, c, j]
        size_left[d, c] = size_left[d, c + 1] + s
    for j in range(d):
        need[d, 0, j] = inner[d]
    left[d, 0] = weight[d]


@njit(cache=True)
def _advance(d, fresh, ncls, lo, hi, member, cap, size_left, need, left, val, vhi):
    """Move the allocation at depth ``d`` to its next value; False when exhausted."""
    n = ncls[d]
    if fresh:
        c = 0
        entering = True
    else:
        c = n - 1
        entering = False
    while True:
        if entering:
            if c == n:
                return True
            ok = True
            for j in range(d):
                if member[d, c, j] == 0 and need[d, c, j] > cap[d, c + 1, j]:
                    ok = False
                    break
            if ok:
                size = hi[d, c] - lo[d, c]
                lft = left[d, c]
                a = lft - size_left[d, c + 1]
                b = size if size < lft else lft
                for j in range(d):
                    if member[d, c, j]:
                        r = need[d, c, j]
                        if r < b:
                            b = r
                        if r - cap[d, c + 1, j] > a:
                            a = r - cap[d, c + 1, j]
                if a < 0:
                    a = 0
                if a <= b:
                    val[d, c] = a
                    vhi[d, c] = b
                    for j in range(d):
                        need[d, c + 1, j] = need[d, c, j] - a * member[d, c, j]
                    left[d, c + 1] = lft - a
                    c += 1
                    continue
            entering = False
            c -= 1
        else:
            if c < 0:
                return False
            if val[d, c] < vhi[d, c]:
                v = val[d, c] + 1
                val[d, c] = v
                for j in range(d):
                    need[d, c + 1, j] = need[d, c, j] - v * member[d, c, j]
                left[d, c + 1] = left[d, c] - v
                c += 1
                entering = True
            else:
                c -= 1


@njit(cache=True)
def _split(d, ncls, sig, lo, hi, val, rows):
    """Build the partition at depth ``d+1`` and the row placed at depth ``d``."""
    bit = np.int64(1) << d
    r = np.int64(0)
    k = 0
    for c in range(ncls[d]):
        kc = val[d, c]
        split = hi[d, c] - kc
        if split > lo[d, c]:
            sig[d + 1, k] = sig[d, c]
            lo[d + 1, k] = lo[d, c]
            hi[d + 1, k] = split
            k += 1
        if kc > 0:
            sig[d + 1, k] = sig[d, c] | bit
            lo[d + 1, k] = split
            hi[d + 1, k] = hi[d, c]
            k += 1
            r |= ((np.int64(1) << kc) - 1) << split
    ncls[d + 1] = k
    rows[d] = r


@njit(cache=True)
def _setup(m, floor, ncls, sig, lo, hi, member, cap, size_left, need, left, weight, inner, val, rows, status):
    """Start at the trivial partition, replaying the fixed allocations of depths below ``floor``."""
    ncls[0] = 1
    sig[0, 0] = 0
    lo[0, 0] = 0
    hi[0, 0] = m
    for d in range(floor):
        _split(d, ncls, sig, lo, hi, val, rows)
    if floor < m:
        _prepare(floor, m, ncls, sig, lo, hi, member, cap, size_left, need, left, weight, inner)
    status[0] = floor
    status[1] = FRESH
    status[2] = floor


@njit(cache=True)
def _run(m, ncls, sig, lo, hi, member, cap, size_left, need, left, weight, inner, val, vhi, rows, status, out):
    """Fill ``out`` with up to ``len(out)`` matrices; returns how many were written."""
    written = 0
    cap_out = out.shape[0]
    d = status[0]
    mode = status[1]
    floor = status[2]
    if floor == m:
        # every row fixed by the prefix: exactly one matrix
        if mode != DONE and cap_out > 0:
            for i in range(m):
                out[0, i] = rows[i]
            status[1] = DONE
            return 1
        status[1] = DONE
        return 0
    while written < cap_out and mode != DONE:
        found = _advance(d, mode == FRESH, ncls, lo, hi, member, cap, size_left, need, left, val, vhi)
        if not found:
            if d == floor:
                mode = DONE
                break
            d -= 1
            mode = NEXT
            continue
        _split(d, ncls, sig, lo, hi, val, rows)
        if d + 1 == m:
            for i in range(m):
                out[written, i] = rows[i]
            written += 1
            mode = NEXT
        else:
            d += 1
            _prepare(d, m, ncls, sig, lo, hi, member, cap, size_left, need, left, weight, inner)
            mode = FRESH
    status[0] = d
    status[1] = mode
    return written


def search(m, q, prefix=(), batch=4096):
    """Yield the rows of each matrix in the same order as the Python engine."""
    if m > 62:
        raise ValueError("the compiled engine supports m <= 62")
    weight = np.empty(m, dtype=np.int64)
    inner = np.empty(m, dtype=np.int64)
    for d in range(m):
        if d + 1 <= 2 * q - 1:
            weight[d], inner[d] = 2 * q - 1, q - 1
        else:
            weight[d], inner[d] = 2 * q, q
    ncls = np.zeros(m + 1, dtype=np.int64)
    sig = np.zeros((m + 1, m), dtype=np.int64)
    lo = np.zeros((m + 1, m), dtype=np.int64)
    hi = np.zeros((m + 1, m), dtype=np.int64)
    member = np.zeros((m + 1, m + 1, m), dtype=np.int64)
    cap = np.zeros((m + 1, m + 1, m), dtype=np.int64)
    size_left = np.zeros((m + 1, m + 1), dtype=np.int64)
    need = np.zeros((m + 1, m + 1, m), dtype=np.int64)
    left = np.zeros((m + 1, m + 1), dtype=np.int64)
    val = np.zeros((m + 1, m + 1), dtype=np.int64)
    vhi = np.zeros((m + 1, m + 1), dtype=np.int64)
    rows = np.zeros(m, dtype=np.int64)
    status = np.zeros(3, dtype=np.int64)
    for d, k in enumerate(prefix):
        val[d, : len(k)] = k
    _setup(m, len(prefix), ncls, sig, lo, hi, member, cap, size_left, need, left, weight, inner, val, rows, status)
    out = np.zeros((batch, m), dtype=np.int64)
    size = 16
    while True:
        # small batches first so a caller with a low limit does not wait for a full buffer
        buf = out[:size]
        size = min(2 * size, batch)
        n = _run(m, ncls, sig, lo, hi, member, cap, size_left, need, left, weight, inner, val, vhi, rows, status, buf)
        for i in range(n):
            yield tuple(int(x) for x in buf[i])
        if status[1] == DONE:
            return
