"""Backtracking generation of matrices whose rows have the pseudo-Hadamard Gramian.

Columns are grouped into classes of identical bit history over the rows
placed so far.  A new row is described by how many ones it puts into each
class (a :class:`RowAllocation`); the scalar product of the new row with an
earlier row is then the sum of the counts over classes that carry a one in
that earlier row, so the Gram constraints become a small linear system over
the counts.  Inside a class the ones always occupy the rightmost columns,
which makes every emitted matrix the unique representative of its orbit
under column permutations.
"""

from __future__ import annotations

import sys
import time
from dataclasses import dataclass, field
from typing import Callable, Iterator, List, Optional, Sequence, TextIO, Tuple

from .matrix import BinMatrix, is_row_gram_pseudo, pseudo_q

RowAllocation = Tuple[int, ...]


class SizeError(ValueError):
    """Matrix size not of the form ``4q-2``."""


def check_size(m) -> int:
    """Return ``q`` for ``m = 4q-2`` or raise :class:`SizeError`."""
    q = pseudo_q(m) if isinstance(m, int) else None
    if q is None:
        raise SizeError(f"Error: m={m} is incorrect size for generation one pseudo-Hadamard matrices")
    return q


@dataclass(frozen=True)
class ColumnClass:
    """Columns ``lo..hi-1`` sharing one bit history.

    Bit ``j`` of ``signature`` is the class's entry in row ``j+1``.
    """

    signature: int
    lo: int
    hi: int

    def __post_init__(self):
        if self.hi <= self.lo:
            raise ValueError(f"empty column class [{self.lo}, {self.hi})")

    @property
    def size(self) -> int:
        return self.hi - self.lo

    def has_one_in_row(self, row: int) -> bool:
        return bool((self.signature >> (row - 1)) & 1)


@dataclass(frozen=True)
class ColumnClassPartition:
    depth: int
    classes: Tuple[ColumnClass, ...]

    @classmethod
    def trivial(cls, m: int) -> "ColumnClassPartition":
        return cls(0, (ColumnClass(0, 0, m),))

    @property
    def m(self) -> int:
        return self.classes[-1].hi

    def check(self) -> None:
        """Raise ``AssertionError`` unless spans tile ``[0, m)`` with distinct signatures."""
        pos = 0
        for c in self.classes:
            assert c.lo == pos, f"class {c} does not start at {pos}"
            assert 0 <= c.signature < (1 << self.depth), f"signature of {c} exceeds depth {self.depth}"
            pos = c.hi
        sigs = [c.signature for c in self.classes]
        assert len(set(sigs)) == len(sigs), "duplicate signatures"


def row_targets(i: int, q: int) -> Tuple[int, int]:
    """(weight, scalar product with every earlier row) for row ``i`` (1-based).

    Rows are placed in index order, so rows of the first block only ever
    meet first-block predecessors.
    """
    if not 1 <= i <= 4 * q - 2:
        raise ValueError(f"row index {i} outside 1..{4 * q - 2}")
    if i <= 2 * q - 1:
        return 2 * q - 1, q - 1
    return 2 * q, q


def _allocations(
    sizes: Sequence[int], members: Sequence[Sequence[int]], depth: int, weight: int, inner: int
) -> Iterator[RowAllocation]:
    # members[c]: earlier rows (0-based) in which class c carries a one.
    n = len(sizes)
    nonmembers = []
    for mem in members:
        s = set(mem)
        nonmembers.append([j for j in range(depth) if j not in s])
    # cap[c][j]: ones still placeable after class c-1 that count towards row j
    cap = [[0] * depth for _ in range(n + 1)]
    size_left = [0] * (n + 1)
    for c in range(n - 1, -1, -1):
        row = cap[c]
        row[:] = cap[c + 1]
        for j in members[c]:
            row[j] += sizes[c]
        size_left[c] = size_left[c + 1] + sizes[c]
    need = [inner] * depth
    counts = [0] * n

    def rec(c: int, left: int) -> Iterator[RowAllocation]:
        if c == n:
            yield tuple(counts)
            return
        nxt = cap[c + 1]
        for j in nonmembers[c]:
            if need[j] > nxt[j]:
                return
        mem = members[c]
        lo = left - size_left[c + 1]
        hi = min(sizes[c], left)
        for j in mem:
            r = need[j]
            if r < hi:
                hi = r
            if r - nxt[j] > lo:
                lo = r - nxt[j]
        if lo < 0:
            lo = 0
        for v in range(lo, hi + 1):
            for j in mem:
                need[j] -= v
            counts[c] = v
            yield from rec(c + 1, left - v)
            for j in mem:
                need[j] += v

    if weight < 0 or inner < 0:
        return
    yield from rec(0, weight)


def _members(signature: int, depth: int) -> List[int]:
    return [j for j in range(depth) if (signature >> j) & 1]


def enumerate_allocations(p: ColumnClassPartition, weight: int, inner: int) -> Iterator[RowAllocation]:
    """All per-class one-counts giving a row of ``weight`` ones whose scalar
    product with every earlier row is ``inner``.

    Lexicographic in class order, smallest count first.
    """
    sizes = [c.size for c in p.classes]
    members = [_members(c.signature, p.depth) for c in p.classes]
    return _allocations(sizes, members, p.depth, weight, inner)


def _check_allocation(p: ColumnClassPartition, k: RowAllocation) -> None:
    if len(k) != len(p.classes):
        raise ValueError(f"allocation has {len(k)} entries for {len(p.classes)} classes")
    for c, kc in zip(p.classes, k):
        if not 0 <= kc <= c.size:
            raise ValueError(f"count {kc} out of range for class of size {c.size}")


def refine(p: ColumnClassPartition, k: RowAllocation) -> ColumnClassPartition:
    """Split each class by the new row: zeros on the left, ones on the right."""
    _check_allocation(p, k)
    bit = 1 << p.depth
    out = []
    for c, kc in zip(p.classes, k):
        split = c.hi - kc
        if split > c.lo:
            out.append(ColumnClass(c.signature, c.lo, split))
        if kc:
            out.append(ColumnClass(c.signature | bit, split, c.hi))
    return ColumnClassPartition(p.depth + 1, tuple(out))


def emit_row(p: ColumnClassPartition, k: RowAllocation) -> int:
    """The row with ones on the rightmost ``k[c]`` columns of each class."""
    _check_allocation(p, k)
    r = 0
    for c, kc in zip(p.classes, k):
        r |= ((1 << kc) - 1) << (c.hi - kc)
    return r


@dataclass
class GenerateReport:
    """Counters of a generation run.

    ``matrices_emitted`` is updated in place while the search runs and may be
    read from another thread.
    """

    m: int
    q: int
    matrices_emitted: int = 0
    limit_reached: bool = False
    elapsed: float = 0.0
    checkpoints: List[Tuple[int, float]] = field(default_factory=list)

    @property
    def rate_per_minute(self) -> float:
        if self.elapsed <= 0:
            return float("inf") if self.matrices_emitted else 0.0
        return 60.0 * self.matrices_emitted / self.elapsed


def _search(m: int, q: int, prefix: Sequence[RowAllocation] = (), max_depth: Optional[int] = None):
    """Depth-first search yielding the rows of each emitted matrix.

    ``prefix`` fixes the allocations of the first rows; when ``max_depth``
    is set the search yields allocation prefixes of that length instead of
    full matrices.
    """
    targets = [row_targets(i, q) for i in range(1, m + 1)]
    rows: List[int] = []
    allocs: List[RowAllocation] = []

    # Partition state as parallel lists: signature, lo, hi.
    def descend(sigs, los, his, depth):
        if max_depth is not None and depth == max_depth:
            yield tuple(allocs)
            return
        if depth == m:
            yield tuple(rows)
            return
        weight, inner = targets[depth]
        if depth < len(prefix):
            candidates = [prefix[depth]]
        else:
            sizes = [h - l for l, h in zip(los, his)]
            members = [_members(s, depth) for s in sigs]
            candidates = _allocations(sizes, members, depth, weight, inner)
        bit = 1 << depth
        for k in candidates:
            ns, nl, nh = [], [], []
            r = 0
            for s, lo, hi, kc in zip(sigs, los, his, k):
                split = hi - kc
                if split > lo:
                    ns.append(s)
                    nl.append(lo)
                    nh.append(split)
                if kc:
                    ns.append(s | bit)
                    nl.append(split)
                    nh.append(hi)
                    r |= ((1 << kc) - 1) << split
            rows.append(r)
            allocs.append(k)
            yield from descend(ns, nl, nh, depth + 1)
            rows.pop()
            allocs.pop()

    yield from descend([0], [0], [m], 0)


ENGINES = ("python", "numba")


def _engine_search(engine: str):
    if engine == "python":
        return _search
    if engine == "numba":
        try:
            from . import _kernel
        except ImportError as exc:
            raise RuntimeError("the numba engine needs the optional 'numba' and 'numpy' packages") from exc
        return _kernel.search
    raise ValueError(f"unknown engine {engine!r}; expected one of {', '.join(ENGINES)}")


def iter_matrices(m: int, engine: str = "python") -> Iterator[BinMatrix]:
    """Lazily yield every canonical matrix of size ``m`` in search order."""
    q = check_size(m)
    for rows in _engine_search(engine)(m, q):
        yield BinMatrix(m, rows)


def generate(
    m: int,
    limit: Optional[int] = None,
    sink: Optional[Callable[[BinMatrix], None]] = None,
    progress_every: Optional[int] = None,
    progress_file: Optional[TextIO] = None,
    report: Optional[GenerateReport] = None,
    jobs: int = 1,
    engine: str = "python",
) -> GenerateReport:
    """Run the exhaustive search for size ``m`` and hand each matrix to ``sink``.

    ``engine="numba"`` runs the same search compiled; the output sequence is
    identical.  With ``jobs > 1`` the search tree is split at a fixed depth
    and the subtrees are searched in worker processes; because subtrees are
    consumed in search order the sequence is again the same.
    """
    q = check_size(m)
    if limit is not None and limit < 0:
        raise ValueError("limit must be non-negative")
    search = _engine_search(engine)
    if report is None:
        report = GenerateReport(m, q)
    if progress_every is not None and progress_file is None:
        progress_file = sys.stderr
    start = time.perf_counter()

    if limit == 0:
        report.limit_reached = True
        return report

    if jobs > 1:
        source = _parallel_rows(m, q, jobs, limit, engine)
    else:
        source = search(m, q)

    try:
        for rows in source:
            M = BinMatrix(m, rows)
            assert is_row_gram_pseudo(M), f"search emitted an invalid matrix:\n{M}"
            if sink is not None:
                sink(M)
            report.matrices_emitted += 1
            n = report.matrices_emitted
            if progress_every and n % progress_every == 0:
                t = time.perf_counter() - start
                report.checkpoints.append((n, t))
                print(f"m={m}: {n} matrices, {t:.2f} s", file=progress_file, flush=True)
            if limit is not None and n >= limit:
                report.limit_reached = True
                break
    finally:
        close = getattr(source, "close", None)
        if close is not None:
            close()
        report.elapsed = time.perf_counter() - start
    return report


def count(m: int, limit: Optional[int] = None, jobs: int = 1, engine: str = "python") -> int:
    return generate(m, limit=limit, jobs=jobs, engine=engine).matrices_emitted


# parallel mode

def _split_prefixes(m: int, q: int, jobs: int) -> List[Tuple[RowAllocation, ...]]:
    # shallowest depth giving enough subtrees to keep the workers busy
    depth = min(m, 3)
    prefixes = list(_search(m, q, max_depth=depth))
    while len(prefixes) < 8 * jobs and depth < min(m, 6):
        depth += 1
        prefixes = list(_search(m, q, max_depth=depth))
    return prefixes


def _subtree(args):
    m, q, prefix, limit, engine = args
    out = []
    for rows in _engine_search(engine)(m, q, prefix=prefix):
        out.append(rows)
        if limit is not None and len(out) >= limit:
            break
    return out


def _parallel_rows(m: int, q: int, jobs: int, limit: Optional[int], engine: str):
    import multiprocessing

    tasks = [(m, q, p, limit, engine) for p in _split_prefixes(m, q, jobs)]
    pool = multiprocessing.Pool(jobs)
    try:
        # imap keeps task order, so the sequence matches the serial search
        for batch in pool.imap(_subtree, tasks):
            yield from batch
        pool.close()
    finally:
        pool.terminate()
        pool.join()
