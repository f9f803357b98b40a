"""Multi-chunk compression of chain complexes of free bigraded modules.

Three phases over the whole complex:

1. local reduction, highest level first, labeling every generator as
   global or as half of a local pair (clearing skips generators already
   claimed as positive from the level above);
2. compression, which rewrites each global column so that it only touches
   global rows;
3. removal of all local rows and columns.

The result is homotopy equivalent to the input and has, at every grade and
level, the smallest number of generators any quasi-isomorphic complex can
have.
"""
from __future__ import annotations

import heapq
import time
from dataclasses import dataclass, field

from ._parallel import Threads, run_batches
from .core import ChainComplex, GradedMatrix, Label, LabelTable, chunks, sym_diff

GLOBAL = Label.GLOBAL
POSITIVE = Label.POSITIVE
NEGATIVE = Label.NEGATIVE
UNLABELED = Label.UNLABELED


@dataclass
class ChunkStats:
    label_counts: dict = field(default_factory=dict)  # level -> {"global": .., ...}
    additions: int = 0
    phase_seconds: dict = field(default_factory=lambda: {"local_reduction": 0.0, "compression": 0.0, "removal": 0.0})
    input_sizes: list = field(default_factory=list)
    output_sizes: list = field(default_factory=list)


def local_reduction(matrix: GradedMatrix, labels: LabelTable, level: int, threads: Threads = 1) -> int:
    """Phase I on ``matrix`` = d^level; returns the number of column additions.

    Columns already labeled (positive, from the level above) are skipped.
    A column is reduced only while its pivot is local and owned by an
    earlier column of the same chunk.
    """
    cols = matrix.columns
    cg = matrix.col_grades
    rg = matrix.row_grades
    col_labels = labels.labels[level]
    # dense owner map; a local pivot has its column's grade, so chunks never share rows
    owner = [-1] * matrix.n_rows
    runs = chunks(cg)

    def work(start: int, end: int) -> tuple[int, list]:
        adds = 0
        pairs = []
        for a, b in runs[start:end]:
            g = cg[a]
            for j in range(a, b):
                if col_labels[j] != UNLABELED:
                    continue
                col = cols[j]
                while col and rg[col[-1]] == g:
                    o = owner[col[-1]]
                    if o < 0:
                        break
                    assert cg[o] == g
                    col = sym_diff(col, cols[o])
                    adds += 1
                cols[j] = col
                if col and rg[col[-1]] == g:
                    owner[col[-1]] = j
                    pairs.append((j, col[-1]))
                else:
                    col_labels[j] = GLOBAL
        return adds, pairs

    total = 0
    for adds, pairs in run_batches(work, len(runs), threads):
        total += adds
        for j, row in pairs:
            labels.pair(level, j, row)
    return total


def _compress_column(col: list, row_labels: list, row_partner: list, cols: list, cg, j: int) -> tuple[list, int]:
    heap = [-i for i in col]
    heapq.heapify(heap)
    live = set(col)
    kept = []
    adds = 0
    last = None
    while heap:
        i = -heapq.heappop(heap)
        if i not in live:
            continue
        # each handled index is strictly below the previous one
        assert last is None or i < last
        last = i
        lab = row_labels[i]
        if lab == GLOBAL:
            kept.append(i)
            live.discard(i)
        elif lab == NEGATIVE:
            live.discard(i)
        else:
            src = row_partner[i]
            assert cg[src] <= cg[j]
            adds += 1
            for r in cols[src]:
                if r in live:
                    live.discard(r)
                else:
                    live.add(r)
                    heapq.heappush(heap, -r)
    kept.reverse()
    return kept, adds


def compress(matrix: GradedMatrix, labels: LabelTable, level: int, threads: Threads = 1) -> int:
    """Phase II on d^level: strip local rows from every global column.

    Needs final labels on both ``level`` and ``level - 1``.
    """
    cols = matrix.columns
    cg = matrix.col_grades
    col_labels = labels.labels[level]
    row_labels = labels.labels[level - 1]
    row_partner = labels.partner[level - 1]
    targets = [j for j, lab in enumerate(col_labels) if lab == GLOBAL]

    def work(start: int, end: int) -> tuple[int, list]:
        adds = 0
        out = []
        for t in range(start, end):
            j = targets[t]
            col = cols[j]
            if all(row_labels[i] == GLOBAL for i in col):
                continue
            new, a = _compress_column(col, row_labels, row_partner, cols, cg, j)
            adds += a
            out.append((j, new))
        return adds, out

    total = 0
    # negative source columns are read concurrently; writes land after the join
    for adds, updates in run_batches(work, len(targets), threads):
        total += adds
        for j, new in updates:
            cols[j] = new
    return total


def remove_local(matrix: GradedMatrix, col_labels: list, row_labels: list) -> GradedMatrix:
    """Phase III: the submatrix on global columns and global rows, reindexed."""
    new_index = [-1] * matrix.n_rows
    rows_kept = []
    for i, lab in enumerate(row_labels):
        if lab == GLOBAL:
            new_index[i] = len(rows_kept)
            rows_kept.append(i)
    keep = [j for j, lab in enumerate(col_labels) if lab == GLOBAL]
    cols = []
    for j in keep:
        col = [new_index[i] for i in matrix.columns[j]]
        assert all(i >= 0 for i in col), "compression left a local row in a global column"
        cols.append(col)
    return GradedMatrix(
        cols,
        [matrix.col_grades[j] for j in keep],
        [matrix.row_grades[i] for i in rows_kept],
    )


def multi_chunk(complex_: ChainComplex, threads: Threads = 1) -> tuple[ChainComplex, ChunkStats]:
    """Compress ``complex_``; the input is not modified."""
    stats = ChunkStats(input_sizes=complex_.sizes())
    k = complex_.length
    if k == 0:
        out = ChainComplex([], list(complex_.bottom_grades))
        stats.output_sizes = out.sizes()
        stats.label_counts = {0: {"global": len(out.bottom_grades), "positive": 0, "negative": 0, "unlabeled": 0}}
        return out, stats

    work = complex_.copy()
    labels = LabelTable.for_complex(work)

    t0 = time.perf_counter()
    for n in range(k, 0, -1):
        stats.additions += local_reduction(work.boundary(n), labels, n, threads)
    bottom = labels.labels[0]
    for i, lab in enumerate(bottom):
        if lab == UNLABELED:
            bottom[i] = GLOBAL
    t1 = time.perf_counter()
    for n in range(k, 0, -1):
        stats.additions += compress(work.boundary(n), labels, n, threads)
    t2 = time.perf_counter()

    mats = [remove_local(work.boundary(n), labels.labels[n], labels.labels[n - 1]) for n in range(k, 0, -1)]
    for upper, lower in zip(mats, mats[1:]):
        upper.row_grades = lower.col_grades
    out = ChainComplex(mats)
    t3 = time.perf_counter()

    stats.phase_seconds = {"local_reduction": t1 - t0, "compression": t2 - t1, "removal": t3 - t2}
    stats.label_counts = {n: labels.counts(n) for n in range(k + 1)}
    stats.output_sizes = out.sizes()
    return out, stats
