"""Minimal presentations of the homology of a short complex F2 -> F1 -> F0.

Pipeline: ``min_gens`` (minimal generators of the image of d2), ``ker_basis``
(a graded basis of ker d1), ``reparam`` (express the generators in the
kernel basis, giving a semi-minimal presentation) and ``minimize`` (drop
local row/column pairs via multi-chunk on the one-matrix complex).

``min_gens`` and ``ker_basis`` sweep the grade grid with a lexicographic
priority queue of cells and one queue of column indices per y-grade, so
only cells where work can happen are visited.  The ``*_lw`` variants scan
the full X-by-Y grid and serve as reference implementations.
"""
from __future__ import annotations

import bisect
import heapq
import time
from dataclasses import dataclass, field
from typing import Optional, Sequence

from ._parallel import Threads, map_items
from .core import (
    ChainComplex,
    Grade,
    GradedMatrix,
    ValidationError,
    first_nonzero_composite,
    sym_diff,
)
from .multichunk import multi_chunk


@dataclass
class MpfreeCounters:
    additions: int = 0  # M': number of column additions
    addition_cost: int = 0  # M: summed lengths of the merged supports
    grade_pops: int = 0  # distinct grid cells handled
    grade_pushes: int = 0  # cells enqueued by pivot conflicts
    row_pops: int = 0
    cells_visited: int = 0  # grid-scan variants only
    seconds: dict = field(default_factory=dict)

    def merge(self, other: "MpfreeCounters") -> None:
        for name in ("additions", "addition_cost", "grade_pops", "grade_pushes", "row_pops", "cells_visited"):
            setattr(self, name, getattr(self, name) + getattr(other, name))
        for k, v in other.seconds.items():
            self.seconds[k] = self.seconds.get(k, 0.0) + v


class GradeQueue:
    """Min-queue of grid cells in lexicographic order; repeated cells pop once."""

    def __init__(self, cells: Sequence[tuple[int, int]] = ()):
        self._heap = list(set(cells))
        heapq.heapify(self._heap)
        self._last: Optional[tuple[int, int]] = None
        self.initial = len(self._heap)
        self.pops = 0
        self.pushes = 0

    def push(self, cell: tuple[int, int]) -> None:
        self.pushes += 1
        heapq.heappush(self._heap, cell)

    def pop(self) -> Optional[tuple[int, int]]:
        while self._heap:
            cell = heapq.heappop(self._heap)
            if cell == self._last:
                continue
            assert self._last is None or cell > self._last, "grade queue popped out of lex order"
            self._last = cell
            self.pops += 1
            return cell
        return None

    def __len__(self) -> int:
        return len(self._heap)


class RowQueues:
    """One min-queue of column indices per y-grade."""

    def __init__(self):
        self._queues: dict[int, list] = {}
        self.pops = 0

    def push(self, y: int, index: int) -> None:
        heapq.heappush(self._queues.setdefault(y, []), index)

    def drain(self, y: int):
        """Yield indices of row ``y`` in ascending order until empty, skipping repeats.

        Pushes made while draining are larger than the index being handled,
        so they are picked up by the same drain.
        """
        q = self._queues.setdefault(y, [])
        last = -1
        while q:
            i = heapq.heappop(q)
            if i == last:
                continue
            last = i
            self.pops += 1
            yield i


class ColumnReducer:
    """Working copy of a graded matrix with a pivot map and optional auxiliary columns.

    The invariant ``working = pristine @ aux`` holds throughout when
    auxiliary columns are enabled.
    """

    def __init__(self, matrix: GradedMatrix, use_auxiliary: bool = False, counters: Optional[MpfreeCounters] = None):
        self.cols = list(matrix.columns)
        self.aux = [[j] for j in range(matrix.n_cols)] if use_auxiliary else None
        self.piv = [-1] * matrix.n_rows
        self.ys = [g.y for g in matrix.col_grades]
        self.counters = counters if counters is not None else MpfreeCounters()

    def _add(self, src: int, dst: int) -> None:
        a, b = self.cols[dst], self.cols[src]
        self.counters.additions += 1
        self.counters.addition_cost += len(a) + len(b)
        self.cols[dst] = sym_diff(a, b)
        if self.aux is not None:
            self.aux[dst] = sym_diff(self.aux[dst], self.aux[src])

    def reduce_lw(self, j: int) -> None:
        cols, piv = self.cols, self.piv
        while cols[j]:
            i = cols[j][-1]
            k = piv[i]
            if k == -1 or k >= j:
                piv[i] = j
                return
            self._add(k, j)

    def reduce_queued(self, i: int, x: int, grade_queue: GradeQueue, row_queues: RowQueues) -> None:
        cols, piv = self.cols, self.piv
        while cols[i]:
            j = cols[i][-1]
            k = piv[j]
            if k == -1 or k == i:
                piv[j] = i
                return
            if k > i:
                # k has to be revisited once the sweep reaches its row
                y = self.ys[k]
                row_queues.push(y, k)
                grade_queue.push((x, y))
                self.counters.grade_pushes += 1
                piv[j] = i
                return
            self._add(k, i)


def _cell_grade_factory(grades: Sequence[Grade]):
    xs: dict = {}
    ys: dict = {}
    exact: dict = {}
    for g in grades:
        exact.setdefault(g.key, g)
        if g.raw is not None:
            xs.setdefault(g.x, g.raw[0])
            ys.setdefault(g.y, g.raw[1])

    def make(cell: tuple[int, int]) -> Grade:
        g = exact.get(cell)
        if g is not None:
            return g
        x, y = cell
        if x in xs and y in ys:
            return Grade(x, y, (xs[x], ys[y]))
        return Grade(x, y)

    return make


def _colex_sorted(cols: list, grades: list, row_grades: list) -> GradedMatrix:
    order = sorted(range(len(cols)), key=lambda t: (grades[t].y, grades[t].x))
    return GradedMatrix([cols[t] for t in order], [grades[t] for t in order], row_grades)


def _group_by_grade(grades: Sequence[Grade]) -> dict:
    groups: dict = {}
    for j, g in enumerate(grades):
        groups.setdefault(g.key, []).append(j)
    return groups


def min_gens(A: GradedMatrix, counters: Optional[MpfreeCounters] = None) -> GradedMatrix:
    """Minimal generating set of the image of A, as a graded matrix over A's rows."""
    counters = counters if counters is not None else MpfreeCounters()
    red = ColumnReducer(A, False, counters)
    groups = _group_by_grade(A.col_grades)
    gq = GradeQueue(groups.keys())
    rq = RowQueues()
    out_cols, out_grades = [], []
    while (cell := gq.pop()) is not None:
        x, y = cell
        for i in groups.get(cell, ()):
            rq.push(y, i)
        for i in rq.drain(y):
            red.reduce_queued(i, x, gq, rq)
            if red.cols[i] and A.col_grades[i].key == cell:
                out_cols.append(red.cols[i])
                out_grades.append(A.col_grades[i])
    counters.grade_pops += gq.pops
    counters.row_pops += rq.pops
    return _colex_sorted(out_cols, out_grades, A.row_grades)


def ker_basis(B: GradedMatrix, counters: Optional[MpfreeCounters] = None) -> GradedMatrix:
    """Graded basis of ker B; rows are B's columns."""
    counters = counters if counters is not None else MpfreeCounters()
    red = ColumnReducer(B, True, counters)
    groups = _group_by_grade(B.col_grades)
    make_grade = _cell_grade_factory(B.col_grades)
    gq = GradeQueue(groups.keys())
    rq = RowQueues()
    seen = [False] * B.n_cols
    out_cols, out_grades = [], []
    while (cell := gq.pop()) is not None:
        x, y = cell
        for i in groups.get(cell, ()):
            rq.push(y, i)
        for i in rq.drain(y):
            was_nonzero = bool(red.cols[i])
            first = not seen[i]
            seen[i] = True
            red.reduce_queued(i, x, gq, rq)
            if not red.cols[i] and (was_nonzero or first):
                out_cols.append(red.aux[i])
                out_grades.append(make_grade(cell))
    counters.grade_pops += gq.pops
    counters.row_pops += rq.pops
    return _colex_sorted(out_cols, out_grades, B.col_grades)


def _grid_buckets(grades: Sequence[Grade]) -> tuple[int, int, dict]:
    if not grades:
        return 0, 0, {}
    X = max(g.x for g in grades) + 1
    Y = max(g.y for g in grades) + 1
    buckets: dict = {}
    for j, g in enumerate(grades):
        buckets.setdefault(g.y, []).append(j)
    return X, Y, buckets


def min_gens_lw(A: GradedMatrix, counters: Optional[MpfreeCounters] = None) -> GradedMatrix:
    """Grid-scan reference for :func:`min_gens`."""
    counters = counters if counters is not None else MpfreeCounters()
    red = ColumnReducer(A, False, counters)
    X, Y, buckets = _grid_buckets(A.col_grades)
    rows = sorted(buckets)
    cg = A.col_grades
    out_cols, out_grades = [], []
    for x in range(X):
        # cells of rows without columns do nothing but are still part of the scan
        counters.cells_visited += Y
        for y in rows:
            bucket = buckets[y]
            for i in bucket:
                gx = cg[i].x
                if gx > x:
                    break
                red.reduce_lw(i)
                if gx == x and red.cols[i]:
                    out_cols.append(red.cols[i])
                    out_grades.append(cg[i])
    return _colex_sorted(out_cols, out_grades, A.row_grades)


def ker_basis_lw(B: GradedMatrix, counters: Optional[MpfreeCounters] = None) -> GradedMatrix:
    """Grid-scan reference for :func:`ker_basis`."""
    counters = counters if counters is not None else MpfreeCounters()
    red = ColumnReducer(B, True, counters)
    X, Y, buckets = _grid_buckets(B.col_grades)
    rows = sorted(buckets)
    cg = B.col_grades
    make_grade = _cell_grade_factory(cg)
    seen = [False] * B.n_cols
    out_cols, out_grades = [], []
    for x in range(X):
        counters.cells_visited += Y
        for y in rows:
            for i in buckets[y]:
                if cg[i].x > x:
                    break
                was_nonzero = bool(red.cols[i])
                first = not seen[i]
                seen[i] = True
                red.reduce_lw(i)
                if not red.cols[i] and (was_nonzero or first):
                    out_cols.append(red.aux[i])
                    out_grades.append(make_grade((x, y)))
    return _colex_sorted(out_cols, out_grades, B.col_grades)


def reparam(G: GradedMatrix, K: GradedMatrix, threads: Threads = 1,
            counters: Optional[MpfreeCounters] = None) -> GradedMatrix:
    """Express each column of G in the kernel basis K: a semi-minimal presentation.

    K comes from :func:`ker_basis`, so its columns have distinct pivots and
    the pivot map is built once and shared read-only by all workers.
    """
    counters = counters if counters is not None else MpfreeCounters()
    if G.n_rows != K.n_rows:
        raise ValueError(f"row count mismatch: G has {G.n_rows} rows, K has {K.n_rows}")
    piv = {}
    for c, col in enumerate(K.columns):
        if not col or col[-1] in piv:
            raise ValueError("kernel basis columns must be nonzero with distinct pivots")
        piv[col[-1]] = c
    kcols = K.columns

    def express(j: int) -> tuple[list, int, int]:
        col = G.columns[j]
        used = []
        adds = cost = 0
        while col:
            c = piv.get(col[-1])
            if c is None:
                raise ValidationError(
                    f"generator {j} of the image is not a cycle: the composite of the boundary maps is nonzero"
                )
            adds += 1
            cost += len(col) + len(kcols[c])
            col = sym_diff(col, kcols[c])
            used.append(c)
        used.sort()
        return used, adds, cost

    results = map_items(express, range(G.n_cols), threads)
    cols = []
    for used, adds, cost in results:
        cols.append(used)
        counters.additions += adds
        counters.addition_cost += cost
    return GradedMatrix(cols, list(G.col_grades), list(K.col_grades))


def minimize(semi: GradedMatrix, threads: Threads = 1) -> GradedMatrix:
    """Minimal presentation from a semi-minimal one, via multi-chunk on ``F1 -> F0``."""
    out, _ = multi_chunk(ChainComplex([semi]), threads)
    return out.matrices[0]


def minimize_lw(semi: GradedMatrix) -> GradedMatrix:
    """Reference minimization: eliminate each local pivot row to the right, then drop the pair."""
    cols = list(semi.columns)
    n = len(cols)
    rg, cg = semi.row_grades, semi.col_grades
    dead_cols = set()
    dead_rows = set()
    for i in range(n):
        col = cols[i]
        if not col or rg[col[-1]] != cg[i]:
            continue
        j = col[-1]
        for k in range(i + 1, n):
            ck = cols[k]
            p = bisect.bisect_left(ck, j)
            if p < len(ck) and ck[p] == j:
                cols[k] = sym_diff(ck, col)
        dead_cols.add(i)
        dead_rows.add(j)
    new_index = {}
    rows = []
    for r in range(semi.n_rows):
        if r not in dead_rows:
            new_index[r] = len(rows)
            rows.append(semi.row_grades[r])
    keep = [j for j in range(n) if j not in dead_cols]
    # a kept column never touches a removed row of a semi-minimal input
    out_cols = [[new_index[r] for r in cols[j]] for j in keep]
    return GradedMatrix(out_cols, [cg[j] for j in keep], rows)


def check_composable(lower: GradedMatrix, upper: GradedMatrix, level: int) -> None:
    bad = first_nonzero_composite(lower, upper)
    if bad is not None:
        raise ValidationError(
            f"d^{level} o d^{level + 1} != 0: column {bad} of d^{level + 1} does not map to a cycle"
        )


def mpfree(complex_: ChainComplex, n: int, threads: Threads = 1, lw: bool = False,
           counters: Optional[MpfreeCounters] = None) -> GradedMatrix:
    """Minimal presentation of H^n: rows are generators, columns are relations."""
    counters = counters if counters is not None else MpfreeCounters()
    if n < 1 or n + 1 > complex_.length:
        raise ValueError(
            f"homology level {n} needs d^{n + 1} and d^{n}; the complex has length {complex_.length}"
        )
    A = complex_.boundary(n + 1)
    B = complex_.boundary(n)
    check_composable(B, A, n)
    t0 = time.perf_counter()
    G = (min_gens_lw if lw else min_gens)(A, counters)
    t1 = time.perf_counter()
    K = (ker_basis_lw if lw else ker_basis)(B, counters)
    t2 = time.perf_counter()
    semi = reparam(G, K, threads, counters)
    t3 = time.perf_counter()
    out = minimize_lw(semi) if lw else minimize(semi, threads)
    t4 = time.perf_counter()
    for name, dt in (("min_gens", t1 - t0), ("ker_basis", t2 - t1), ("reparam", t3 - t2), ("minimize", t4 - t3)):
        counters.seconds[name] = counters.seconds.get(name, 0.0) + dt
    return out


def presentation_complex(P: GradedMatrix) -> ChainComplex:
    """Wrap a presentation as a length-1 complex (relations above generators)."""
    return ChainComplex([P])


def pipeline(complex_: ChainComplex, dims: Optional[Sequence[int]] = None, preprocess: bool = True,
             threads: Threads = 1, lw: bool = False,
             counters: Optional[MpfreeCounters] = None) -> dict:
    """Minimal presentations ``{n: P}`` for every requested homology level.

    By default the complex is first compressed with multi-chunk and every
    level with both neighbouring maps is presented.
    """
    counters = counters if counters is not None else MpfreeCounters()
    work = complex_
    if preprocess:
        t0 = time.perf_counter()
        work, _ = multi_chunk(complex_, threads)
        counters.seconds["multi_chunk"] = time.perf_counter() - t0
    if dims is None:
        dims = range(1, work.length)
    return {n: mpfree(work, n, threads, lw, counters) for n in dims}
