"""Brute-force oracles and random instance generators.

All linear algebra here is textbook Gaussian elimination on GF(2) vectors
stored as Python ints (bit i = coordinate i).  None of it shares code with
the sparse reductions in the production modules.
"""
from __future__ import annotations

from collections import Counter
from typing import Callable, Iterable, Optional, Sequence

import numpy as np

from .core import ChainComplex, Grade, GradedMatrix, complex_from_generators

# ---------------------------------------------------------------- bit algebra


def _bits(indices: Iterable[int]) -> int:
    v = 0
    for i in indices:
        v ^= 1 << i
    return v


def _echelon(vectors: Iterable[int]) -> dict:
    """Basis with distinct leading bits: ``{leading_bit: vector}``."""
    basis: dict = {}
    for v in vectors:
        while v:
            top = v.bit_length() - 1
            b = basis.get(top)
            if b is None:
                basis[top] = v
                break
            v ^= b
    return basis


def gf2_rank(vectors: Iterable[int]) -> int:
    return len(_echelon(vectors))


def _remainder(v: int, basis: dict) -> int:
    """Canonical coset representative of v modulo span(basis): no pivot bit set."""
    r = 0
    while v:
        top = v.bit_length() - 1
        b = basis.get(top)
        if b is None:
            r |= 1 << top
            v ^= 1 << top
        else:
            v ^= b
    return r


def _kernel(columns: Sequence[int]) -> list:
    """Basis of the null space of the matrix with the given columns (as bitsets over columns)."""
    basis: dict = {}
    out = []
    for j, v in enumerate(columns):
        combo = 1 << j
        while v:
            top = v.bit_length() - 1
            hit = basis.get(top)
            if hit is None:
                basis[top] = (v, combo)
                break
            v ^= hit[0]
            combo ^= hit[1]
        if not v:
            out.append(combo)
    return out


def _slice_columns(matrix: GradedMatrix, z: tuple[int, int]) -> list:
    x, y = z
    return [
        _bits(col)
        for col, g in zip(matrix.columns, matrix.col_grades)
        if g.x <= x and g.y <= y
    ]


def _count_below(grades: Sequence[Grade], z: tuple[int, int]) -> int:
    x, y = z
    return sum(1 for g in grades if g.x <= x and g.y <= y)


# ---------------------------------------------------------------- grids


def grid_hull(*complexes: ChainComplex) -> list:
    """All cells of ``[min-1, max]`` in each coordinate over the given complexes' grades."""
    xs, ys = [], []
    for c in complexes:
        for n in range(c.length + 1):
            for g in c.grades(n):
                xs.append(g.x)
                ys.append(g.y)
    if not xs:
        return [(-1, -1)]
    return [
        (x, y)
        for x in range(min(xs) - 1, max(xs) + 1)
        for y in range(min(ys) - 1, max(ys) + 1)
    ]


# ---------------------------------------------------------------- homology


def homology_dims(complex_: ChainComplex, z) -> list:
    """``dim H^n(F_z)`` for n = 0..length, by rank/nullity of the slices at z."""
    z = z.key if isinstance(z, Grade) else tuple(z)
    k = complex_.length
    ranks = [0] * (k + 2)
    for n in range(1, k + 1):
        ranks[n] = gf2_rank(_slice_columns(complex_.boundary(n), z))
    dims = []
    for n in range(k + 1):
        gens = _count_below(complex_.grades(n), z)
        dims.append(gens - ranks[n] - ranks[n + 1])
    return dims


def homology_table(complex_: ChainComplex, cells: Sequence) -> dict:
    return {tuple(z): homology_dims(complex_, z) for z in cells}


def _filtration_reduction(complex_: ChainComplex, z: tuple[int, int]):
    """Standard reduction of the full boundary matrix of F_z with F_{<z} placed first.

    Returns ``(order, lows)``: ``order`` lists ``(level, index, at_z)`` per
    position and ``lows[p]`` is the lowest index of reduced column p, or -1
    when it reduced to zero.
    """
    x, y = z
    order = []
    for at_z in (False, True):
        for n in range(complex_.length + 1):
            for i, g in enumerate(complex_.grades(n)):
                if g.x <= x and g.y <= y and ((g.x, g.y) == z) == at_z:
                    order.append((n, i, at_z))
    position = {(n, i): p for p, (n, i, _) in enumerate(order)}
    pivots: dict = {}
    lows = []
    for p, (n, i, _) in enumerate(order):
        v = 0
        if n > 0:
            for r in complex_.boundary(n).columns[i]:
                v ^= 1 << position[(n - 1, r)]
        while v:
            top = v.bit_length() - 1
            q = pivots.get(top)
            if q is None:
                pivots[top] = v
                break
            v ^= q
        lows.append(v.bit_length() - 1 if v else -1)
    return order, lows


def pairing_homology_dims(complex_: ChainComplex, z) -> list:
    """Homology dims at z read off the persistence pairing (unpaired zero columns)."""
    z = z.key if isinstance(z, Grade) else tuple(z)
    order, lows = _filtration_reduction(complex_, z)
    is_low = {l for l in lows if l >= 0}
    dims = [0] * (complex_.length + 1)
    for p, (n, _, _) in enumerate(order):
        if lows[p] < 0 and p not in is_low:
            dims[n] += 1
    return dims


def delta_gamma(complex_: ChainComplex, z, n: int) -> tuple[int, int]:
    """``(delta, gamma)`` at grade z and level n.

    gamma counts level-n generators exactly at z.  delta is the kernel part
    (level-n columns at z whose lowest index lies in F_{<z}) plus the
    cokernel part (level-n columns at z that reduce to zero and are nobody's
    lowest index).
    """
    z = z.key if isinstance(z, Grade) else tuple(z)
    gamma = sum(1 for g in complex_.grades(n) if g.key == z) if n <= complex_.length else 0
    if gamma == 0:
        return 0, 0
    order, lows = _filtration_reduction(complex_, z)
    split = sum(1 for _, _, at_z in order if not at_z)
    is_low = {l for l in lows if l >= 0}
    delta = 0
    for p in range(split, len(order)):
        lev = order[p][0]
        if lev != n:
            continue
        low = lows[p]
        if 0 <= low < split:
            delta += 1
        elif low < 0 and p not in is_low:
            delta += 1
    return delta, gamma


def delta_gamma_table(complex_: ChainComplex) -> dict:
    """``{(level, (x, y)): (delta, gamma)}`` over every grade carrying a generator.

    Grades without generators have delta = gamma = 0.
    """
    cells = {g.key for n in range(complex_.length + 1) for g in complex_.grades(n)}
    out = {}
    for z in sorted(cells):
        order, lows = _filtration_reduction(complex_, z)
        split = sum(1 for _, _, at_z in order if not at_z)
        is_low = {l for l in lows if l >= 0}
        for n in range(complex_.length + 1):
            delta = gamma = 0
            for p in range(split, len(order)):
                if order[p][0] != n:
                    continue
                gamma += 1
                low = lows[p]
                if 0 <= low < split or (low < 0 and p not in is_low):
                    delta += 1
            if gamma:
                out[(n, z)] = (delta, gamma)
    return out


# ---------------------------------------------------------------- modules and Betti numbers


class SubquotientModule:
    """A bigraded module given pointwise as N_z / D_z inside one ambient GF(2) space.

    Structure maps are induced by the identity of the ambient space, so
    ``N_w`` and ``D_w`` must grow with w.
    """

    def __init__(self, numerator: Callable, denominator: Callable):
        self._num = numerator
        self._den = denominator
        self._cache: dict = {}

    def _parts(self, z: tuple[int, int]):
        hit = self._cache.get(z)
        if hit is None:
            num = list(self._num(z))
            den = list(self._den(z))
            hit = (num, _echelon(den), gf2_rank(num))
            self._cache[z] = hit
        return hit

    def dim(self, z) -> int:
        num, den, rn = self._parts(tuple(z))
        return rn - len(den)

    def map_rank(self, z, w) -> int:
        """Rank of the structure map M_z -> M_w for z <= w."""
        num, _, _ = self._parts(tuple(z))
        _, den_w, _ = self._parts(tuple(w))
        return gf2_rank(list(num) + list(den_w.values())) - len(den_w)

    def betti(self, z) -> tuple[int, int]:
        x, y = z
        zx, zy, zxy = (x - 1, y), (x, y - 1), (x - 1, y - 1)
        num, den, rn = self._parts((x, y))
        num1, den1, rn1 = self._parts(zx)
        num2, den2, rn2 = self._parts(zy)
        num0, _, _ = self._parts(zxy)
        span_all = gf2_rank(list(num1) + list(num2) + list(den.values()))
        beta0 = rn - span_all
        rank_sigma = span_all - len(den)
        dim1 = rn1 - len(den1)
        dim2 = rn2 - len(den2)
        kernel_sigma = dim1 + dim2 - rank_sigma
        shift = max((v.bit_length() for v in list(num1) + list(num2) + list(num0)), default=0)
        images = [_remainder(c, den1) | (_remainder(c, den2) << shift) for c in num0]
        beta1 = kernel_sigma - gf2_rank(images)
        return beta0, beta1


def presentation_module(P: GradedMatrix) -> SubquotientModule:
    """The cokernel of a presentation (rows = generators, columns = relations)."""

    def num(z):
        x, y = z
        return [1 << i for i, g in enumerate(P.row_grades) if g.x <= x and g.y <= y]

    def den(z):
        return _slice_columns(P, z)

    return SubquotientModule(num, den)


def homology_module(complex_: ChainComplex, n: int) -> SubquotientModule:
    """H^n of the complex as ker d^n / im d^{n+1}, computed cell by cell."""
    grades = complex_.grades(n)

    def num(z):
        x, y = z
        idx = [i for i, g in enumerate(grades) if g.x <= x and g.y <= y]
        if n == 0:
            return [1 << i for i in idx]
        cols = complex_.boundary(n).columns
        combos = _kernel([_bits(cols[i]) for i in idx])
        out = []
        for c in combos:
            v = 0
            while c:
                low = c & -c
                v ^= 1 << idx[low.bit_length() - 1]
                c ^= low
            out.append(v)
        return out

    def den(z):
        if n + 1 > complex_.length:
            return []
        return _slice_columns(complex_.boundary(n + 1), z)

    return SubquotientModule(num, den)


def koszul_betti(module, z) -> tuple[int, int]:
    """``(beta0, beta1)`` at grade z of a module or a presentation matrix."""
    if isinstance(module, GradedMatrix):
        module = presentation_module(module)
    return module.betti(tuple(z.key if isinstance(z, Grade) else z))


def betti_multisets(module, cells: Sequence) -> tuple[Counter, Counter]:
    if isinstance(module, GradedMatrix):
        module = presentation_module(module)
    b0, b1 = Counter(), Counter()
    for z in cells:
        a, b = module.betti(tuple(z))
        if a:
            b0[tuple(z)] += a
        if b:
            b1[tuple(z)] += b
    return b0, b1


def presentation_grade_multisets(P: GradedMatrix) -> tuple[Counter, Counter]:
    return Counter(g.key for g in P.row_grades), Counter(g.key for g in P.col_grades)


def presentation_cells(P: GradedMatrix, complex_: Optional[ChainComplex] = None) -> list:
    """Grid hull of a presentation (and optionally the complex it came from)."""
    xs = [g.x for g in P.row_grades] + [g.x for g in P.col_grades]
    ys = [g.y for g in P.row_grades] + [g.y for g in P.col_grades]
    if complex_ is not None:
        for n in range(complex_.length + 1):
            for g in complex_.grades(n):
                xs.append(g.x)
                ys.append(g.y)
    if not xs:
        return [(-1, -1)]
    return [(x, y) for x in range(min(xs) - 1, max(xs) + 1) for y in range(min(ys) - 1, max(ys) + 1)]


def check_presentation(P: GradedMatrix, complex_: ChainComplex, n: int) -> list:
    """Compare coker(P) with H^n of the complex; returns a list of mismatch messages.

    Checks pointwise dimensions, ranks of the unit structure maps in both
    directions, and that the grade multisets of P equal the Koszul Betti
    multisets of the homology.
    """
    cells = presentation_cells(P, complex_)
    hom = homology_module(complex_, n)
    pres = presentation_module(P)
    cellset = set(cells)
    problems = []
    for z in cells:
        if hom.dim(z) != pres.dim(z):
            problems.append(f"dim at {z}: homology {hom.dim(z)} vs presentation {pres.dim(z)}")
        for w in ((z[0] + 1, z[1]), (z[0], z[1] + 1)):
            if w in cellset and hom.map_rank(z, w) != pres.map_rank(z, w):
                problems.append(f"map rank {z}->{w} differs")
    b0, b1 = betti_multisets(hom, cells)
    r0, r1 = presentation_grade_multisets(P)
    if b0 != r0:
        problems.append(f"generator grades {dict(r0)} != beta0 {dict(b0)}")
    if b1 != r1:
        problems.append(f"relation grades {dict(r1)} != beta1 {dict(b1)}")
    return problems


# ---------------------------------------------------------------- generators


def gen_lower_star(width: int, height: int, seed: int, values: Optional[int] = 8) -> ChainComplex:
    """Lower-star bifiltration of a triangulated ``width x height`` grid of squares.

    Vertices get independent bigrades (integers below ``values``, or
    6-digit decimals in [0, 1) when ``values`` is None); edges and triangles
    take the coordinatewise maximum over their vertices.
    """
    if width < 1 or height < 1:
        raise ValueError("grid dimensions must be positive")
    rng = np.random.default_rng(seed)
    nv = (width + 1) * (height + 1)
    if values is None:
        raw = rng.integers(0, 1_000_000, size=(nv, 2))
        tok = lambda v: f"0.{int(v):06d}"
    else:
        raw = rng.integers(0, values, size=(nv, 2))
        tok = lambda v: str(int(v))

    def vid(r, c):
        return r * (width + 1) + c

    def grade(vs):
        return (tok(max(raw[v, 0] for v in vs)), tok(max(raw[v, 1] for v in vs)))

    vertices = [((tok(raw[v, 0]), tok(raw[v, 1])), []) for v in range(nv)]
    edge_index: dict = {}
    edges = []

    def add_edge(a, b):
        key = (min(a, b), max(a, b))
        edge_index[key] = len(edges)
        edges.append((grade(key), list(key)))

    triangles = []
    for r in range(height + 1):
        for c in range(width + 1):
            if c < width:
                add_edge(vid(r, c), vid(r, c + 1))
            if r < height:
                add_edge(vid(r, c), vid(r + 1, c))
            if r < height and c < width:
                add_edge(vid(r, c), vid(r + 1, c + 1))
    for r in range(height):
        for c in range(width):
            a, b, d = vid(r, c), vid(r, c + 1), vid(r + 1, c + 1)
            e = vid(r + 1, c)
            for tri in ((a, b, d), (a, e, d)):
                u, v, w = sorted(tri)
                bd = [edge_index[(u, v)], edge_index[(u, w)], edge_index[(v, w)]]
                triangles.append((grade(tri), bd))
    return complex_from_generators([vertices, edges, triangles])


def _levels_of(complex_: ChainComplex) -> list:
    levels = []
    for n in range(complex_.length + 1):
        grades = complex_.grades(n)
        cols = complex_.boundary(n).columns if n > 0 else [[] for _ in grades]
        levels.append([(g.tokens(), list(col)) for g, col in zip(grades, cols)])
    return levels


def inflate_with_local_pairs(complex_: ChainComplex, seed: int, count: int) -> ChainComplex:
    """Add ``count`` contractible pairs (g, r) at random grades.

    For a random grade z on level n-1/n: pick a random chain w of level n-1
    below z, add g with boundary d(w) and r with boundary g + w.  Then
    g + w is a cycle killed by r at z, so the result is homotopy equivalent.
    """
    if count == 0 or complex_.length == 0:
        return complex_.copy()
    rng = np.random.default_rng(seed)
    levels = _levels_of(complex_)
    all_tokens = [t for lev in levels for t, _ in lev]
    xs_rank = {}
    ys_rank = {}
    for n in range(complex_.length + 1):
        for g, (t, _) in zip(complex_.grades(n), levels[n]):
            xs_rank[t[0]] = g.x
            ys_rank[t[1]] = g.y
    for _ in range(count):
        n = int(rng.integers(1, complex_.length + 1))
        tx = all_tokens[int(rng.integers(len(all_tokens)))][0]
        ty = all_tokens[int(rng.integers(len(all_tokens)))][1]
        zx, zy = xs_rank[tx], ys_rank[ty]
        below = [
            i for i, (t, _) in enumerate(levels[n - 1])
            if xs_rank[t[0]] <= zx and ys_rank[t[1]] <= zy
        ]
        w = [i for i in below if rng.random() < 0.3]
        bd_g: set = set()
        if n - 1 >= 1:
            for i in w:
                bd_g.symmetric_difference_update(levels[n - 1][i][1])
        g_index = len(levels[n - 1])
        levels[n - 1].append(((tx, ty), sorted(bd_g)))
        levels[n].append(((tx, ty), sorted(w + [g_index])))
    return complex_from_generators(levels)


def random_graded_matrix(rng: np.random.Generator, n_cols: int, n_rows: int, side: int,
                         density: float = 0.1, max_support: int = 6) -> GradedMatrix:
    """Random homogeneous matrix with grades on a ``side x side`` grid, colex-ordered."""
    def grades(count):
        pts = rng.integers(0, side, size=(count, 2))
        out = [Grade(int(a), int(b)) for a, b in pts]
        out.sort(key=lambda g: (g.y, g.x))
        return out

    rg = grades(n_rows)
    cg = grades(n_cols)
    cols = []
    for g in cg:
        below = [i for i, r in enumerate(rg) if r <= g]
        if not below:
            cols.append([])
            continue
        k = min(len(below), int(rng.binomial(max_support, min(1.0, density * 4))))
        pick = rng.choice(len(below), size=k, replace=False) if k else []
        cols.append(sorted(below[int(p)] for p in pick))
    return GradedMatrix(cols, cg, rg)


def generator_counts(complex_: ChainComplex) -> Counter:
    return Counter(complex_.generator_counts())
