"""Grades, sparse GF(2) columns, graded matrices and chain complexes.

A column is a plain ``list[int]`` of strictly ascending row indices (the
support of a GF(2) vector).  Column lists are treated as immutable values:
every operation that changes a column builds a new list, so snapshots taken
by reference stay valid.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from enum import IntEnum
from fractions import Fraction
from typing import Iterable, Optional, Sequence

Column = list  # list[int], strictly ascending


class ValidationError(ValueError):
    """Structurally invalid matrix or complex (homogeneity, boundary of boundary, shapes)."""


class Grade:
    """A point of Z^2 after rank normalization.

    Equality, hashing and ordering use ``(x, y)`` only; ``raw`` keeps the
    original value tokens so that serialization can round-trip exactly.
    Python's tuple order on ``key`` is the lexicographic order (x first),
    ``colex_key`` compares y first.
    """

    __slots__ = ("x", "y", "raw")

    def __init__(self, x: int, y: int, raw: Optional[tuple[str, str]] = None):
        self.x = x
        self.y = y
        self.raw = raw

    @property
    def key(self) -> tuple[int, int]:
        return (self.x, self.y)

    @property
    def colex_key(self) -> tuple[int, int]:
        return (self.y, self.x)

    def __le__(self, other: "Grade") -> bool:
        # product partial order
        return self.x <= other.x and self.y <= other.y

    def __lt__(self, other: "Grade") -> bool:
        return self <= other and self != other

    def __eq__(self, other) -> bool:
        if not isinstance(other, Grade):
            return NotImplemented
        return self.x == other.x and self.y == other.y

    def __hash__(self) -> int:
        return hash((self.x, self.y))

    def identical(self, other: "Grade") -> bool:
        return self == other and self.raw == other.raw

    def tokens(self) -> tuple[str, str]:
        if self.raw is not None:
            return self.raw
        return (str(self.x), str(self.y))

    def __repr__(self) -> str:
        if self.raw is None:
            return f"Grade({self.x}, {self.y})"
        return f"Grade({self.x}, {self.y}, raw={self.raw!r})"


def colex_key(g: Grade) -> tuple[int, int]:
    return (g.y, g.x)


def sym_diff(a: Sequence[int], b: Sequence[int]) -> list[int]:
    """GF(2) sum of two sparse columns."""
    if not a:
        return list(b)
    if not b:
        return list(a)
    s = set(a)
    s.symmetric_difference_update(b)
    return sorted(s)


def pivot(column: Sequence[int]) -> Optional[int]:
    """Largest row index in the support, or None for the zero column."""
    return column[-1] if column else None


@dataclass
class GradedMatrix:
    columns: list
    col_grades: list
    row_grades: list

    @property
    def n_rows(self) -> int:
        return len(self.row_grades)

    @property
    def n_cols(self) -> int:
        return len(self.columns)

    def copy(self) -> "GradedMatrix":
        # columns are immutable lists, a shallow copy of the outer list suffices
        return GradedMatrix(list(self.columns), list(self.col_grades), list(self.row_grades))

    def nnz(self) -> int:
        return sum(len(c) for c in self.columns)

    def validate(self, require_colex: bool = True) -> None:
        if len(self.columns) != len(self.col_grades):
            raise ValidationError("column count does not match column grade count")
        n = self.n_rows
        rg = self.row_grades
        for j, col in enumerate(self.columns):
            g = self.col_grades[j]
            prev = -1
            for i in col:
                if i <= prev:
                    raise ValidationError(f"column {j}: row indices not strictly ascending")
                if i >= n:
                    raise ValidationError(f"column {j}: row index {i} out of range ({n} rows)")
                if not rg[i] <= g:
                    raise ValidationError(
                        f"column {j} at grade {g.key} has row {i} at grade {rg[i].key}"
                        " which is not below it"
                    )
                prev = i
        if require_colex:
            for name, grades in (("column", self.col_grades), ("row", self.row_grades)):
                for a, b in zip(grades, grades[1:]):
                    if colex_key(a) > colex_key(b):
                        raise ValidationError(f"{name} grades are not in colex order")

    def to_dense(self) -> list[list[int]]:
        out = [[0] * self.n_cols for _ in range(self.n_rows)]
        for j, col in enumerate(self.columns):
            for i in col:
                out[i][j] = 1
        return out

    def same_as(self, other: "GradedMatrix") -> bool:
        """Exact equality including raw grade tokens."""
        return (
            self.columns == other.columns
            and len(self.col_grades) == len(other.col_grades)
            and len(self.row_grades) == len(other.row_grades)
            and all(a.identical(b) for a, b in zip(self.col_grades, other.col_grades))
            and all(a.identical(b) for a, b in zip(self.row_grades, other.row_grades))
        )


def add_column(matrix: GradedMatrix, src: int, dst: int) -> None:
    """``columns[dst] += columns[src]`` over GF(2); only grade-preserving additions are allowed."""
    if src == dst:
        raise ValueError("cannot add a column to itself")
    if not matrix.col_grades[src] <= matrix.col_grades[dst]:
        raise ValueError(
            f"addition of column {src} {matrix.col_grades[src].key} to column {dst} "
            f"{matrix.col_grades[dst].key} is not grade-preserving"
        )
    matrix.columns[dst] = sym_diff(matrix.columns[dst], matrix.columns[src])


def is_local(matrix: GradedMatrix, j: int) -> bool:
    """True iff column j is nonzero and its pivot row has the column's grade.

    The zero column is never local: it has no pivot to pair with.
    """
    col = matrix.columns[j]
    if not col:
        return False
    return matrix.row_grades[col[-1]] == matrix.col_grades[j]


@dataclass
class ChainComplex:
    """Boundary matrices ``[d^k, ..., d^1]`` plus the grades of the bottom level.

    Level ``n`` generators are the columns of ``d^n`` (and the rows of
    ``d^{n+1}``).  A complex without matrices consists of level 0 only.
    """

    matrices: list
    bottom_grades: list = field(default_factory=list)

    def __post_init__(self):
        if self.matrices:
            self.bottom_grades = self.matrices[-1].row_grades

    @property
    def length(self) -> int:
        return len(self.matrices)

    @property
    def top_level(self) -> int:
        return len(self.matrices)

    def boundary(self, n: int) -> GradedMatrix:
        """The matrix of d^n : level n -> level n-1, for 1 <= n <= length."""
        if not 1 <= n <= self.length:
            raise IndexError(f"no boundary matrix d^{n} in a complex of length {self.length}")
        return self.matrices[self.length - n]

    def grades(self, n: int) -> list:
        if n == 0:
            return self.bottom_grades
        return self.boundary(n).col_grades

    def sizes(self) -> list[int]:
        """Generator counts, highest level first."""
        return [m.n_cols for m in self.matrices] + [len(self.bottom_grades)]

    def copy(self) -> "ChainComplex":
        if not self.matrices:
            return ChainComplex([], list(self.bottom_grades))
        mats = [m.copy() for m in self.matrices]
        for upper, lower in zip(mats, mats[1:]):
            upper.row_grades = lower.col_grades
        return ChainComplex(mats)

    def validate(self, require_colex: bool = True) -> None:
        for n in range(1, self.length + 1):
            m = self.boundary(n)
            m.validate(require_colex)
            lower = self.grades(n - 1)
            if len(m.row_grades) != len(lower) or any(
                a != b for a, b in zip(m.row_grades, lower)
            ):
                raise ValidationError(f"row grades of d^{n} differ from grades of level {n - 1}")
        if require_colex:
            g = self.bottom_grades
            for a, b in zip(g, g[1:]):
                if colex_key(a) > colex_key(b):
                    raise ValidationError("level 0 grades are not in colex order")
        for n in range(2, self.length + 1):
            bad = first_nonzero_composite(self.boundary(n - 1), self.boundary(n))
            if bad is not None:
                raise ValidationError(
                    f"d^{n - 1} o d^{n} != 0: boundary of column {bad} of d^{n} is not a cycle"
                )

    def same_as(self, other: "ChainComplex") -> bool:
        if self.length != other.length:
            return False
        if self.length == 0:
            return len(self.bottom_grades) == len(other.bottom_grades) and all(
                a.identical(b) for a, b in zip(self.bottom_grades, other.bottom_grades)
            )
        return all(a.same_as(b) for a, b in zip(self.matrices, other.matrices))

    def generator_counts(self) -> dict:
        """``{(level, (x, y)): count}`` over all generators."""
        counts: dict = {}
        for n in range(self.length + 1):
            for g in self.grades(n):
                counts[(n, g.key)] = counts.get((n, g.key), 0) + 1
        return counts


def first_nonzero_composite(lower: GradedMatrix, upper: GradedMatrix) -> Optional[int]:
    """Index of the first column c of ``upper`` with ``lower @ c != 0``, else None."""
    for j, col in enumerate(upper.columns):
        acc: set = set()
        for i in col:
            acc.symmetric_difference_update(lower.columns[i])
        if acc:
            return j
    return None


class Label(IntEnum):
    UNLABELED = 0
    GLOBAL = 1
    POSITIVE = 2
    NEGATIVE = 3


class LabelTable:
    """Per-level generator labels and the local-pair partner map.

    ``partner[n][i]`` is the paired generator on level ``n + 1`` (for a
    POSITIVE generator) or ``n - 1`` (for a NEGATIVE one), -1 otherwise.
    """

    def __init__(self, sizes_by_level: Sequence[int]):
        self.labels = [[Label.UNLABELED] * s for s in sizes_by_level]
        self.partner = [[-1] * s for s in sizes_by_level]

    @classmethod
    def for_complex(cls, complex_: ChainComplex) -> "LabelTable":
        return cls([len(complex_.grades(n)) for n in range(complex_.length + 1)])

    def pair(self, level: int, column: int, row: int) -> None:
        self.labels[level][column] = Label.NEGATIVE
        self.labels[level - 1][row] = Label.POSITIVE
        self.partner[level][column] = row
        self.partner[level - 1][row] = column

    def counts(self, level: int) -> dict:
        out = {lab.name.lower(): 0 for lab in Label}
        for lab in self.labels[level]:
            out[lab.name.lower()] += 1
        return out


def chunks(grades: Sequence[Grade]) -> list[tuple[int, int]]:
    """Maximal runs ``[start, end)`` of equal grade."""
    out = []
    start = 0
    for j in range(1, len(grades) + 1):
        if j == len(grades) or grades[j] != grades[start]:
            out.append((start, j))
            start = j
    return out


def _stable_colex_order(grades: Sequence[Grade]) -> list[int]:
    return sorted(range(len(grades)), key=lambda i: (grades[i].y, grades[i].x))


def colex_normalize(complex_: ChainComplex) -> tuple[ChainComplex, list]:
    """Sort every level into colex grade order (stable), permuting rows to match.

    Returns the sorted complex and one permutation per level (index 0 is the
    bottom level) with ``perm[new] = old``.  Raises ValidationError if some
    column supports a row whose grade is not below the column grade.
    """
    k = complex_.length
    perms = [_stable_colex_order(complex_.grades(n)) for n in range(k + 1)]
    inverse = []
    for p in perms:
        inv = [0] * len(p)
        for new, old in enumerate(p):
            inv[old] = new
        inverse.append(inv)

    new_grades = [[complex_.grades(n)[old] for old in perms[n]] for n in range(k + 1)]
    mats = []
    for n in range(k, 0, -1):
        m = complex_.boundary(n)
        rows = inverse[n - 1]
        cols = [sorted(rows[i] for i in m.columns[old]) for old in perms[n]]
        mats.append(GradedMatrix(cols, new_grades[n], new_grades[n - 1]))
    out = ChainComplex(mats, new_grades[0])
    for m in mats:
        m.validate(require_colex=True)
    return out, perms


def identity_permutation(perm: Sequence[int]) -> bool:
    return all(i == p for i, p in enumerate(perm))


def normalize_values(values: Iterable[str]) -> dict:
    """Map value tokens to ranks of their exact numeric value (equal values share a rank)."""
    parsed = {}
    for tok in values:
        if tok not in parsed:
            parsed[tok] = Fraction(tok)
    distinct = sorted(set(parsed.values()))
    rank = {v: i for i, v in enumerate(distinct)}
    return {tok: rank[v] for tok, v in parsed.items()}


def complex_from_generators(levels: Sequence[Sequence[tuple]]) -> ChainComplex:
    """Build a colex-normalized complex from raw generator lists.

    ``levels[n]`` is a list of ``(grade_tokens, boundary)`` pairs where
    ``grade_tokens`` is a pair of strings and ``boundary`` an iterable of
    indices into ``levels[n - 1]``.  Grades are rank-normalized jointly over
    all levels.
    """
    xs = normalize_values(t[0] for lev in levels for t, _ in lev)
    ys = normalize_values(t[1] for lev in levels for t, _ in lev)
    grades = [[Grade(xs[t[0]], ys[t[1]], (t[0], t[1])) for t, _ in lev] for lev in levels]
    if not levels:
        return ChainComplex([], [])
    mats = []
    for n in range(len(levels) - 1, 0, -1):
        cols = []
        for j, (_, bd) in enumerate(levels[n]):
            bd = list(bd)
            col = sorted(set(bd))
            if len(col) != len(bd):
                raise ValidationError(f"level {n} generator {j}: repeated boundary index")
            cols.append(col)
        mats.append(GradedMatrix(cols, grades[n], grades[n - 1]))
    raw = ChainComplex(mats, grades[0])
    out, _ = colex_normalize(raw)
    return out
