"""Reading and writing chain complexes in the scc2020 text format.

Layout::

    scc2020
    # comments and blank lines are ignored anywhere
    2                       number of parameters
    3 7 5                   generator counts, highest dimension first
    2 1 ; 0 1 4             one generator per line: grade ; boundary indices
    ...

Boundary indices are 0-based positions in the next block (one dimension
lower); the lines of the last block end at ``;``.
"""
from __future__ import annotations

import io
from fractions import Fraction
from typing import IO, Iterator, Union

from .core import ChainComplex, ValidationError, complex_from_generators

MAGIC = "scc2020"


class SccFormatError(ValueError):
    """Syntax or structural error in an scc2020 document; carries the line number."""

    def __init__(self, message: str, line: int | None = None, column: int | None = None):
        self.line = line
        self.column = column
        where = ""
        if line is not None:
            where = f"line {line}"
            if column is not None:
                where += f", column {column}"
            where += ": "
        super().__init__(where + message)


def _significant_lines(text: str) -> Iterator[tuple[int, str]]:
    for lineno, line in enumerate(text.splitlines(), start=1):
        stripped = line.strip()
        if not stripped or stripped.startswith("#"):
            continue
        yield lineno, stripped


def _check_number(tok: str, lineno: int, col: int) -> None:
    try:
        Fraction(tok)
    except (ValueError, ZeroDivisionError):
        raise SccFormatError(f"invalid grade value {tok!r}", lineno, col) from None


def parse_scc(source: Union[str, IO[str]]) -> ChainComplex:
    """Parse an scc2020 document (text or text stream) into a colex-normalized complex.

    Raises SccFormatError for malformed input and ValidationError when the
    data is well-formed but not a graded chain complex.
    """
    text = source if isinstance(source, str) else source.read()
    lines = _significant_lines(text)

    first = next(lines, None)
    if first is None or first[1] != MAGIC:
        raise SccFormatError(f"expected magic line {MAGIC!r}", first[0] if first else 1)

    nxt = next(lines, None)
    if nxt is None:
        raise SccFormatError("missing number of parameters")
    lineno, line = nxt
    if line != "2":
        raise SccFormatError(f"only 2-parameter complexes are supported, got {line!r}", lineno, 1)

    nxt = next(lines, None)
    if nxt is None:
        raise SccFormatError("missing block sizes")
    lineno, line = nxt
    try:
        sizes = [int(t) for t in line.split()]
    except ValueError:
        raise SccFormatError(f"block sizes must be integers: {line!r}", lineno, 1) from None
    if not sizes or any(s < 0 for s in sizes):
        raise SccFormatError("block sizes must be a nonempty list of non-negative integers", lineno, 1)

    blocks = []  # highest dimension first
    for b, size in enumerate(sizes):
        last_block = b == len(sizes) - 1
        lower = 0 if last_block else sizes[b + 1]
        gens = []
        for _ in range(size):
            nxt = next(lines, None)
            if nxt is None:
                raise SccFormatError(
                    f"block {b} declares {size} generators but the file ends after {len(gens)}"
                )
            lineno, line = nxt
            if ";" not in line:
                raise SccFormatError("missing ';' between grade and boundary", lineno)
            head, _, tail = line.partition(";")
            grade = head.split()
            if len(grade) != 2:
                raise SccFormatError(f"expected 2 grade values, found {len(grade)}", lineno, 1)
            for t in grade:
                _check_number(t, lineno, line.index(t) + 1)
            if last_block and tail.strip():
                raise SccFormatError(
                    "generators of the lowest dimension must have empty boundary", lineno, len(head) + 2
                )
            idx = []
            pos = len(head) + 1
            for tok in tail.split():
                col = line.index(tok, pos) + 1
                pos = col + len(tok) - 1
                if not tok.isdigit():
                    raise SccFormatError(f"invalid boundary index {tok!r}", lineno, col)
                i = int(tok)
                if i >= lower:
                    raise SccFormatError(
                        f"boundary index {i} out of range (next block has {lower} generators)",
                        lineno,
                        col,
                    )
                idx.append(i)
            if len(set(idx)) != len(idx):
                raise SccFormatError("duplicate boundary index", lineno)
            gens.append(((grade[0], grade[1]), idx))
        blocks.append(gens)

    extra = next(lines, None)
    if extra is not None:
        raise SccFormatError("unexpected content after the last block", extra[0])

    levels = list(reversed(blocks))
    try:
        out = complex_from_generators(levels)
        out.validate()
    except ValidationError as exc:
        raise ValidationError(f"invalid chain complex: {exc}") from None
    return out


def read_scc(path: str) -> ChainComplex:
    with open(path, encoding="utf-8", newline="") as fh:
        return parse_scc(fh)


def write_scc(complex_: ChainComplex, stream: IO[str]) -> None:
    """Canonical rendering: single spaces, ascending indices, LF line ends."""
    k = complex_.length
    out = [MAGIC, "2", " ".join(str(s) for s in complex_.sizes())]
    for n in range(k, -1, -1):
        grades = complex_.grades(n)
        cols = complex_.boundary(n).columns if n > 0 else [[] for _ in grades]
        for g, col in zip(grades, cols):
            gx, gy = g.tokens()
            line = f"{gx} {gy} ;"
            if col:
                line += " " + " ".join(str(i) for i in col)
            out.append(line)
    stream.write("\n".join(out) + "\n")


def to_scc_string(complex_: ChainComplex) -> str:
    buf = io.StringIO()
    write_scc(complex_, buf)
    return buf.getvalue()
