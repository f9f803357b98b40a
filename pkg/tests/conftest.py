from pathlib import Path

import pytest

from mpcompress import testkit as tk
from mpcompress.scc import read_scc

DATA = Path(__file__).parent / "data"
RUNNING_EXAMPLE = DATA / "running_example.scc"

# grid shapes of the small lower-star corpus; (5, 5) gives 171 simplices
SHAPES = [(5, 5), (4, 5), (3, 4), (2, 2), (1, 1), (5, 4), (3, 3)]


def lower_star_corpus(count, start=0):
    for s in range(start, start + count):
        w, h = SHAPES[s % len(SHAPES)]
        yield s, tk.gen_lower_star(w, h, s, values=[3, 5, 8][s % 3])


@pytest.fixture
def running_example():
    return read_scc(RUNNING_EXAMPLE)


# one line per acceptance criterion, echoed at the end of the run
ACCEPTANCE_LINES = []


def record(number, title, ok, detail=""):
    line = f"criterion {number:>2} {'PASS' if ok else 'FAIL'}  {title}" + (f"  ({detail})" if detail else "")
    ACCEPTANCE_LINES.append(line)
    print(line)
    return ok


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split()[1])):
            terminalreporter.write_line(line)
