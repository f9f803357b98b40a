"""Acceptance criteria, each at its stated tolerance.

Every test records one PASS/FAIL line; the lines are repeated in the
pytest terminal summary.  Criterion 7 runs the grid-scan baseline on a
10,000 x 10,000 grid and takes the better part of a minute.
"""
import math
import time

import numpy as np

from mpcompress import cli
from mpcompress import testkit as tk
from mpcompress.core import Grade, GradedMatrix
from mpcompress.mpfree import (
    MpfreeCounters,
    ker_basis,
    ker_basis_lw,
    min_gens,
    min_gens_lw,
    mpfree,
    pipeline,
    presentation_complex,
)
from mpcompress.multichunk import multi_chunk
from mpcompress.scc import parse_scc, read_scc, to_scc_string

from conftest import RUNNING_EXAMPLE, lower_star_corpus, record
from test_cli import tetrahedron

CORPUS = list(lower_star_corpus(200))


def test_01_golden_multichunk():
    t = time.perf_counter()
    out, _ = multi_chunk(read_scc(RUNNING_EXAMPLE))
    dt = time.perf_counter() - t
    ok = (
        out.sizes() == [2, 3, 2]
        and [g.key for g in out.grades(0)] == [(0, 0), (2, 0)]  # A, E
        and [g.key for g in out.grades(1)] == [(0, 0), (1, 1), (2, 2)]  # CD, BC, CE
        and [g.key for g in out.grades(2)] == [(2, 1), (1, 2)]  # ABC, BCD
        and out.boundary(2).columns == [[1], [0, 1]]  # ABC = {BC}, BCD = {CD, BC}
        and out.boundary(1).columns == [[], [], [0, 1]]  # CD = BC = 0, CE = {A, E}
        and dt < 1.0
    )
    assert record(1, "golden multi-chunk on the running example", ok, f"{dt * 1000:.1f} ms")


def test_02_golden_mpfree():
    t = time.perf_counter()
    P = pipeline(read_scc(RUNNING_EXAMPLE), [1])[1]
    dt = time.perf_counter() - t
    expected = GradedMatrix([[1], [0, 1]], [Grade(2, 1), Grade(1, 2)], [Grade(0, 0), Grade(1, 1)])
    ours, theirs = tk.presentation_module(P), tk.presentation_module(expected)
    hull = [(x, y) for x in range(3) for y in range(3)]
    dims_match = all(ours.dim(z) == theirs.dim(z) for z in hull)
    ok = (
        sorted(g.key for g in P.row_grades) == [(0, 0), (1, 1)]
        and sorted(g.key for g in P.col_grades) == [(1, 2), (2, 1)]
        and dims_match
        and ours.dim((1, 2)) == 1
        and dt < 1.0
    )
    assert record(2, "golden mpfree presentation of H1", ok, f"{dt * 1000:.1f} ms")


def test_03_homotopy_equivalence():
    t = time.perf_counter()
    bad = cells = 0
    for _, c in CORPUS:
        assert sum(c.sizes()) <= 200
        out, _ = multi_chunk(c)
        for z in tk.grid_hull(c):
            cells += 1
            bad += tk.homology_dims(c, z) != tk.homology_dims(out, z)
    dt = time.perf_counter() - t
    ok = bad == 0 and dt < 60
    assert record(3, "homology preserved on 200 lower-star instances", ok,
                  f"{cells} grades, {bad} mismatches, {dt:.1f} s")


def test_04_optimality():
    bad_delta = bad_inflate = 0
    for seed, c in CORPUS:
        out, _ = multi_chunk(c)
        counts = out.generator_counts()
        delta = {k: d for k, (d, _) in tk.delta_gamma_table(c).items() if d}
        bad_delta += counts != delta
        fat = tk.inflate_with_local_pairs(c, seed, 5)
        fat_counts = fat.generator_counts()
        bad_inflate += any(fat_counts.get(k, 0) < v for k, v in counts.items())
        bad_inflate += multi_chunk(fat)[0].generator_counts() != counts
    ok = bad_delta == 0 and bad_inflate == 0
    assert record(4, "output counts equal delta and survive inflation", ok,
                  f"{bad_delta} delta mismatches, {bad_inflate} inflation mismatches")


def test_05_queue_grid_scan_equivalence():
    rng = np.random.default_rng(2024)
    bad = 0
    t = time.perf_counter()
    for _ in range(500):
        A = tk.random_graded_matrix(
            rng, int(rng.integers(1, 501)), int(rng.integers(1, 300)), int(rng.integers(1, 30)),
            density=float(rng.uniform(0.02, 0.5)),
        )
        bad += not min_gens(A).same_as(min_gens_lw(A))
        bad += not ker_basis(A).same_as(ker_basis_lw(A))
    dt = time.perf_counter() - t
    assert record(5, "queued and grid-scan min_gens/ker_basis identical on 500 matrices", bad == 0,
                  f"{bad} differences, {dt:.1f} s")


def test_06_minimality():
    bad_betti = bad_size = 0
    for _, c in CORPUS:
        P = pipeline(c, [1])[1]
        bad_betti += bool(tk.check_presentation(P, c, 1))
        ref = mpfree(multi_chunk(c)[0], 1, lw=True)
        bad_size += (ref.n_rows, ref.n_cols) != (P.n_rows, P.n_cols)
    ok = bad_betti == 0 and bad_size == 0
    assert record(6, "presentations match Koszul Betti numbers and the reference sizes", ok,
                  f"{bad_betti} Betti mismatches, {bad_size} size mismatches over 200 runs")


def test_07_grid_independence():
    n = 10_000
    A = GradedMatrix([[i] for i in range(n)], [Grade(i, i) for i in range(n)], [Grade(0, 0)] * n)
    queued = MpfreeCounters()
    t = time.perf_counter()
    G = min_gens(A, queued)
    dt = time.perf_counter() - t
    scan = MpfreeCounters()
    G_lw = min_gens_lw(A, scan)
    ok = (
        queued.grade_pops <= n + queued.grade_pushes
        and scan.cells_visited == n * n
        and G.same_as(G_lw)
        and dt < 5.0
    )
    assert record(7, "grade-queue pops independent of the grid size", ok,
                  f"{queued.grade_pops} pops, {queued.grade_pushes} pushes, {dt:.2f} s; "
                  f"grid scan visited {scan.cells_visited} cells")


def test_08_round_trip():
    bad = 0
    for s in range(100):
        c = tk.gen_lower_star(1 + s % 5, 1 + (s // 5) % 4, 1000 + s, values=None if s % 2 else 7)
        if s % 4 == 0:
            c = tk.inflate_with_local_pairs(c, s, 4)
        text = to_scc_string(c)
        again = parse_scc(text)
        bad += not again.same_as(c) or to_scc_string(again) != text
    assert record(8, "parse/write round trip on 100 generated files", bad == 0, f"{bad} failures")


def test_09_determinism(tmp_path):
    docs = [RUNNING_EXAMPLE.read_text(), to_scc_string(tetrahedron())]
    docs += [to_scc_string(c) for _, c in CORPUS]
    bad = 0
    for i, text in enumerate(docs):
        src = tmp_path / f"in{i}.scc"
        src.write_text(text)
        for tool in (cli.multichunk_main, cli.mpfree_main):
            outs = []
            for threads in ("1", "auto"):
                dst = tmp_path / f"out{i}_{threads}.scc"
                assert tool([str(src), str(dst), "--threads", threads]) == 0
                produced = sorted(tmp_path.glob(f"out{i}_{threads}*.scc"))
                outs.append([p.read_bytes() for p in produced])
                for p in produced:
                    p.unlink()
            bad += outs[0] != outs[1]
    assert record(9, "--threads 1 and --threads auto give byte-identical files", bad == 0,
                  f"{2 * len(docs)} runs compared, {bad} differences")


def _mesh(target):
    side = round(math.sqrt(target / 6))
    return tk.gen_lower_star(side, side, 11, values=None)


def _end_to_end(text):
    t = time.perf_counter()
    for P in pipeline(parse_scc(text)).values():
        to_scc_string(presentation_complex(P))
    return time.perf_counter() - t


def test_10_desk_scale_sanity():
    texts = {target: to_scc_string(_mesh(target)) for target in (12_500, 25_000, 50_000)}
    big = parse_scc(texts[50_000])
    ratio = len(to_scc_string(multi_chunk(big)[0])) / len(texts[50_000])
    times = [min(_end_to_end(texts[t]) for _ in range(3)) for t in (12_500, 25_000, 50_000)]
    growth = [b / a for a, b in zip(times, times[1:])]
    ok = ratio < 0.5 and all(g <= 3.0 for g in growth)
    assert record(10, "50k-simplex mesh compresses below 50% and time scales within 3x", ok,
                  f"{sum(big.sizes())} simplices, ratio {ratio:.3f}, times "
                  + ", ".join(f"{t:.2f}s" for t in times) + ", growth " + ", ".join(f"{g:.2f}" for g in growth))
