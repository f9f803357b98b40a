"""Command-line front ends: ``multichunk`` and ``mpfree``.

Exit codes: 0 success, 1 malformed input, 2 invalid complex or arguments,
3 ``--verify`` mismatch.
"""
from __future__ import annotations

import argparse
import os
import sys
import time
from dataclasses import dataclass
from typing import Optional, Sequence

from . import testkit
from .core import ChainComplex, ValidationError
from .mpfree import MpfreeCounters, pipeline, presentation_complex
from .multichunk import multi_chunk
from .scc import SccFormatError, parse_scc, to_scc_string

EXIT_OK, EXIT_PARSE, EXIT_INVALID, EXIT_VERIFY = 0, 1, 2, 3


@dataclass
class RunConfig:
    input: str = "-"
    output: str = "-"
    threads: object = "auto"
    dim: Optional[int] = None
    chunk_preprocess: bool = True
    stats: Optional[str] = None  # None, "kv" or "pretty"
    verify: bool = False
    lw_baseline: bool = False


def _threads_arg(value: str):
    if value == "auto":
        return value
    try:
        n = int(value)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a positive integer or 'auto', got {value!r}") from None
    if n < 1:
        raise argparse.ArgumentTypeError("thread count must be positive")
    return n


def _parser(prog: str, mpfree_flags: bool) -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog=prog, description=__doc__.splitlines()[0])
    p.add_argument("input", nargs="?", default="-", help="scc2020 input file, '-' for stdin")
    p.add_argument("output", nargs="?", default="-", help="output file, '-' for stdout")
    p.add_argument("--threads", type=_threads_arg, default=None,
                   help="worker threads or 'auto' (default: $MPCOMPRESS_THREADS, else auto)")
    p.add_argument("--stats", nargs="?", const="kv", choices=["kv", "pretty"],
                   help="print timings and counts to stderr (key=value, or a table with =pretty)")
    p.add_argument("--verify", action="store_true", help="cross-check the result with brute-force oracles")
    if mpfree_flags:
        p.add_argument("--dim", type=int, default=None, help="homology level (default: every level with both maps)")
        p.add_argument("--no-chunk-preprocess", action="store_true", help="skip the multi-chunk pass")
        p.add_argument("--lw-baseline", action="store_true", help="use the grid-scan reference algorithms")
    return p


def _config(args: argparse.Namespace) -> RunConfig:
    threads = args.threads
    if threads is None:
        env = os.environ.get("MPCOMPRESS_THREADS")
        threads = _threads_arg(env) if env else "auto"
    return RunConfig(
        input=args.input,
        output=args.output,
        threads=threads,
        dim=getattr(args, "dim", None),
        chunk_preprocess=not getattr(args, "no_chunk_preprocess", False),
        stats=args.stats,
        verify=args.verify,
        lw_baseline=getattr(args, "lw_baseline", False),
    )


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    with open(path, encoding="utf-8", newline="") as fh:
        return fh.read()


def _write(path: str, text: str) -> None:
    if path == "-":
        sys.stdout.write(text)
        sys.stdout.flush()
        return
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(text)


def _emit_stats(stats: dict, style: str) -> None:
    if style == "pretty":
        width = max(len(k) for k in stats)
        for k, v in stats.items():
            if isinstance(v, float):
                v = f"{v:.6f}"
            print(f"{k:<{width}}  {v}", file=sys.stderr)
    else:
        for k, v in stats.items():
            if isinstance(v, float):
                v = f"{v:.6f}"
            print(f"{k}={v}", file=sys.stderr)


def _load(cfg: RunConfig) -> tuple[Optional[ChainComplex], str, int]:
    try:
        text = _read(cfg.input)
    except OSError as exc:
        print(f"error: cannot read {cfg.input}: {exc}", file=sys.stderr)
        return None, "", EXIT_PARSE
    try:
        return parse_scc(text), text, EXIT_OK
    except SccFormatError as exc:
        print(f"error: {cfg.input}: {exc}", file=sys.stderr)
        return None, text, EXIT_PARSE
    except ValidationError as exc:
        print(f"error: {cfg.input}: {exc}", file=sys.stderr)
        return None, text, EXIT_INVALID


def run_multichunk(cfg: RunConfig) -> int:
    wall0 = time.perf_counter()
    complex_, text, code = _load(cfg)
    if complex_ is None:
        return code
    read_s = time.perf_counter() - wall0

    out, st = multi_chunk(complex_, cfg.threads)
    rendered = to_scc_string(out)
    t = time.perf_counter()
    _write(cfg.output, rendered)
    io_s = read_s + time.perf_counter() - t

    code = EXIT_OK
    if cfg.verify:
        cells = testkit.grid_hull(complex_)
        bad = [z for z in cells if testkit.homology_dims(complex_, z) != testkit.homology_dims(out, z)]
        if bad:
            print(f"verify: homology differs at {len(bad)} grades, first {bad[0]}", file=sys.stderr)
            code = EXIT_VERIFY

    if cfg.stats:
        wall = time.perf_counter() - wall0
        in_bytes, out_bytes = len(text.encode()), len(rendered.encode())
        stats = {
            "wall_s": wall,
            "io_s": io_s,
            "io_share": io_s / wall if wall else 0.0,
            "local_reduction_s": st.phase_seconds["local_reduction"],
            "compression_s": st.phase_seconds["compression"],
            "removal_s": st.phase_seconds["removal"],
            "column_additions": st.additions,
            "input_generators": sum(st.input_sizes),
            "output_generators": sum(st.output_sizes),
            "input_bytes": in_bytes,
            "output_bytes": out_bytes,
            "compression_ratio": out_bytes / in_bytes if in_bytes else 0.0,
        }
        for n in sorted(st.label_counts):
            for lab in ("global", "positive", "negative"):
                stats[f"level{n}_{lab}"] = st.label_counts[n][lab]
        _emit_stats(stats, cfg.stats)
    return code


def _output_path(base: str, n: int, multi: bool) -> str:
    if base == "-" or not multi:
        return base
    root, ext = os.path.splitext(base)
    return f"{root}_h{n}{ext}"


def run_mpfree(cfg: RunConfig) -> int:
    wall0 = time.perf_counter()
    complex_, text, code = _load(cfg)
    if complex_ is None:
        return code
    read_s = time.perf_counter() - wall0

    if cfg.dim is not None:
        if cfg.dim < 1 or cfg.dim + 1 > complex_.length:
            print(
                f"error: --dim {cfg.dim} needs levels {cfg.dim + 1}, {cfg.dim}, {cfg.dim - 1}; "
                f"the complex has levels 0..{complex_.length}",
                file=sys.stderr,
            )
            return EXIT_INVALID
        dims = [cfg.dim]
    else:
        if complex_.length < 2:
            print("error: mpfree needs a complex with at least two boundary maps", file=sys.stderr)
            return EXIT_INVALID
        dims = list(range(1, complex_.length))

    counters = MpfreeCounters()
    try:
        presentations = pipeline(complex_, dims, cfg.chunk_preprocess, cfg.threads, cfg.lw_baseline, counters)
    except ValidationError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID

    multi = len(presentations) > 1
    out_bytes = 0
    write_s = 0.0
    for n, P in presentations.items():
        rendered = to_scc_string(presentation_complex(P))
        out_bytes += len(rendered.encode())
        t = time.perf_counter()
        _write(_output_path(cfg.output, n, multi), rendered)
        write_s += time.perf_counter() - t

    code = EXIT_OK
    if cfg.verify:
        for n, P in presentations.items():
            problems = testkit.check_presentation(P, complex_, n)
            if problems:
                print(f"verify: H{n}: {problems[0]} ({len(problems)} problems)", file=sys.stderr)
                code = EXIT_VERIFY

    if cfg.stats:
        wall = time.perf_counter() - wall0
        io_s = read_s + write_s
        in_bytes = len(text.encode())
        stats = {"wall_s": wall, "io_s": io_s, "io_share": io_s / wall if wall else 0.0}
        for name, dt in counters.seconds.items():
            stats[f"{name}_s"] = dt
        stats.update(
            column_additions=counters.additions,
            addition_cost=counters.addition_cost,
            grade_pops=counters.grade_pops,
            grade_pushes=counters.grade_pushes,
            row_pops=counters.row_pops,
            cells_visited=counters.cells_visited,
            input_bytes=in_bytes,
            output_bytes=out_bytes,
            compression_ratio=out_bytes / in_bytes if in_bytes else 0.0,
        )
        for n, P in presentations.items():
            stats[f"h{n}_generators"] = P.n_rows
            stats[f"h{n}_relations"] = P.n_cols
        _emit_stats(stats, cfg.stats)
    return code


def multichunk_main(argv: Optional[Sequence[str]] = None) -> int:
    args = _parser("multichunk", mpfree_flags=False).parse_args(argv)
    return run_multichunk(_config(args))


def mpfree_main(argv: Optional[Sequence[str]] = None) -> int:
    args = _parser("mpfree", mpfree_flags=True).parse_args(argv)
    return run_mpfree(_config(args))


def main(argv: Optional[Sequence[str]] = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    tools = {"multichunk": multichunk_main, "mpfree": mpfree_main}
    if not argv or argv[0] not in tools:
        print("usage: python -m mpcompress {multichunk,mpfree} [options]", file=sys.stderr)
        return EXIT_INVALID
    return tools[argv[0]](argv[1:])
