"""Command-line front end: ``pbss-route <verb> ...``."""

from __future__ import annotations

import argparse
import sys
import time
from pathlib import Path

from . import bench
from .assignment import InfeasibleError
from .generator import GeneratorSpec, InfeasibleSpecError, generate
from .grid import IllegalActionError, MapParseError, Position, apply_action, parse_map, render_map
from .oracle import OracleLimits
from .solver import NoLegalActionError, SolverConfig, solve
from .tracefile import TraceFormatError, parse_trace, trace_to_json, trace_to_text

EXIT_OK = 0
EXIT_PARSE = 3
EXIT_INFEASIBLE = 4
EXIT_CAP = 5
EXIT_REPLAY = 6


class CliError(Exception):
    def __init__(self, message: str, code: int):
        super().__init__(message)
        self.code = code


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    return Path(path).read_text()


def _emit(text: str, out: str | None) -> None:
    if out:
        Path(out).parent.mkdir(parents=True, exist_ok=True)
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def _load_map(path: str):
    try:
        return parse_map(_read(path))
    except MapParseError as exc:
        raise CliError(f"{path}: {exc}", EXIT_PARSE) from None


def _position(text: str) -> Position:
    try:
        x, y = (int(t) for t in text.replace("(", "").replace(")", "").split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected x,y but got {text!r}") from None
    return Position(x, y)


def _int_list(text: str) -> list[int]:
    try:
        return [int(t) for t in text.split(",") if t.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None


def _figure_path(out: str, suffix: str) -> Path:
    p = Path(out)
    return p.with_name(f"{p.stem}_{suffix}.png")


def cmd_solve(args) -> int:
    state = _load_map(args.map)
    config = SolverConfig(rng_seed=args.seed, max_steps=args.max_steps)
    t0 = time.perf_counter()
    try:
        trace = solve(state, config)
    except InfeasibleError as exc:
        raise CliError(f"infeasible: {exc}", EXIT_INFEASIBLE) from None
    except NoLegalActionError as exc:
        raise CliError(f"infeasible: {exc}", EXIT_INFEASIBLE) from None
    wall = time.perf_counter() - t0
    if args.verify:
        s = state.swept()
        for a in trace.actions:
            s = apply_action(s, a)
        if s != trace.final:
            raise CliError("self-check failed: trace does not replay to the final state", EXIT_REPLAY)
    if args.format == "structured":
        body = trace_to_json(trace, seed=args.seed, wall_time=wall)
    else:
        body = trace_to_text(trace.records)
    if args.out:
        _emit(body, args.out)
    elif not args.quiet:
        sys.stdout.write(body)
    print(f"steps={trace.total_steps} solved={'yes' if trace.solved else 'no'} time={wall:.3f}s")
    return EXIT_OK if trace.solved else EXIT_CAP


def cmd_generate(args) -> int:
    try:
        spec = GeneratorSpec(args.width, args.height, args.escorts, args.targets,
                             tuple(args.io), rng_seed=args.seed)
    except InfeasibleSpecError as exc:
        raise CliError(f"infeasible: {exc}", EXIT_INFEASIBLE) from None
    _emit(render_map(generate(spec)), args.out)
    return EXIT_OK


def cmd_sweep_fig17(args) -> int:
    seeds = range(args.seed, args.seed + args.seeds)
    limits = OracleLimits(max_expanded_states=args.max_states)
    results = bench.sweep_fig17(args.k, seeds, limits, workers=args.workers)
    fixture = bench.load_fig17_fixture()
    for res in results:
        for c in res.exhausted:
            print(f"warning: k={c.k} cell ({c.x}, {c.y}) oracle exhausted, excluded from gap",
                  file=sys.stderr)
    if args.format == "structured":
        body = bench.dumps(bench.fig17_dict(results))
    else:
        body = bench.fig17_text(results, fixture)
    _emit(body, args.out)
    if args.out and not args.no_figures:
        from .plots import plot_fig17_gaps, plot_fig17_grids
        plot_fig17_grids(results, _figure_path(args.out, "grids"))
        plot_fig17_gaps(results, _figure_path(args.out, "gaps"))
    return EXIT_OK


def cmd_bench_multi(args) -> int:
    if args.random:
        cases = []
        for i in range(args.random):
            spec = GeneratorSpec(9, 9, 3 + (args.seed + i) % 18, 1 + i % 4,
                                 ((0, 0), (8, 0), (8, 8), (0, 8)), rng_seed=args.seed * 100003 + i)
            cases.append((f"r{i}", spec))
        reference = False
    else:
        cases = bench.suite_specs(args.seed)
        reference = True
    limits = OracleLimits(max_expanded_states=args.max_states)
    rep = bench.bench_multi(cases, seed=args.seed, max_steps=args.max_steps, with_oracle=args.oracle,
                            limits=limits, workers=args.workers, reference=reference)
    body = bench.dumps(rep.to_dict()) if args.format == "structured" else bench.bench_text(rep)
    _emit(body, args.out)
    if args.out and not args.no_figures:
        from .plots import plot_bench
        plot_bench(rep, _figure_path(args.out, "steps"))
    return EXIT_OK if rep.all_solved else EXIT_CAP


def cmd_replay(args) -> int:
    state = _load_map(args.map).swept()
    try:
        records = parse_trace(_read(args.trace))
    except TraceFormatError as exc:
        raise CliError(f"{args.trace}: {exc}", EXIT_PARSE) from None
    frames = [f"initial\n{render_map(state)}"]
    for r in records:
        try:
            state = apply_action(state, r.action)
        except IllegalActionError as exc:
            raise CliError(f"replay mismatch at step {r.step}: {exc}", EXIT_REPLAY) from None
        frames.append(f"step {r.step}: {r.action}  {r.reason.value} "
                      f"{r.value_before} -> {r.value_after}  reward {r.reward}\n{render_map(state)}")
    frames.append("solved" if not state.targets else f"unsolved: {len(state.targets)} target items left")
    _emit("\n".join(frames) + "\n", args.out)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=0, help="random seed (default 0)")
    common.add_argument("--max-steps", type=int, default=None, help="step cap (default 20*W*H)")
    common.add_argument("--format", choices=("text", "structured"), default="text")
    common.add_argument("--out", default=None, help="write output here instead of stdout")

    p = argparse.ArgumentParser(prog="pbss-route", description="Retrieval routing for puzzle-based storage grids.")
    sub = p.add_subparsers(dest="verb", required=True)

    s = sub.add_parser("solve", parents=[common], help="solve one map with the greedy heuristic")
    s.add_argument("map", help="map file, or - for stdin")
    s.add_argument("--verify", action="store_true", help="replay the trace and check the final state")
    s.add_argument("--quiet", action="store_true", help="print only the summary line")
    s.set_defaults(func=cmd_solve)

    g = sub.add_parser("generate", parents=[common], help="write a random map")
    g.add_argument("--width", type=int, required=True)
    g.add_argument("--height", type=int, required=True)
    g.add_argument("--escorts", type=int, required=True)
    g.add_argument("--targets", type=int, default=1)
    g.add_argument("--io", type=_position, action="append", default=[], metavar="X,Y",
                   help="IO cell; repeat for several")
    g.set_defaults(func=cmd_generate)

    w = sub.add_parser("sweep-fig17", parents=[common], help="9x5 line-of-escorts sweep against the exact search")
    w.add_argument("--k", type=_int_list, default=[1, 2, 3, 4, 5, 6], help="escort counts, e.g. 1,2,3")
    w.add_argument("--seeds", type=int, default=3, help="heuristic runs per cell")
    w.add_argument("--max-states", type=int, default=2_000_000, help="oracle expansion budget per cell")
    w.add_argument("--workers", type=int, default=1)
    w.add_argument("--no-figures", action="store_true")
    w.set_defaults(func=cmd_sweep_fig17)

    b = sub.add_parser("bench-multi", parents=[common], help="9x9 multi-item suite")
    b.add_argument("--random", type=int, default=0, metavar="N",
                   help="N random 9x9 instances instead of the 15-case suite")
    b.add_argument("--oracle", action="store_true", help="also try the exact search (small boards only)")
    b.add_argument("--max-states", type=int, default=200_000)
    b.add_argument("--workers", type=int, default=1)
    b.add_argument("--no-figures", action="store_true")
    b.set_defaults(func=cmd_bench_multi)

    r = sub.add_parser("replay", parents=[common], help="print a trace as board frames")
    r.add_argument("trace", help="trace file (text or structured)")
    r.add_argument("map", help="map file the trace was made for")
    r.set_defaults(func=cmd_replay)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except CliError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.code
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE


if __name__ == "__main__":
    sys.exit(main())
