"""Command-line entry point: ``nbsearch run | gmx | fixtures``."""

from __future__ import annotations

import argparse
import sys
from pathlib import Path
from typing import Optional, Sequence

from .bench import (
    ALGORITHM_ORDER,
    HEURISTICS,
    ConfigError,
    ExperimentConfig,
    emit,
    emit_scatter,
    run_algorithm,
    run_experiment,
)
from .core import cost_to_str
from .domains.fixtures import adversarial_pair, worked_example_open_list
from .domains.generators import generate
from .mx import GraphTooLarge, build_gmx, dump_gmx, grade_trace, min_vertex_cover


def _int_tuple(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(x) for x in text.split(",") if x)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None


def _algorithms(text: str) -> tuple[str, ...]:
    if text == "all":
        return ALGORITHM_ORDER
    names = tuple(x.strip() for x in text.split(",") if x.strip())
    for n in names:
        if n not in ALGORITHM_ORDER:
            raise argparse.ArgumentTypeError(f"unknown algorithm {n!r}; choose from {', '.join(ALGORITHM_ORDER)}")
    return names


def _add_instance_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("--domain", default="pancake", choices=sorted(HEURISTICS))
    p.add_argument("--size", type=int, help="pancakes, board width, discs, grid side or graph states")
    p.add_argument("--heuristic", help="gap|md|pdb|octile|oracle, or zero")
    p.add_argument("--k", type=int, default=0, help="GAP-k: ignore gaps at the k smallest pancakes")
    p.add_argument("--partition", type=_int_tuple, help="PDB disc groups, smallest first, e.g. 6,2")
    p.add_argument("--alpha", type=float, help="scale of the oracle heuristic on random graphs")
    p.add_argument("--seed", type=int, default=0)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="nbsearch", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    run = sub.add_parser("run", help="run algorithms over an instance suite")
    _add_instance_args(run)
    run.add_argument("--algorithms", type=_algorithms, default=ALGORITHM_ORDER, help="comma list or 'all'")
    run.add_argument("--count", type=int, default=10)
    run.add_argument("--instances", help="puzzle instances, one configuration per line")
    run.add_argument("--map", help="grid map file")
    run.add_argument("--scen", help="scenario file for --map")
    run.add_argument("--cap-expansions", type=int)
    run.add_argument("--cap-seconds", type=float)
    run.add_argument("--analyze", action="store_true", help="build G_MX and report VC ratios")
    run.add_argument("--oracle", action="store_true", help="check every cost against the exact oracle")
    run.add_argument("--format", default="csv", choices=("csv", "json", "markdown"))
    run.add_argument("--no-timing", action="store_true", help="omit wall-clock columns")
    run.add_argument("--out", help="write the table here instead of stdout")
    run.add_argument("--scatter", help="write (baseline, nbs) necessary-expansion pairs as CSV")

    gmx = sub.add_parser("gmx", help="build the Must-Expand Graph of one instance and grade NBS on it")
    _add_instance_args(gmx)
    gmx.add_argument("--algorithm", default="nbs", choices=ALGORITHM_ORDER)
    gmx.add_argument("--out", help="write the graph and its cover in gmx text format")

    sub.add_parser("fixtures", help="check the two adversarial instances and the open-list walkthrough")
    return parser


def _write(data: bytes, path: Optional[str]) -> None:
    if path:
        Path(path).write_bytes(data)
    else:
        sys.stdout.buffer.write(data)
        sys.stdout.flush()


def cmd_run(args) -> int:
    config = ExperimentConfig(
        domain=args.domain,
        size=args.size,
        heuristic=args.heuristic,
        k=args.k,
        partition=args.partition,
        alpha=args.alpha,
        algorithms=args.algorithms,
        seed=args.seed,
        count=args.count,
        instances_file=args.instances,
        map_file=args.map,
        scen_file=args.scen,
        fmt=args.format,
        cap_expansions=args.cap_expansions,
        cap_seconds=args.cap_seconds,
        analyze=args.analyze,
        verify_oracle=args.oracle,
    )
    result = run_experiment(config)
    _write(emit(result, config.fmt, timing=not args.no_timing), args.out)
    if args.scatter:
        Path(args.scatter).write_bytes(emit_scatter(result))
    for msg in result.failures:
        print(f"FAIL {msg}", file=sys.stderr)
    return 0 if result.ok else 1


def cmd_gmx(args) -> int:
    if args.domain == "fixtures":
        # seed picks I1 (0) or I2 (1)
        if args.seed not in (0, 1):
            raise ConfigError("fixtures take --seed 0 (I1) or 1 (I2)")
        space = adversarial_pair(("I1", "I2")[args.seed])
    else:
        space = generate(
            args.domain,
            args.seed,
            difficulty=args.size,
            heuristic=args.heuristic,
            k=args.k,
            partition=args.partition,
            alpha=args.alpha,
        )
    try:
        graph = build_gmx(space)
    except GraphTooLarge as exc:
        print(f"G_MX too large: {exc}", file=sys.stderr)
        return 2
    cover = min_vertex_cover(graph)
    res = run_algorithm(args.algorithm, space)
    report = grade_trace(res.trace, graph, len(cover))
    print(f"C*            {cost_to_str(graph.c_star)}")
    print(f"cost          {cost_to_str(res.cost)}")
    print(f"|L| |R| |E|   {len(graph.left)} {len(graph.right)} {graph.n_edges}")
    print(f"VC            {report.vc_size}")
    print(f"necessary     {report.algorithm_cover_size}  ({args.algorithm})")
    print(f"ratio         {report.ratio:.4g}")
    print(f"covers G_MX   {report.is_cover}")
    if args.out:
        Path(args.out).write_text(dump_gmx(graph, cover))
    ok = res.cost == graph.c_star and report.is_cover
    if args.algorithm == "nbs":
        ok = ok and report.ratio <= 2
    return 0 if ok else 1


def cmd_fixtures(_args) -> int:
    ok = True

    def check(label: str, cond: bool) -> None:
        nonlocal ok
        ok = ok and cond
        print(f"{'PASS' if cond else 'FAIL'}  {label}")

    for which in ("I1", "I2"):
        space = adversarial_pair(which)
        for alg in ALGORITHM_ORDER:
            res = run_algorithm(alg, space)
            print(f"      {which} {alg:8s} cost={cost_to_str(res.cost)} expanded={res.trace.expanded}")
            check(f"{which} {alg} returns C* = 3", res.cost == 3)
        check(f"{which} nbs expands exactly 2 states", run_algorithm("nbs", space).trace.expanded == 2)
    check("I1 backward A* stops after 1 expansion", run_algorithm("astar_b", adversarial_pair("I1")).trace.expanded == 1)
    check("I2 forward A* stops after 1 expansion", run_algorithm("astar_f", adversarial_pair("I2")).trace.expanded == 1)

    ol = worked_example_open_list()
    staged = ol.prepare_best()
    u, v = ol.pop_pair()
    print(f"      C_lb history {ol.c_lb_history}, pair ({u.state}, {v.state})")
    check("walkthrough C_lb is 0 -> 9 -> 12", staged and ol.c_lb_history == [0, 9, 12])
    check("walkthrough selects (B, E)", (u.state, v.state) == ("B", "E"))
    return 0 if ok else 1


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if args.command == "run":
            return cmd_run(args)
        if args.command == "gmx":
            return cmd_gmx(args)
        return cmd_fixtures(args)
    except (ConfigError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
