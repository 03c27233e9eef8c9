"""Experiment runner: seeded instance suites, per-algorithm result rows,
aggregate tables and scatter data."""

from __future__ import annotations

import csv
import io
import json
import random
import time
from dataclasses import asdict, dataclass, field, fields
from pathlib import Path
from statistics import mean
from typing import Callable, Iterator, Optional

from .baselines import MMParams, astar_search, bs_star_search, mm_search
from .core import (
    BACKWARD,
    FORWARD,
    Cost,
    SearchLimitExceeded,
    SearchLimits,
    SearchResult,
    StateSpace,
    cost_to_str,
    with_zero_heuristic,
)
from .domains.fixtures import adversarial_pair
from .domains.generators import DOMAINS, default_partition, generate
from .domains.grid import parse_map, parse_scen, random_grid_instance, scenario_space
from .domains.hanoi import HanoiSpace
from .domains.pancake import PancakeSpace
from .domains.tiles import TileSpace
from .mx import GraphTooLarge, build_gmx, min_vertex_cover
from .nbs import nbs_search
from .oracle import oracle_cost

ALGORITHMS: dict[str, Callable[..., SearchResult]] = {
    "nbs": lambda space, limits: nbs_search(space, limits),
    "astar_f": lambda space, limits: astar_search(space, FORWARD, limits),
    "astar_b": lambda space, limits: astar_search(space, BACKWARD, limits),
    "bs_star": lambda space, limits: bs_star_search(space, limits),
    "mm": lambda space, limits: mm_search(space, MMParams(0), limits),
    "mme": lambda space, limits: mm_search(space, MMParams.mme(space), limits),
    "mm0": lambda space, limits: mm_search(space, MMParams(0, use_heuristic=False), limits),
}
ALGORITHM_ORDER = tuple(ALGORITHMS)

#: baselines whose minimum necessary count is the scatter plot's x-axis
SCATTER_BASELINES = ("astar_f", "bs_star", "mme")

HEURISTICS = {
    "pancake": ("gap", "zero"),
    "tiles": ("md", "zero"),
    "hanoi": ("pdb", "zero"),
    "grid": ("octile", "zero"),
    "maze": ("octile", "zero"),
    "random": ("oracle", "zero"),
    "fixtures": ("zero",),
}
FORMATS = ("csv", "json", "markdown")


class ConfigError(ValueError):
    pass


def run_algorithm(name: str, space: StateSpace, limits: Optional[SearchLimits] = None) -> SearchResult:
    try:
        fn = ALGORITHMS[name]
    except KeyError:
        raise ConfigError(f"unknown algorithm {name!r}; choose from {ALGORITHM_ORDER}") from None
    return fn(space, limits or SearchLimits())


@dataclass
class ExperimentConfig:
    domain: str = "pancake"
    #: pancakes, board width, discs, grid side or graph states; None = default
    size: Optional[int] = None
    heuristic: Optional[str] = None
    k: int = 0
    partition: Optional[tuple[int, ...]] = None
    alpha: Optional[float] = None
    density: float = 0.25
    algorithms: tuple[str, ...] = ALGORITHM_ORDER
    seed: int = 0
    count: int = 10
    #: puzzle instances, one configuration per line (overrides the generator)
    instances_file: Optional[str] = None
    map_file: Optional[str] = None
    scen_file: Optional[str] = None
    fmt: str = "csv"
    cap_expansions: Optional[int] = None
    cap_seconds: Optional[float] = None
    analyze: bool = False
    #: also compare every cost against the exact oracle
    verify_oracle: bool = False
    gmx_state_cap: int = 10**5

    def __post_init__(self):
        self.algorithms = tuple(self.algorithms)
        if self.domain not in HEURISTICS:
            raise ConfigError(f"unknown domain {self.domain!r}; choose from {tuple(HEURISTICS)}")
        if not self.algorithms:
            raise ConfigError("no algorithms selected")
        for a in self.algorithms:
            if a not in ALGORITHMS:
                raise ConfigError(f"unknown algorithm {a!r}; choose from {ALGORITHM_ORDER}")
        if self.heuristic is not None and self.heuristic not in HEURISTICS[self.domain]:
            raise ConfigError(
                f"heuristic {self.heuristic!r} not available for {self.domain}; "
                f"choose from {HEURISTICS[self.domain]}"
            )
        if self.count <= 0:
            raise ConfigError("count must be positive")
        for name in ("cap_expansions", "cap_seconds"):
            v = getattr(self, name)
            if v is not None and v <= 0:
                raise ConfigError(f"{name} must be positive")
        if self.fmt not in FORMATS:
            raise ConfigError(f"unknown format {self.fmt!r}; choose from {FORMATS}")
        if self.scen_file and not self.map_file:
            raise ConfigError("--scen needs --map")
        for p in (self.instances_file, self.map_file, self.scen_file):
            if p is not None and not Path(p).exists():
                raise ConfigError(f"no such file: {p}")

    @property
    def limits(self) -> SearchLimits:
        return SearchLimits(self.cap_expansions, self.cap_seconds)


@dataclass
class ResultRow:
    domain: str
    instance: str
    algorithm: str
    solved: bool
    cost: str
    expanded: int
    necessary: int
    generated: int
    reopened: int
    f_equal_cstar: int
    f_equal_pct: float
    wall_time: float
    rate: float
    setup_time: float
    vc_size: Optional[int] = None
    ratio: Optional[float] = None


CSV_COLUMNS = tuple(f.name for f in fields(ResultRow))
TIMING_COLUMNS = ("wall_time", "rate", "setup_time")


@dataclass
class ExperimentResult:
    rows: list[ResultRow] = field(default_factory=list)
    #: (instance, min baseline necessary, nbs necessary)
    scatter: list[tuple[str, int, int]] = field(default_factory=list)
    #: human-readable hard failures: cost disagreements, broken bounds
    failures: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures

    def sorted_rows(self) -> list[ResultRow]:
        order = {a: i for i, a in enumerate(ALGORITHM_ORDER)}
        return sorted(self.rows, key=lambda r: (r.domain, _instance_key(r.instance), order[r.algorithm]))

    def aggregates(self) -> list[dict]:
        """Per (domain, algorithm) means over solved rows, plus unsolved count."""
        groups: dict[tuple[str, str], list[ResultRow]] = {}
        for r in self.rows:
            groups.setdefault((r.domain, r.algorithm), []).append(r)
        order = {a: i for i, a in enumerate(ALGORITHM_ORDER)}
        out = []
        for (domain, alg), rows in sorted(groups.items(), key=lambda kv: (kv[0][0], order[kv[0][1]])):
            ok = [r for r in rows if r.solved]
            agg = {"domain": domain, "algorithm": alg, "solved": len(ok), "unsolved": len(rows) - len(ok)}
            for col in ("expanded", "necessary", "generated", "f_equal_pct", "wall_time", "rate"):
                agg[col] = mean(float(getattr(r, col)) for r in ok) if ok else None
            ratios = [r.ratio for r in ok if r.ratio is not None]
            agg["max_ratio"] = max(ratios) if ratios else None
            out.append(agg)
        return out


def _instance_key(name: str):
    head, _, tail = name.rpartition("-")
    return (head, int(tail)) if tail.isdigit() else (name, 0)


# --- instance sources ------------------------------------------------------


def _parse_instance_line(domain: str, line: str, config: ExperimentConfig) -> StateSpace:
    values = [int(x) for x in line.replace(",", " ").split()]
    zero = config.heuristic == "zero"
    if domain == "pancake":
        return PancakeSpace(values, k=config.k, heuristic="zero" if zero else "gap")
    if domain == "tiles":
        width = int(round(len(values) ** 0.5))
        return TileSpace(values, width, heuristic="zero" if zero else "md")
    if domain == "hanoi":
        return HanoiSpace(
            values,
            config.partition or default_partition(len(values)),
            heuristic="zero" if zero else "pdb",
        )
    raise ConfigError(f"instance files are not supported for {domain}")


def iter_instances(config: ExperimentConfig) -> Iterator[tuple[str, StateSpace, float]]:
    """Yield ``(instance id, space, setup seconds)`` in a fixed order."""
    if config.domain == "fixtures":
        for which in ("I1", "I2"):
            yield which, adversarial_pair(which), 0.0
        return
    if config.map_file:
        grid = parse_map(Path(config.map_file).read_text())
        if config.scen_file:
            entries = parse_scen(Path(config.scen_file).read_text())[: config.count]
            for i, entry in enumerate(entries):
                t0 = time.perf_counter()
                space = scenario_space(grid, entry)
                if config.heuristic == "zero":
                    space = with_zero_heuristic(space)
                yield f"scen-{i}", space, time.perf_counter() - t0
            return
        for i in range(config.count):
            rng = random.Random(f"map:{config.seed + i}")
            t0 = time.perf_counter()
            space = random_grid_instance(rng, grid=grid, heuristic=config.heuristic or "octile")
            yield f"map-{config.seed + i}", space, time.perf_counter() - t0
        return
    if config.instances_file:
        lines = [ln for ln in Path(config.instances_file).read_text().splitlines() if ln.strip() and not ln.startswith("#")]
        for i, line in enumerate(lines[: config.count]):
            t0 = time.perf_counter()
            space = _parse_instance_line(config.domain, line, config)
            yield f"file-{i}", space, time.perf_counter() - t0
        return
    for i in range(config.count):
        seed = config.seed + i
        t0 = time.perf_counter()
        space = generate(
            config.domain,
            seed,
            difficulty=config.size,
            heuristic=config.heuristic,
            k=config.k,
            partition=config.partition,
            alpha=config.alpha,
            density=config.density,
        )
        yield f"{config.domain}-{seed}", space, time.perf_counter() - t0


# --- running ---------------------------------------------------------------


def run_instance(
    config: ExperimentConfig,
    instance: str,
    space: StateSpace,
    setup_time: float = 0.0,
    result: Optional[ExperimentResult] = None,
) -> ExperimentResult:
    result = result if result is not None else ExperimentResult()
    runs: dict[str, Optional[SearchResult]] = {}
    traces = {}
    times = {}
    for alg in config.algorithms:
        t0 = time.perf_counter()
        try:
            res = run_algorithm(alg, space, config.limits)
        except SearchLimitExceeded as exc:
            runs[alg] = None
            traces[alg] = exc.trace
        else:
            runs[alg] = res
            traces[alg] = res.trace
        times[alg] = time.perf_counter() - t0

    costs = {alg: r.cost for alg, r in runs.items() if r is not None}
    distinct = set(costs.values())
    if len(distinct) > 1:
        shown = ", ".join(f"{a}={cost_to_str(c)}" for a, c in costs.items())
        result.failures.append(f"{instance}: cost mismatch ({shown})")
    c_star: Optional[Cost] = next(iter(distinct)) if len(distinct) == 1 else None
    if config.verify_oracle:
        truth = oracle_cost(space)
        if c_star is not None and c_star != truth:
            result.failures.append(
                f"{instance}: algorithms agree on {cost_to_str(c_star)} but the oracle says {cost_to_str(truth)}"
            )
        c_star = truth

    vc_size = None
    if config.analyze and c_star is not None:
        try:
            graph = build_gmx(space, cap=config.gmx_state_cap)
        except GraphTooLarge:
            graph = None
        if graph is not None:
            vc_size = len(min_vertex_cover(graph))

    necessary = {}
    for alg in config.algorithms:
        res = runs[alg]
        trace = traces[alg]
        solved = res is not None
        expanded = trace.expanded if trace is not None else 0
        nec = trace.necessary(c_star) if (trace is not None and c_star is not None) else 0
        f_eq = trace.f_equal(c_star) if (trace is not None and c_star is not None) else 0
        wall = trace.wall_time if solved else times[alg]
        ratio = None
        if vc_size is not None and solved:
            ratio = nec / vc_size if vc_size else (0.0 if nec == 0 else float("inf"))
            if alg == "nbs" and ratio > 2:
                result.failures.append(f"{instance}: nbs necessary {nec} exceeds 2 x VC {vc_size}")
        if solved:
            necessary[alg] = nec
        result.rows.append(
            ResultRow(
                domain=config.domain,
                instance=instance,
                algorithm=alg,
                solved=solved,
                cost=cost_to_str(res.cost) if solved else "",
                expanded=expanded,
                necessary=nec,
                generated=trace.generated if trace is not None else 0,
                reopened=trace.reopened if trace is not None else 0,
                f_equal_cstar=f_eq,
                f_equal_pct=100.0 * f_eq / expanded if expanded else 0.0,
                wall_time=wall,
                rate=expanded / wall if wall > 0 else 0.0,
                setup_time=setup_time,
                vc_size=vc_size,
                ratio=ratio,
            )
        )
    base = [necessary[a] for a in SCATTER_BASELINES if a in necessary]
    if "nbs" in necessary and base:
        result.scatter.append((instance, min(base), necessary["nbs"]))
    return result


def run_experiment(config: ExperimentConfig, progress: Optional[Callable[[str], None]] = None) -> ExperimentResult:
    result = ExperimentResult()
    for instance, space, setup in iter_instances(config):
        run_instance(config, instance, space, setup, result)
        if progress is not None:
            progress(instance)
    return result


# --- emission ----------------------------------------------------------------


def _fmt_cell(v) -> str:
    if v is None:
        return ""
    if isinstance(v, float):
        return f"{v:.6g}"
    return str(v)


def emit(table, fmt: str = "csv", timing: bool = True) -> bytes:
    """Serialise rows (an :class:`ExperimentResult` or a list of rows).

    ``csv`` uses :data:`CSV_COLUMNS` order; ``json`` is an array of row
    objects; ``markdown`` is the per-algorithm aggregate table.
    ``timing=False`` drops the wall-clock columns for byte-stable output.
    """
    if isinstance(table, ExperimentResult):
        result = table
    else:
        result = ExperimentResult(rows=list(table))
    rows = result.sorted_rows()
    cols = [c for c in CSV_COLUMNS if timing or c not in TIMING_COLUMNS]
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(cols)
        for r in rows:
            d = asdict(r)
            w.writerow([_fmt_cell(d[c]) for c in cols])
        return buf.getvalue().encode()
    if fmt == "json":
        out = []
        for r in rows:
            d = asdict(r)
            out.append({c: d[c] for c in cols})
        return (json.dumps(out, indent=1) + "\n").encode()
    if fmt == "markdown":
        return markdown_table(result.aggregates(), timing).encode()
    raise ConfigError(f"unknown format {fmt!r}; choose from {FORMATS}")


def rows_from_json(data: bytes) -> list[ResultRow]:
    return [ResultRow(**obj) for obj in json.loads(data)]


def markdown_table(aggs: list[dict], timing: bool = True) -> str:
    cols = ["domain", "algorithm", "solved", "unsolved", "expanded", "necessary", "f_equal_pct", "max_ratio"]
    if timing:
        cols += ["wall_time", "rate"]
    heads = {
        "expanded": "mean expanded",
        "necessary": "mean necessary",
        "f_equal_pct": "% f = C*",
        "max_ratio": "max ratio",
        "wall_time": "mean seconds",
        "rate": "expansions/s",
    }
    lines = [
        "| " + " | ".join(heads.get(c, c) for c in cols) + " |",
        "|" + "|".join("---" for _ in cols) + "|",
    ]
    for a in aggs:
        cells = []
        for c in cols:
            v = a.get(c)
            if isinstance(v, float):
                cells.append(f"{v:.1f}" if c in ("expanded", "necessary", "f_equal_pct") else f"{v:.4g}")
            else:
                cells.append("-" if v is None else str(v))
        lines.append("| " + " | ".join(cells) + " |")
    return "\n".join(lines) + "\n"


def emit_scatter(result: ExperimentResult) -> bytes:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["instance", "min_baseline_necessary", "nbs_necessary"])
    for row in sorted(result.scatter, key=lambda t: _instance_key(t[0])):
        w.writerow(row)
    return buf.getvalue().encode()


__all__ = [
    "ALGORITHMS",
    "CSV_COLUMNS",
    "DOMAINS",
    "ConfigError",
    "ExperimentConfig",
    "ExperimentResult",
    "ResultRow",
    "emit",
    "emit_scatter",
    "iter_instances",
    "markdown_table",
    "rows_from_json",
    "run_algorithm",
    "run_experiment",
    "run_instance",
]
