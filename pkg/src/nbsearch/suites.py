"""Desk-scale instance suites and a compact per-instance record of every run.

Traces are reduced to the numbers the checks need as soon as a search
finishes, so suites of thousands of instances stay small in memory.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from typing import Callable, Iterator, Optional

from .bench import ALGORITHM_ORDER, run_algorithm
from .core import Cost, StateSpace
from .domains.generators import generate
from .oracle import oracle_cost, suboptimal_expansions


@dataclass(frozen=True)
class SuiteSpec:
    name: str
    domain: str
    count: int
    size: Optional[int] = None
    heuristic: Optional[str] = None
    k: int = 0
    seed: int = 0

    def instances(self) -> Iterator[tuple[str, StateSpace]]:
        for i in range(self.count):
            seed = self.seed + i
            space = generate(self.domain, seed, difficulty=self.size, heuristic=self.heuristic, k=self.k)
            yield f"{self.name}-{seed}", space


#: one entry per desk-scale domain; grids and mazes share the 32x32 slot
DESK_SCALE = (
    SuiteSpec("pancake10", "pancake", 1000, 10),
    SuiteSpec("puzzle8", "tiles", 1000, 3),
    SuiteSpec("hanoi8", "hanoi", 1000, 8),
    SuiteSpec("grid32", "grid", 500, 32),
    SuiteSpec("maze32", "maze", 500, 32),
    SuiteSpec("random200", "random", 1000, 200),
)


def scaled(suites, factor: float) -> tuple[SuiteSpec, ...]:
    """Same suites with ``count`` multiplied by ``factor`` (at least 1)."""
    return tuple(
        SuiteSpec(s.name, s.domain, max(1, int(s.count * factor)), s.size, s.heuristic, s.k, s.seed)
        for s in suites
    )


@dataclass
class AlgorithmRecord:
    cost: Cost
    expanded: int
    reopened: int
    queue_ops: int
    queue_cost: float
    insertions: int


@dataclass
class InstanceRecord:
    suite: str
    instance: str
    oracle: Cost
    runs: dict[str, AlgorithmRecord] = field(default_factory=dict)
    #: NBS-only observations
    c_lb_monotone: bool = True
    suboptimal: int = -1  # -1 when not checked

    def mismatches(self) -> list[str]:
        return [a for a, r in self.runs.items() if r.cost != self.oracle]


@dataclass
class SuiteRun:
    records: list[InstanceRecord] = field(default_factory=list)
    #: seconds spent generating instances, searching and comparing to the oracle
    solve_seconds: float = 0.0
    #: seconds spent on the extra per-expansion optimality sweeps
    check_seconds: float = 0.0

    def by_suite(self) -> dict[str, list[InstanceRecord]]:
        out: dict[str, list[InstanceRecord]] = {}
        for r in self.records:
            out.setdefault(r.suite, []).append(r)
        return out


def run_suites(
    suites,
    algorithms=ALGORITHM_ORDER,
    check_expansions: bool = True,
    progress: Optional[Callable[[str], None]] = None,
) -> SuiteRun:
    out = SuiteRun()
    for spec in suites:
        t0 = time.perf_counter()
        for instance, space in spec.instances():
            rec = InstanceRecord(spec.name, instance, oracle_cost(space))
            nbs_trace = None
            for alg in algorithms:
                res = run_algorithm(alg, space)
                tr = res.trace
                rec.runs[alg] = AlgorithmRecord(
                    res.cost, tr.expanded, tr.reopened, tr.queue_ops, tr.queue_cost, tr.insertions
                )
                if alg == "nbs":
                    nbs_trace = tr
                    hist = tr.c_lb_history
                    rec.c_lb_monotone = all(a <= b for a, b in zip(hist, hist[1:]))
            t1 = time.perf_counter()
            out.solve_seconds += t1 - t0
            if check_expansions and nbs_trace is not None:
                rec.suboptimal = len(suboptimal_expansions(space, nbs_trace))
                out.check_seconds += time.perf_counter() - t1
            out.records.append(rec)
            t0 = time.perf_counter()
        if progress is not None:
            progress(spec.name)
    return out
