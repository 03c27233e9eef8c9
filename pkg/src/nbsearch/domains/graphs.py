"""Explicit weighted digraphs, random instances and scaled-oracle heuristics."""

from __future__ import annotations

import math
import random
from typing import Callable, Iterable, Mapping, Optional, Union

from ..core import BACKWARD, FORWARD, INF, Cost, State, StateSpace, dijkstra

HeuristicSpec = Union[None, Mapping, Callable[[State], Cost]]


def _as_callable(h: HeuristicSpec) -> Callable[[State], Cost]:
    if h is None:
        return lambda s: 0
    if callable(h):
        return h
    table = dict(h)
    return lambda s: table.get(s, 0)


class ExplicitGraph(StateSpace):
    """Finite digraph given as an edge list.

    Parallel edges between the same ordered pair keep only the cheapest.
    Heuristics may be dicts (missing states read as 0), callables or None.
    """

    def __init__(
        self,
        edges: Iterable[tuple[State, State, Cost]],
        start: State,
        goal: State,
        h_forward: HeuristicSpec = None,
        h_backward: HeuristicSpec = None,
    ):
        best: dict = {}
        states = {start, goal}
        for u, v, c in edges:
            if c < 0:
                raise ValueError(f"negative edge cost on {u!r} -> {v!r}")
            states.update((u, v))
            if (u, v) not in best or c < best[(u, v)]:
                best[(u, v)] = c
        self.states = states
        self.succ: dict = {s: [] for s in states}
        self.pred: dict = {s: [] for s in states}
        for (u, v), c in sorted(best.items(), key=lambda kv: (repr(kv[0][0]), repr(kv[0][1]))):
            self.succ[u].append((v, c))
            self.pred[v].append((u, c))
        self.edges = best
        self.start = start
        self.goal = goal
        self.min_edge_cost = min(best.values()) if best else 0
        self._hf = _as_callable(h_forward)
        self._hb = _as_callable(h_backward)

    def expand_forward(self, state):
        return self.succ.get(state, [])

    def expand_backward(self, state):
        return self.pred.get(state, [])

    def h_forward(self, state):
        return self._hf(state)

    def h_backward(self, state):
        return self._hb(state)

    def with_heuristics(self, h_forward: HeuristicSpec, h_backward: HeuristicSpec) -> "ExplicitGraph":
        return ExplicitGraph(
            [(u, v, c) for (u, v), c in self.edges.items()],
            self.start,
            self.goal,
            h_forward,
            h_backward,
        )

    def reversed(self) -> "ExplicitGraph":
        """Edge-reversed graph with start and goal swapped."""
        return ExplicitGraph(
            [(v, u, c) for (u, v), c in self.edges.items()],
            self.goal,
            self.start,
            self._hb,
            self._hf,
        )


def scaled_oracle_heuristics(
    graph: ExplicitGraph, alpha_f: float, alpha_b: float
) -> tuple[dict, dict]:
    """``h_F(u) = round(alpha_f * d(u, goal))`` and the backward analogue.

    Rounding is half-up, which commutes with adding an integer edge cost, so
    the scaled heuristics stay consistent.  States that cannot reach the
    goal (or be reached from start) get ``inf``.
    """
    to_goal = dijkstra(graph, graph.goal, BACKWARD)
    from_start = dijkstra(graph, graph.start, FORWARD)
    hf = {s: (math.floor(alpha_f * to_goal[s] + 0.5) if s in to_goal else INF) for s in graph.states}
    hb = {s: (math.floor(alpha_b * from_start[s] + 0.5) if s in from_start else INF) for s in graph.states}
    return hf, hb


def random_graph(
    seed: int,
    n_states: int = 200,
    extra_edges: Optional[int] = None,
    max_cost: int = 9,
    min_cost: int = 1,
    alpha_f: Optional[float] = None,
    alpha_b: Optional[float] = None,
) -> ExplicitGraph:
    """Strongly connected random digraph with alpha-scaled oracle heuristics.

    A random Hamiltonian cycle guarantees strong connectivity; ``extra_edges``
    (default ``2 * n_states``) random arcs are added on top.  Alphas default
    to independent uniform draws from [0, 1].
    """
    rng = random.Random(seed)
    nodes = list(range(n_states))
    rng.shuffle(nodes)
    edges = []
    for i in range(n_states):
        edges.append((nodes[i], nodes[(i + 1) % n_states], rng.randint(min_cost, max_cost)))
    if extra_edges is None:
        extra_edges = 2 * n_states
    for _ in range(extra_edges):
        u = rng.randrange(n_states)
        v = rng.randrange(n_states)
        if u != v:
            edges.append((u, v, rng.randint(min_cost, max_cost)))
    start = rng.randrange(n_states)
    goal = rng.randrange(n_states)
    while n_states > 1 and goal == start:
        goal = rng.randrange(n_states)
    if alpha_f is None:
        alpha_f = rng.random()
    if alpha_b is None:
        alpha_b = rng.random()
    g = ExplicitGraph(edges, start, goal)
    hf, hb = scaled_oracle_heuristics(g, alpha_f, alpha_b)
    out = g.with_heuristics(hf, hb)
    out.alpha = (alpha_f, alpha_b)
    return out
