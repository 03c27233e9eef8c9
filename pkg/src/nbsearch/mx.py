"""Must-Expand Graph construction, minimum vertex cover and trace grading.

Left vertices are forward copies of states, right vertices backward copies.
``(u_F, v_B)`` is an edge when the optimal paths to ``u`` and from ``v``
give a pair lower bound strictly below C*.  Under consistent heuristics an
optimal path reaches every state at its Dijkstra distance, so the predicate
is evaluated on distances alone.
"""

from __future__ import annotations

import json
from bisect import bisect_left
from collections import deque
from dataclasses import dataclass, field
from typing import Hashable, Iterable, Mapping, Optional

from .core import (
    BACKWARD,
    FORWARD,
    Cost,
    InconsistentHeuristicError,
    SearchLimitExceeded,
    SearchTrace,
    StateSpace,
    check_consistency,
    cost_to_str,
    dijkstra,
    is_infinite,
    parse_cost,
)

DEFAULT_STATE_CAP = 10**5
DEFAULT_EDGE_CAP = 5 * 10**6


class GraphTooLarge(RuntimeError):
    pass


class MismatchedInstance(ValueError):
    pass


@dataclass
class MustExpandGraph:
    left: set
    right: set
    #: left state -> set of right states
    adj: dict
    c_star: Cost
    d_f: dict = field(default_factory=dict, repr=False)
    d_b: dict = field(default_factory=dict, repr=False)

    @property
    def n_edges(self) -> int:
        return sum(len(v) for v in self.adj.values())

    def edges(self) -> Iterable[tuple]:
        for u, vs in self.adj.items():
            for v in vs:
                yield u, v

    def has_edge(self, u, v) -> bool:
        return v in self.adj.get(u, ())


def build_gmx(
    space: StateSpace,
    cap: int = DEFAULT_STATE_CAP,
    edge_cap: int = DEFAULT_EDGE_CAP,
    check: bool = True,
) -> MustExpandGraph:
    if space.start == space.goal:
        return MustExpandGraph(set(), set(), {}, 0)
    try:
        probe = dijkstra(space, space.start, FORWARD, cap=cap, target=space.goal)
        if space.goal not in probe:
            raise ValueError("instance is not solvable")
        c_star = probe[space.goal]
        d_f = dijkstra(space, space.start, FORWARD, bound=c_star, cap=cap)
        d_b = dijkstra(space, space.goal, BACKWARD, bound=c_star, cap=cap)
    except SearchLimitExceeded as exc:
        raise GraphTooLarge(str(exc)) from None
    if check:
        bad = check_consistency(space, set(d_f) | set(d_b))
        if bad:
            raise InconsistentHeuristicError(
                f"{len(bad)} consistency violation(s), first: {bad[0]}"
            )
    left = []
    for u, g in d_f.items():
        h = space.h_forward(u)
        if not is_infinite(h) and g + h < c_star:
            left.append(u)
    right = []
    for v, g in d_b.items():
        h = space.h_backward(v)
        if not is_infinite(h) and g + h < c_star:
            right.append(v)
    right.sort(key=lambda v: d_b[v])
    right_d = [d_b[v] for v in right]
    adj = {}
    n_edges = 0
    for u in left:
        # d_F(u) + d_B(v) < C*  <=>  d_B(v) < C* - d_F(u)
        k = bisect_left(right_d, c_star - d_f[u])
        if k:
            n_edges += k
            if n_edges > edge_cap:
                raise GraphTooLarge(f"more than {edge_cap} edges")
            adj[u] = set(right[:k])
    used_right = set()
    for vs in adj.values():
        used_right.update(vs)
    return MustExpandGraph(set(adj), used_right, adj, c_star, d_f, d_b)


# --- matching and cover ------------------------------------------------------


def max_bipartite_matching(adj: Mapping[Hashable, Iterable[Hashable]]) -> dict:
    """Hopcroft-Karp.  Returns a dict mapping matched left vertices to right."""
    left = list(adj)
    nbrs = {u: list(adj[u]) for u in left}
    match_l: dict = {}
    match_r: dict = {}
    INF_D = len(left) + 1
    while True:
        # BFS layers from free left vertices
        dist = {}
        q = deque()
        for u in left:
            if u not in match_l:
                dist[u] = 0
                q.append(u)
        found = False
        while q:
            u = q.popleft()
            for v in nbrs[u]:
                w = match_r.get(v)
                if w is None:
                    found = True
                elif w not in dist:
                    dist[w] = dist[u] + 1
                    q.append(w)
        if not found:
            break
        # iterative DFS along the layers
        it = {u: 0 for u in left}
        for root in left:
            if root in match_l or dist.get(root) != 0:
                continue
            stack = [root]
            path_v = []
            while stack:
                u = stack[-1]
                ns = nbrs[u]
                advanced = False
                while it[u] < len(ns):
                    v = ns[it[u]]
                    it[u] += 1
                    w = match_r.get(v)
                    if w is None:
                        path_v.append(v)
                        # augment along the stack
                        for uu, vv in zip(stack, path_v):
                            match_l[uu] = vv
                            match_r[vv] = uu
                        stack = []
                        advanced = True
                        break
                    if dist.get(w, INF_D) == dist[u] + 1:
                        path_v.append(v)
                        stack.append(w)
                        advanced = True
                        break
                if not advanced:
                    dist[u] = INF_D
                    stack.pop()
                    if path_v:
                        path_v.pop()
    return match_l


def konig_cover(adj: Mapping, matching: Mapping) -> tuple[set, set]:
    """Minimum cover from a maximum matching via alternating reachability."""
    match_r = {v: u for u, v in matching.items()}
    seen_l = {u for u in adj if u not in matching}
    seen_r = set()
    q = deque(seen_l)
    while q:
        u = q.popleft()
        for v in adj[u]:
            if v in seen_r or matching.get(u) == v:
                continue
            seen_r.add(v)
            w = match_r.get(v)
            if w is not None and w not in seen_l:
                seen_l.add(w)
                q.append(w)
    return set(adj) - seen_l, seen_r


def min_vertex_cover(graph) -> set:
    """Minimum cover of a Must-Expand Graph (or a plain left->right adjacency).

    Returns ``("F", u)`` / ``("B", v)`` tagged vertices.
    """
    adj = graph.adj if isinstance(graph, MustExpandGraph) else graph
    matching = max_bipartite_matching(adj)
    cl, cr = konig_cover(adj, matching)
    return {("F", u) for u in cl} | {("B", v) for v in cr}


# --- grading ---------------------------------------------------------------


@dataclass
class CoverReport:
    vc_size: int
    algorithm_cover_size: int
    is_cover: bool
    ratio: float
    uncovered: list = field(default_factory=list)


def grade_trace(trace: SearchTrace, graph: MustExpandGraph, vc_size: Optional[int] = None) -> CoverReport:
    c_star = graph.c_star
    necessary = [e for e in trace.expansions if e.pair_lb < c_star]
    for e in necessary:
        dist = graph.d_f if e.direction is FORWARD else graph.d_b
        if e.state not in dist:
            raise MismatchedInstance(f"expanded state {e.state!r} is unknown to this graph")
    exp_f = trace.expanded_states(FORWARD)
    exp_b = trace.expanded_states(BACKWARD)
    uncovered = [(u, v) for u, v in graph.edges() if u not in exp_f and v not in exp_b]
    if vc_size is None:
        vc_size = len(min_vertex_cover(graph))
    n = len(necessary)
    if vc_size:
        ratio = n / vc_size
    else:
        ratio = 0.0 if n == 0 else float("inf")
    return CoverReport(vc_size, n, not uncovered, ratio, uncovered)


def pair_parity_ok(trace: SearchTrace, c_star: Cost) -> bool:
    """NBS necessary expansions come as forward/backward pairs sharing C_lb."""
    nec = [e for e in trace.expansions if e.pair_lb < c_star]
    if len(nec) % 2:
        return False
    for a, b in zip(nec[::2], nec[1::2]):
        if a.direction is not FORWARD or b.direction is not BACKWARD or a.pair_lb != b.pair_lb:
            return False
    return True


# --- text format -----------------------------------------------------------


def _enc(state) -> str:
    return json.dumps(state, separators=(",", ":"))


def _dec(text: str):
    def tup(x):
        return tuple(tup(y) for y in x) if isinstance(x, list) else x

    return tup(json.loads(text))


def dump_gmx(graph: MustExpandGraph, cover: Optional[set] = None) -> str:
    """Line format: header, ``L``/``R`` vertex lines, ``E`` edge lines and,
    when a cover is given, a ``cover`` count line followed by ``C`` lines.

    States are JSON-encoded (tuples as arrays); fields are tab-separated.
    """
    lines = ["gmx 1", f"cstar\t{cost_to_str(graph.c_star)}"]
    lines += sorted(f"L\t{_enc(u)}" for u in graph.left)
    lines += sorted(f"R\t{_enc(v)}" for v in graph.right)
    lines += sorted(f"E\t{_enc(u)}\t{_enc(v)}" for u, v in graph.edges())
    if cover is not None:
        lines.append(f"cover\t{len(cover)}")
        lines += sorted(f"C\t{side}\t{_enc(s)}" for side, s in cover)
    return "\n".join(lines) + "\n"


def load_gmx(text: str) -> tuple[MustExpandGraph, Optional[set]]:
    lines = text.splitlines()
    if not lines or lines[0] != "gmx 1":
        raise ValueError("not a gmx file")
    c_star: Cost = 0
    left, right, adj, cover = set(), set(), {}, None
    for line in lines[1:]:
        if not line:
            continue
        tag, *rest = line.split("\t")
        if tag == "cstar":
            c_star = parse_cost(rest[0])
        elif tag == "L":
            left.add(_dec(rest[0]))
        elif tag == "R":
            right.add(_dec(rest[0]))
        elif tag == "E":
            adj.setdefault(_dec(rest[0]), set()).add(_dec(rest[1]))
        elif tag == "cover":
            cover = set() if cover is None else cover
        elif tag == "C":
            cover = set() if cover is None else cover
            cover.add((rest[0], _dec(rest[1])))
        else:
            raise ValueError(f"unknown line tag {tag!r}")
    return MustExpandGraph(left, right, adj, c_star), cover
