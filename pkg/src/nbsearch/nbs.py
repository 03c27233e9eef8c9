"""Near-Optimal Bidirectional Search.

Each iteration stages the pair with the smallest lower bound (ties: cheaper
forward path, then cheaper backward path) and expands both of its ends.
The search stops once that bound reaches the cost of the best solution seen.
"""

from __future__ import annotations

import time
from dataclasses import dataclass
from typing import Optional

from .core import (
    BACKWARD,
    FORWARD,
    INF,
    Cost,
    Direction,
    SearchLimitExceeded,
    SearchLimits,
    SearchNode,
    SearchResult,
    SearchTrace,
    StateSpace,
    is_infinite,
    join_paths,
)
from .openlist import DualOpenList


class ClosedSet:
    def __init__(self):
        self.forward: dict = {}
        self.backward: dict = {}

    def side(self, direction: Direction) -> dict:
        return self.forward if direction is FORWARD else self.backward

    def get(self, direction: Direction, state) -> Optional[SearchNode]:
        return self.side(direction).get(state)


@dataclass
class Incumbent:
    """Best solution seen so far, with the two half-paths that form it."""

    cost: Cost = INF
    node_f: Optional[SearchNode] = None
    node_b: Optional[SearchNode] = None

    def offer(self, a: SearchNode, b: SearchNode) -> None:
        total = a.g + b.g
        if total < self.cost:
            self.cost = total
            if a.direction is FORWARD:
                self.node_f, self.node_b = a, b
            else:
                self.node_f, self.node_b = b, a


def expand(
    direction: Direction,
    node: SearchNode,
    space: StateSpace,
    open_list: DualOpenList,
    closed: ClosedSet,
    incumbent: Incumbent,
    trace: SearchTrace,
) -> Cost:
    """Close ``node`` and generate its children; returns the updated C.

    A child meeting the opposite frontier (open or closed) offers a solution.
    A child whose state already has an equal-or-cheaper path in this
    direction is discarded; otherwise it replaces that path (reopening it if
    closed) and enters the waiting queue.
    """
    opp = direction.opposite
    own_closed = closed.side(direction)
    opp_closed = closed.side(opp)
    opp_open = open_list.members[opp]
    own_open = open_list.members[direction]
    own_closed[node.state] = node
    succ = space.expand_forward if direction is FORWARD else space.expand_backward
    heur = space.h_forward if direction is FORWARD else space.h_backward
    g0 = node.g
    n = 0
    add = open_list.add
    for state, c in succ(node.state):
        n += 1
        g = g0 + c
        other = opp_open.get(state)
        if other is None:
            other = opp_closed.get(state)
        if other is not None and g + other.g < incumbent.cost:
            incumbent.offer(SearchNode(state, direction, g, 0, node), other)
        existing = own_open.get(state)
        if existing is not None:
            if existing.g <= g:
                continue
            del own_open[state]
        else:
            existing = own_closed.get(state)
            if existing is not None:
                if existing.g <= g:
                    continue
                del own_closed[state]
                trace.reopened += 1
        h = heur(state)
        if h == INF:
            continue
        add(SearchNode(state, direction, g, h, node))
    trace.generated += n
    return incumbent.cost


def nbs_search(space: StateSpace, limits: Optional[SearchLimits] = None) -> SearchResult:
    trace = SearchTrace()
    t0 = time.perf_counter()
    if space.start == space.goal:
        return SearchResult(0, space.start, [space.start], trace, "nbs")
    limits = limits or SearchLimits()
    open_list = DualOpenList()
    closed = ClosedSet()
    incumbent = Incumbent()
    for d in (FORWARD, BACKWARD):
        root = space.root(d)
        h = space.heuristic(root, d)
        if not is_infinite(h):
            open_list.add(SearchNode(root, d, 0, h))
    while open_list.prepare_best():
        if open_list.c_lb >= incumbent.cost:
            break
        if limits.max_expansions is not None and trace.expanded >= limits.max_expansions:
            raise SearchLimitExceeded("expansion cap", trace)
        if limits.max_seconds is not None and time.perf_counter() - t0 > limits.max_seconds:
            raise SearchLimitExceeded("time cap", trace)
        trace.max_open_size = max(trace.max_open_size, len(open_list))
        u, v = open_list.pop_pair()
        c_lb = open_list.c_lb
        trace.record(FORWARD, u, c_lb)
        trace.record(BACKWARD, v, c_lb)
        expand(FORWARD, u, space, open_list, closed, incumbent, trace)
        expand(BACKWARD, v, space, open_list, closed, incumbent, trace)
    trace.queue_ops = open_list.ops
    trace.queue_cost = open_list.op_cost
    trace.insertions = open_list.insertions
    trace.c_lb_history = list(open_list.c_lb_history)
    trace.wall_time = time.perf_counter() - t0
    if incumbent.node_f is None:
        return SearchResult(INF, None, None, trace, "nbs")
    return SearchResult(
        incumbent.cost,
        incumbent.node_f.state,
        join_paths(incumbent.node_f, incumbent.node_b),
        trace,
        "nbs",
    )
