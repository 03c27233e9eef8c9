"""Comparison algorithms: A*, MM / MMe / MM0 and BS*.

All of them record the node's f as the trace's lower bound, which is what
"expansions with f < C*" counts for non-NBS algorithms.
"""

from __future__ import annotations

import heapq
import time
from dataclasses import dataclass
from itertools import count
from typing import Optional

from .core import (
    BACKWARD,
    FORWARD,
    INF,
    Cost,
    Direction,
    InconsistentHeuristicError,
    SearchLimitExceeded,
    SearchLimits,
    SearchNode,
    SearchResult,
    SearchTrace,
    StateSpace,
    is_infinite,
    join_paths,
    reconstruct_path,
)
from .nbs import ClosedSet, Incumbent


def _check_limits(limits: SearchLimits, trace: SearchTrace, t0: float) -> None:
    if limits.max_expansions is not None and trace.expanded >= limits.max_expansions:
        raise SearchLimitExceeded("expansion cap", trace)
    if limits.max_seconds is not None and time.perf_counter() - t0 > limits.max_seconds:
        raise SearchLimitExceeded("time cap", trace)


class _Heap:
    """Binary heap with lazy deletion keyed by a caller-supplied priority."""

    def __init__(self, members: dict, direction: Direction, key):
        self.heap: list = []
        self.members = members
        self.direction = direction
        self.key = key
        self.seq = count()
        self.ops = 0

    def push(self, node: SearchNode) -> None:
        self.ops += 1
        heapq.heappush(self.heap, (self.key(node), node.state, next(self.seq), node))

    def push_key(self, key, node: SearchNode) -> None:
        self.ops += 1
        heapq.heappush(self.heap, (key, node.state, next(self.seq), node))

    def front(self) -> Optional[SearchNode]:
        heap = self.heap
        while heap:
            node = heap[0][-1]
            if self.members.get(node.state) is node:
                return node
            self.ops += 1
            heapq.heappop(heap)
        return None

    def pop(self) -> SearchNode:
        node = self.front()
        self.ops += 1
        heapq.heappop(self.heap)
        return node


def _f_key(node):
    return (node.f, -node.g)


def astar_search(
    space: StateSpace,
    direction: Direction = FORWARD,
    limits: Optional[SearchLimits] = None,
) -> SearchResult:
    """A* from start (forward) or from goal over reversed edges (backward).

    Stops as soon as the cheapest solution seen is no more than the smallest
    f on open.  Ties on f go to the larger g.
    """
    name = "astar_f" if direction is FORWARD else "astar_b"
    trace = SearchTrace()
    t0 = time.perf_counter()
    if space.start == space.goal:
        return SearchResult(0, space.start, [space.start], trace, name)
    limits = limits or SearchLimits()
    root = space.root(direction)
    target = space.root(direction.opposite)
    succ = space.expand_forward if direction is FORWARD else space.expand_backward
    heur = space.h_forward if direction is FORWARD else space.h_backward
    members: dict = {}
    closed: dict = {}
    open_ = _Heap(members, direction, _f_key)
    push = open_.push_key
    capped = limits.max_expansions is not None or limits.max_seconds is not None
    best_cost = INF
    best_node: Optional[SearchNode] = None
    generated = reopened = insertions = 0
    h0 = heur(root)
    if not is_infinite(h0):
        node = SearchNode(root, direction, 0, h0)
        members[root] = node
        open_.push(node)
        insertions += 1
    while True:
        top = open_.front()
        if top is None or top.f >= best_cost:
            break
        if capped:
            _check_limits(limits, trace, t0)
        if len(members) > trace.max_open_size:
            trace.max_open_size = len(members)
        node = open_.pop()
        del members[node.state]
        closed[node.state] = node
        trace.record(direction, node, node.f)
        g0 = node.g
        for state, c in succ(node.state):
            generated += 1
            g = g0 + c
            if state == target:
                if g < best_cost:
                    best_cost = g
                    best_node = SearchNode(state, direction, g, 0, node)
                continue
            existing = members.get(state)
            if existing is not None:
                if existing.g <= g:
                    continue
            else:
                existing = closed.get(state)
                if existing is not None:
                    if existing.g <= g:
                        continue
                    del closed[state]
                    reopened += 1
            h = heur(state)
            if h == INF:
                continue
            child = SearchNode(state, direction, g, h, node)
            members[state] = child
            push((child.f, -g), child)
            insertions += 1
    trace.generated = generated
    trace.reopened = reopened
    trace.insertions = insertions
    trace.queue_ops = open_.ops
    trace.wall_time = time.perf_counter() - t0
    if best_node is None:
        return SearchResult(INF, None, None, trace, name)
    path = reconstruct_path(best_node)
    return SearchResult(best_cost, target, path, trace, name)


@dataclass(frozen=True)
class MMParams:
    epsilon: Cost = 0
    use_heuristic: bool = True

    @classmethod
    def mme(cls, space: StateSpace) -> "MMParams":
        return cls(epsilon=space.min_edge_cost, use_heuristic=True)


def mm_search(
    space: StateSpace,
    params: MMParams = MMParams(),
    limits: Optional[SearchLimits] = None,
) -> SearchResult:
    """Meet-in-the-middle search with priority ``max(f, 2g + epsilon)``.

    With ``use_heuristic=False`` the heuristics are never called (MM0).  Then
    f equals g and the priority is monotone in g, so a single g-ordered heap
    per side serves as the priority, f and g queues at once.
    """
    if params.use_heuristic:
        name = "mme" if params.epsilon else "mm"
    else:
        name = "mm0"
    trace = SearchTrace()
    t0 = time.perf_counter()
    if space.start == space.goal:
        return SearchResult(0, space.start, [space.start], trace, name)
    limits = limits or SearchLimits()
    eps = params.epsilon
    use_h = params.use_heuristic
    capped = limits.max_expansions is not None or limits.max_seconds is not None

    members = {FORWARD: {}, BACKWARD: {}}
    if use_h:
        heaps = {
            d: (_Heap(members[d], d, None), _Heap(members[d], d, None), _Heap(members[d], d, None))
            for d in (FORWARD, BACKWARD)
        }
    else:
        heaps = {}
        for d in (FORWARD, BACKWARD):
            one = _Heap(members[d], d, None)
            heaps[d] = (one,)
    closed = ClosedSet()
    incumbent = Incumbent()
    heur = {
        FORWARD: space.h_forward if use_h else (lambda s: 0),
        BACKWARD: space.h_backward if use_h else (lambda s: 0),
    }

    def push(node):
        members[node.direction][node.state] = node
        hs = heaps[node.direction]
        g = node.g
        if use_h:
            f = node.f
            p = 2 * g + eps
            hs[0].push_key((p if p > f else f, g), node)
            hs[1].push_key(f, node)
            hs[2].push_key(g, node)
        else:
            hs[0].push_key(g, node)
        trace.insertions += 1

    for d in (FORWARD, BACKWARD):
        root = space.root(d)
        h = heur[d](root)
        if not is_infinite(h):
            push(SearchNode(root, d, 0, h))

    while True:
        hf, hb = heaps[FORWARD], heaps[BACKWARD]
        pf = hf[0].front()
        pb = hb[0].front()
        if pf is None or pb is None:
            break
        if use_h:
            prf = hf[0].heap[0][0]
            prb = hb[0].heap[0][0]
            fminf = hf[1].front().f
            fminb = hb[1].front().f
            gsum = hf[2].front().g + hb[2].front().g
        else:
            prf = (2 * pf.g + eps, pf.g)
            prb = (2 * pb.g + eps, pb.g)
            fminf, fminb = pf.g, pb.g
            gsum = pf.g + pb.g
        # only the smaller of the two priority minima bounds C*
        bound = max(min(prf[0], prb[0]), fminf, fminb, gsum + eps)
        if incumbent.cost <= bound:
            break
        if capped:
            _check_limits(limits, trace, t0)
        n_open = len(members[FORWARD]) + len(members[BACKWARD])
        if n_open > trace.max_open_size:
            trace.max_open_size = n_open
        d = FORWARD if prf <= prb else BACKWARD
        node = heaps[d][0].pop()
        del members[d][node.state]
        closed.side(d)[node.state] = node
        trace.record(d, node, node.f)
        _generate(space, d, node, members, closed, incumbent, trace, heur[d], push)

    trace.queue_ops = sum(h.ops for d in heaps for h in heaps[d])
    trace.wall_time = time.perf_counter() - t0
    if incumbent.node_f is None:
        return SearchResult(INF, None, None, trace, name)
    return SearchResult(
        incumbent.cost,
        incumbent.node_f.state,
        join_paths(incumbent.node_f, incumbent.node_b),
        trace,
        name,
    )


def _generate(space, d, node, members, closed, incumbent, trace, heur, push, screening=False):
    """Shared child generation for the bidirectional baselines."""
    opp = d.opposite
    succ = space.expand_forward if d is FORWARD else space.expand_backward
    own_open = members[d]
    opp_open = members[opp]
    own_closed = closed.side(d)
    opp_closed = closed.side(opp)
    children = []
    g0 = node.g
    n = 0
    for state, c in succ(node.state):
        n += 1
        g = g0 + c
        other = opp_open.get(state)
        if other is None:
            other = opp_closed.get(state)
        if other is not None and g + other.g < incumbent.cost:
            incumbent.offer(SearchNode(state, d, g, 0, node), other)
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
        children.append(SearchNode(state, d, g, h, node))
    trace.generated += n
    # screening: a child that cannot beat the incumbent never enters open
    cutoff = incumbent.cost if screening else INF
    for child in children:
        if child.f < cutoff:
            push(child)


def bs_star_search(space: StateSpace, limits: Optional[SearchLimits] = None) -> SearchResult:
    """BS*: bidirectional A* with trimming, screening, nipping and pruning.

    Only correct with consistent heuristics; an inconsistent edge met during
    the search raises :class:`InconsistentHeuristicError`.  Direction choice:
    the side with fewer open nodes, alternating on ties.
    """
    trace = SearchTrace()
    t0 = time.perf_counter()
    if space.start == space.goal:
        return SearchResult(0, space.start, [space.start], trace, "bs_star")
    limits = limits or SearchLimits()
    members = {FORWARD: {}, BACKWARD: {}}
    heaps = {d: _Heap(members[d], d, _f_key) for d in (FORWARD, BACKWARD)}
    heur = {FORWARD: space.h_forward, BACKWARD: space.h_backward}
    succ = {FORWARD: space.expand_forward, BACKWARD: space.expand_backward}
    closed = ClosedSet()
    nipped = {FORWARD: set(), BACKWARD: set()}
    incumbent = Incumbent()

    def push(node):
        members[node.direction][node.state] = node
        heaps[node.direction].push_key((node.f, -node.g), node)
        trace.insertions += 1

    for d in (FORWARD, BACKWARD):
        root = space.root(d)
        h = heur[d](root)
        if not is_infinite(h):
            push(SearchNode(root, d, 0, h))

    last = BACKWARD
    while True:
        ff = heaps[FORWARD].front()
        fb = heaps[BACKWARD].front()
        # trimming: once either side's best f reaches L, that side is empty
        if ff is None or fb is None or ff.f >= incumbent.cost or fb.f >= incumbent.cost:
            break
        _check_limits(limits, trace, t0)
        trace.max_open_size = max(
            trace.max_open_size, len(members[FORWARD]) + len(members[BACKWARD])
        )
        nf, nb = len(members[FORWARD]), len(members[BACKWARD])
        if nf != nb:
            d = FORWARD if nf < nb else BACKWARD
        else:
            d = last.opposite
        last = d
        opp = d.opposite
        node = heaps[d].pop()
        del members[d][node.state]
        if node.state in closed.side(opp):
            # nipping: the other search already expanded this state
            closed.side(d)[node.state] = node
            nipped[d].add(node.state)
            trace.nipped += 1
            # pruning: drop opposite-open children hanging off the nipped state
            opp_node = closed.side(opp)[node.state]
            for s, _ in succ[opp](node.state):
                child = members[opp].get(s)
                if child is not None and child.parent is opp_node:
                    del members[opp][s]
            continue
        closed.side(d)[node.state] = node
        trace.record(d, node, node.f)
        h_node = node.h
        children = succ[d](node.state)
        for s, c in children:
            h_s = heur[d](s)
            if h_node > c + h_s:
                raise InconsistentHeuristicError(
                    f"{d.value}-heuristic inconsistent on edge {node.state!r} -> {s!r}"
                )
        _generate(
            space, d, node, members, closed, incumbent, trace, heur[d], push, screening=True
        )

    trace.queue_ops = heaps[FORWARD].ops + heaps[BACKWARD].ops
    trace.wall_time = time.perf_counter() - t0
    result_name = "bs_star"
    if incumbent.node_f is None:
        return SearchResult(INF, None, None, trace, result_name)
    return SearchResult(
        incumbent.cost,
        incumbent.node_f.state,
        join_paths(incumbent.node_f, incumbent.node_b),
        trace,
        result_name,
    )
