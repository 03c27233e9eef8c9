"""State-space abstraction, search bookkeeping and reference oracles.

Every search in this package talks to a :class:`StateSpace`: a start, a goal,
successor/predecessor expansion with non-negative edge costs, and one
front-to-end heuristic per direction.  Costs are plain ``int`` for the puzzle
domains and :class:`OctileCost` (exact ``a + b*sqrt(2)``) for grids.
"""

from __future__ import annotations

import heapq
import math
from abc import ABC, abstractmethod
from dataclasses import dataclass, field
from enum import Enum
from typing import Any, Callable, Hashable, Iterable, NamedTuple, Optional, Union

State = Hashable
Cost = Union[int, "OctileCost", float]

INF = math.inf


class Direction(str, Enum):
    FORWARD = "F"
    BACKWARD = "B"

    @property
    def opposite(self) -> "Direction":
        return Direction.BACKWARD if self is Direction.FORWARD else Direction.FORWARD


# Enum hashes through a Python-level method; the str hash is equivalent here
# and keeps direction-keyed dict lookups cheap.
Direction.__hash__ = str.__hash__

FORWARD = Direction.FORWARD
BACKWARD = Direction.BACKWARD


def _sign(p: int, q: int) -> int:
    """Sign of ``p + q*sqrt(2)`` for integers p, q, computed exactly."""
    if q == 0:
        return (p > 0) - (p < 0)
    if p == 0:
        return (q > 0) - (q < 0)
    if p > 0 and q > 0:
        return 1
    if p < 0 and q < 0:
        return -1
    if p > 0:
        d = p * p - 2 * q * q
    else:
        d = 2 * q * q - p * p
    return (d > 0) - (d < 0)


class OctileCost:
    """Exact cost ``a + b*sqrt(2)`` with integer a, b.

    Two distinct pairs never compare equal (sqrt(2) is irrational), so ties in
    termination tests are decided exactly.  Interoperates with ``int`` and
    with ``math.inf``.
    """

    __slots__ = ("a", "b")

    def __init__(self, a: int = 0, b: int = 0):
        self.a = a
        self.b = b

    def _diff(self, other) -> Optional[int]:
        if isinstance(other, OctileCost):
            return _sign(self.a - other.a, self.b - other.b)
        if isinstance(other, int):
            return _sign(self.a - other, self.b)
        if isinstance(other, float):
            if other == INF:
                return -1
            if other == -INF:
                return 1
            v = float(self)
            return (v > other) - (v < other)
        return None

    def __add__(self, other):
        if isinstance(other, OctileCost):
            return OctileCost(self.a + other.a, self.b + other.b)
        if isinstance(other, int):
            return OctileCost(self.a + other, self.b)
        if isinstance(other, float) and math.isinf(other):
            return other
        return NotImplemented

    __radd__ = __add__

    def __neg__(self):
        return OctileCost(-self.a, -self.b)

    def __sub__(self, other):
        if isinstance(other, OctileCost):
            return OctileCost(self.a - other.a, self.b - other.b)
        if isinstance(other, int):
            return OctileCost(self.a - other, self.b)
        return NotImplemented

    def __rsub__(self, other):
        if isinstance(other, int):
            return OctileCost(other - self.a, -self.b)
        return NotImplemented

    def __mul__(self, k):
        if isinstance(k, int):
            return OctileCost(self.a * k, self.b * k)
        return NotImplemented

    __rmul__ = __mul__

    def __lt__(self, other):
        d = self._diff(other)
        return NotImplemented if d is None else d < 0

    def __le__(self, other):
        d = self._diff(other)
        return NotImplemented if d is None else d <= 0

    def __gt__(self, other):
        d = self._diff(other)
        return NotImplemented if d is None else d > 0

    def __ge__(self, other):
        d = self._diff(other)
        return NotImplemented if d is None else d >= 0

    def __eq__(self, other):
        if isinstance(other, OctileCost):
            return self.a == other.a and self.b == other.b
        if isinstance(other, int):
            return self.b == 0 and self.a == other
        if isinstance(other, float):
            return False if math.isinf(other) else float(self) == other
        return NotImplemented

    def __hash__(self):
        return hash(self.a) if self.b == 0 else hash((self.a, self.b))

    def __float__(self):
        return self.a + self.b * math.sqrt(2.0)

    def __repr__(self):
        return f"OctileCost({self.a}, {self.b})"

    def __str__(self):
        if self.b == 0:
            return str(self.a)
        return f"{self.a}+{self.b}r2"


def cost_to_float(c: Cost) -> float:
    return float(c)


def cost_to_str(c: Cost) -> str:
    """Lossless text form: ``7``, ``3+2r2`` or ``inf``."""
    if isinstance(c, float) and math.isinf(c):
        return "inf"
    return str(c)


def parse_cost(text: str) -> Cost:
    text = text.strip()
    if text == "inf":
        return INF
    if "r2" in text:
        a, b = text[:-2].split("+")
        return OctileCost(int(a), int(b))
    return int(text)


class StateSpace(ABC):
    """Implicit directed graph with front-to-end heuristics.

    Subclasses fill in ``start``/``goal`` and the four abstract methods.  A
    heuristic may return ``math.inf`` to mark a state that cannot reach the
    relevant endpoint; searches prune such states.
    """

    start: State
    goal: State
    #: smallest positive edge cost, used as MMe's default epsilon
    min_edge_cost: Cost = 1

    @abstractmethod
    def expand_forward(self, state: State) -> list[tuple[State, Cost]]: ...

    @abstractmethod
    def expand_backward(self, state: State) -> list[tuple[State, Cost]]: ...

    @abstractmethod
    def h_forward(self, state: State) -> Cost: ...

    @abstractmethod
    def h_backward(self, state: State) -> Cost: ...

    def expand(self, state: State, direction: Direction) -> list[tuple[State, Cost]]:
        if direction is FORWARD:
            return self.expand_forward(state)
        return self.expand_backward(state)

    def heuristic(self, state: State, direction: Direction) -> Cost:
        if direction is FORWARD:
            return self.h_forward(state)
        return self.h_backward(state)

    def root(self, direction: Direction) -> State:
        return self.start if direction is FORWARD else self.goal


class HeuristicOverride(StateSpace):
    """Wraps a space, replacing one or both heuristics."""

    def __init__(
        self,
        base: StateSpace,
        h_forward: Optional[Callable[[State], Cost]] = None,
        h_backward: Optional[Callable[[State], Cost]] = None,
    ):
        self.base = base
        self.start = base.start
        self.goal = base.goal
        self.min_edge_cost = base.min_edge_cost
        self._hf = h_forward or base.h_forward
        self._hb = h_backward or base.h_backward

    def expand_forward(self, state):
        return self.base.expand_forward(state)

    def expand_backward(self, state):
        return self.base.expand_backward(state)

    def h_forward(self, state):
        return self._hf(state)

    def h_backward(self, state):
        return self._hb(state)


def _zero(_state):
    return 0


def with_zero_heuristic(space: StateSpace) -> StateSpace:
    return HeuristicOverride(space, _zero, _zero)


class SearchNode:
    """A search path represented by its end state, cost and parent link."""

    __slots__ = ("state", "direction", "g", "h", "f", "parent")

    def __init__(
        self,
        state: State,
        direction: Direction,
        g: Cost,
        h: Cost,
        parent: Optional["SearchNode"] = None,
    ):
        self.state = state
        self.direction = direction
        self.g = g
        self.h = h
        self.f = g + h
        self.parent = parent

    def __repr__(self):
        return f"SearchNode({self.state!r}, {self.direction.value}, g={self.g}, f={self.f})"


class CorruptPathError(RuntimeError):
    """Parent chain contains a cycle."""


def reconstruct_path(node: SearchNode) -> list[State]:
    """States from the root to ``node.state``.

    Backward nodes are returned reversed (``node.state`` first, goal last), so
    a forward prefix and a backward suffix concatenate into a solution.
    """
    seen = set()
    out = []
    cur: Optional[SearchNode] = node
    while cur is not None:
        if id(cur) in seen:
            raise CorruptPathError(f"cycle in parent chain at {cur.state!r}")
        seen.add(id(cur))
        out.append(cur.state)
        cur = cur.parent
    if node.direction is FORWARD:
        out.reverse()
    return out


class TraceEntry(NamedTuple):
    direction: Direction
    state: State
    g: Cost
    f: Cost
    #: lower bound in force when the node was expanded (NBS: C_lb; others: f)
    pair_lb: Cost


@dataclass
class SearchTrace:
    expansions: list[TraceEntry] = field(default_factory=list)
    generated: int = 0
    reopened: int = 0
    #: states closed without being expanded (BS* nipping)
    nipped: int = 0
    max_open_size: int = 0
    #: heap pushes/pops/peeks and the log-weighted cost of those operations
    queue_ops: int = 0
    queue_cost: float = 0.0
    insertions: int = 0
    wall_time: float = 0.0
    #: NBS only: successive values of C_lb
    c_lb_history: list = field(default_factory=list)

    @property
    def expanded(self) -> int:
        return len(self.expansions)

    def record(self, direction, node: SearchNode, pair_lb) -> None:
        self.expansions.append(TraceEntry(direction, node.state, node.g, node.f, pair_lb))

    def necessary(self, c_star: Cost) -> int:
        return sum(1 for e in self.expansions if e.pair_lb < c_star)

    def f_equal(self, c_star: Cost) -> int:
        return sum(1 for e in self.expansions if e.f == c_star)

    def expanded_states(self, direction: Direction) -> set:
        return {e.state for e in self.expansions if e.direction is direction}


@dataclass
class SearchResult:
    cost: Cost
    meeting_state: Optional[State] = None
    solution_path: Optional[list] = None
    trace: SearchTrace = field(default_factory=SearchTrace)
    algorithm: str = ""

    @property
    def solved(self) -> bool:
        return not (isinstance(self.cost, float) and math.isinf(self.cost))


@dataclass(frozen=True)
class SearchLimits:
    max_expansions: Optional[int] = None
    max_seconds: Optional[float] = None


class SearchLimitExceeded(RuntimeError):
    def __init__(self, message: str, trace: Optional[SearchTrace] = None):
        super().__init__(message)
        self.trace = trace


class InconsistentHeuristicError(ValueError):
    """Raised by algorithms that are only correct with consistent heuristics."""


def join_paths(node_f: SearchNode, node_b: SearchNode) -> list[State]:
    """Forward path to the meeting state followed by the backward path."""
    head = reconstruct_path(node_f)
    tail = reconstruct_path(node_b)
    return head + tail[1:]


def path_cost(space: StateSpace, path: list[State]) -> Cost:
    """Cost of a state sequence under the cheapest edge between each pair."""
    total: Cost = 0
    for u, v in zip(path, path[1:]):
        costs = [c for s, c in space.expand_forward(u) if s == v]
        if not costs:
            raise ValueError(f"no edge {u!r} -> {v!r}")
        total = total + min(costs)
    return total


def dijkstra(
    space: StateSpace,
    source: State,
    direction: Direction = FORWARD,
    bound: Optional[Cost] = None,
    cap: Optional[int] = None,
    target: Optional[State] = None,
    inclusive: bool = False,
) -> dict:
    """Exact distances from ``source`` (forward) or to ``source`` (backward).

    Unreachable states are absent.  With ``bound`` only states strictly closer
    than the bound are settled (or at most the bound, with ``inclusive``); with ``target`` the sweep stops once that
    state is settled.  ``cap`` limits the number of settled states and raises
    ``SearchLimitExceeded`` when hit.
    """
    dist: dict = {}
    tie = 0
    heap = [(0, tie, source)]
    best = {source: 0}
    expand = space.expand_forward if direction is FORWARD else space.expand_backward
    while heap:
        d, _, u = heapq.heappop(heap)
        if u in dist:
            continue
        if bound is not None and (d > bound if inclusive else not d < bound):
            break
        dist[u] = d
        if cap is not None and len(dist) > cap:
            raise SearchLimitExceeded(f"dijkstra settled more than {cap} states")
        if u == target:
            break
        for v, c in expand(u):
            nd = d + c
            if v not in dist and (v not in best or nd < best[v]):
                best[v] = nd
                tie += 1
                heapq.heappush(heap, (nd, tie, v))
    return dist


@dataclass(frozen=True)
class Violation:
    kind: str  # "forward", "backward" or "anchor"
    state: Any
    neighbor: Any = None
    detail: str = ""


def check_consistency(space: StateSpace, states: Iterable[State]) -> list[Violation]:
    """Edge-wise consistency scan over the out-edges of ``states``.

    Forward: ``h_F(u) <= c + h_F(v)``.  Backward: ``h_B(v) <= c + h_B(u)``.
    Also flags a non-zero ``h_F(goal)`` or ``h_B(start)``.
    """
    report = []
    for u in states:
        hf_u = space.h_forward(u)
        hb_u = space.h_backward(u)
        for v, c in space.expand_forward(u):
            hf_v = space.h_forward(v)
            if hf_u > c + hf_v:
                report.append(Violation("forward", u, v, f"h_F={hf_u} > {c} + {hf_v}"))
            hb_v = space.h_backward(v)
            if hb_v > c + hb_u:
                report.append(Violation("backward", v, u, f"h_B={hb_v} > {c} + {hb_u}"))
    hg = space.h_forward(space.goal)
    if hg != 0:
        report.append(Violation("anchor", space.goal, detail=f"h_F(goal)={hg}"))
    hs = space.h_backward(space.start)
    if hs != 0:
        report.append(Violation("anchor", space.start, detail=f"h_B(start)={hs}"))
    return report


def is_infinite(c: Cost) -> bool:
    return isinstance(c, float) and math.isinf(c)
