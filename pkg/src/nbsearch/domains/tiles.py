"""Sliding-tile puzzle with the Manhattan-distance heuristic.

States are tuples in row-major order, 0 is the blank.  The default goal is
``(0, 1, ..., W*H-1)`` (blank in the top-left corner).
"""

from __future__ import annotations

import random
from typing import Optional, Sequence

from ..core import StateSpace


def _positions(state: Sequence[int]) -> list[int]:
    pos = [0] * len(state)
    for i, t in enumerate(state):
        pos[t] = i
    return pos


def manhattan_h(state: Sequence[int], goal: Sequence[int], width: int) -> int:
    if len(state) != len(goal):
        raise ValueError("state and goal have different board sizes")
    gpos = _positions(goal)
    total = 0
    for i, t in enumerate(state):
        if t:
            j = gpos[t]
            total += abs(i // width - j // width) + abs(i % width - j % width)
    return total


def _parity(perm: Sequence[int]) -> int:
    seen = [False] * len(perm)
    swaps = 0
    for i in range(len(perm)):
        if seen[i]:
            continue
        j = i
        length = 0
        while not seen[j]:
            seen[j] = True
            j = perm[j]
            length += 1
        swaps += length - 1
    return swaps & 1


def is_solvable(state: Sequence[int], goal: Sequence[int], width: int) -> bool:
    """Reachability test: permutation parity must match blank-distance parity."""
    if sorted(state) != sorted(goal) or sorted(state) != list(range(len(state))):
        return False
    gpos = _positions(goal)
    perm = [gpos[t] for t in state]
    b, gb = state.index(0), goal.index(0)
    blank_dist = abs(b // width - gb // width) + abs(b % width - gb % width)
    return _parity(perm) == blank_dist & 1


class TileSpace(StateSpace):
    min_edge_cost = 1

    def __init__(
        self,
        start: Sequence[int],
        width: int = 3,
        height: Optional[int] = None,
        goal: Optional[Sequence[int]] = None,
        heuristic: str = "md",
    ):
        height = height or width
        start = tuple(start)
        if len(start) != width * height:
            raise ValueError(f"state has {len(start)} cells, board is {width}x{height}")
        goal = tuple(goal) if goal is not None else tuple(range(width * height))
        if not is_solvable(start, goal, width):
            raise ValueError("start is not solvable for this goal")
        self.width = width
        self.height = height
        self.start = start
        self.goal = goal
        self._zero = heuristic == "zero"
        cells = width * height
        self._moves = []
        for i in range(cells):
            r, c = divmod(i, width)
            adj = []
            if r > 0:
                adj.append(i - width)
            if r < height - 1:
                adj.append(i + width)
            if c > 0:
                adj.append(i - 1)
            if c < width - 1:
                adj.append(i + 1)
            self._moves.append(adj)
        # dist tables: [tile][cell] -> Manhattan distance to that tile's home
        self._to_goal = self._table(goal)
        self._to_start = self._table(start)

    def _table(self, anchor):
        w = self.width
        apos = _positions(anchor)
        return [
            [0 if t == 0 else abs(i // w - apos[t] // w) + abs(i % w - apos[t] % w) for i in range(len(anchor))]
            for t in range(len(anchor))
        ]

    def expand_forward(self, state):
        b = state.index(0)
        out = []
        for j in self._moves[b]:
            s = list(state)
            s[b], s[j] = s[j], 0
            out.append((tuple(s), 1))
        return out

    expand_backward = expand_forward

    def h_forward(self, state):
        if self._zero:
            return 0
        t = self._to_goal
        return sum(t[x][i] for i, x in enumerate(state))

    def h_backward(self, state):
        if self._zero:
            return 0
        t = self._to_start
        return sum(t[x][i] for i, x in enumerate(state))


def random_tiles(rng: random.Random, width: int = 3, height: Optional[int] = None) -> tuple[int, ...]:
    """Uniform random state solvable for the canonical goal."""
    height = height or width
    cells = list(range(width * height))
    rng.shuffle(cells)
    goal = tuple(range(width * height))
    if not is_solvable(cells, goal, width):
        i, j = [k for k, t in enumerate(cells) if t][:2]
        cells[i], cells[j] = cells[j], cells[i]
    return tuple(cells)
