"""Pancake puzzle with the GAP-k heuristic.

A state is a tuple permutation of 1..N, position 0 on top.  Operators flip
the top ``i`` pancakes for ``i`` in 2..N at unit cost.  The goal is the
sorted stack.
"""

from __future__ import annotations

import random
from typing import Sequence

from ..core import StateSpace


def gap_h(state: Sequence[int], k: int = 0) -> int:
    """Count adjacent pairs (plate included as N+1) differing by more than 1.

    Pairs touching one of the ``k`` smallest pancakes are not counted.
    """
    n = len(state)
    gaps = 0
    for i in range(n):
        a = state[i]
        b = state[i + 1] if i + 1 < n else n + 1
        if (a - b > 1 or b - a > 1) and (a > k and b > k):
            gaps += 1
    return gaps


def is_permutation(state: Sequence[int]) -> bool:
    return sorted(state) == list(range(1, len(state) + 1))


class PancakeSpace(StateSpace):
    """Forward heuristic is GAP-k towards the sorted stack; the backward one
    applies GAP-k after relabelling each pancake by its position in start."""

    min_edge_cost = 1

    def __init__(self, start: Sequence[int], k: int = 0, heuristic: str = "gap"):
        start = tuple(start)
        if not is_permutation(start):
            raise ValueError(f"not a permutation of 1..{len(start)}: {start}")
        n = len(start)
        if not 0 <= k < max(n, 1):
            raise ValueError(f"k must satisfy 0 <= k < {n}")
        self.n = n
        self.k = k
        self.start = start
        self.goal = tuple(range(1, n + 1))
        # label[x] = 1-based position of pancake x in start
        self._label = [0] * (n + 1)
        for pos, x in enumerate(start):
            self._label[x] = pos + 1
        self._zero = heuristic == "zero"

    def expand_forward(self, state):
        return [(state[i - 1 :: -1] + state[i:], 1) for i in range(2, self.n + 1)]

    expand_backward = expand_forward

    def h_forward(self, state):
        if self._zero:
            return 0
        return gap_h(state, self.k)

    def h_backward(self, state):
        if self._zero:
            return 0
        label = self._label
        return gap_h([label[x] for x in state], self.k)


def random_pancake(rng: random.Random, n: int = 10) -> tuple[int, ...]:
    perm = list(range(1, n + 1))
    rng.shuffle(perm)
    return tuple(perm)
