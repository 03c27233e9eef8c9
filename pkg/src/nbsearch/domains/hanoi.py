"""Four-peg Tower of Hanoi with per-instance additive pattern databases.

A state is a packed peg assignment: bits ``2d, 2d+1`` hold the peg of disc
``d`` (disc 0 is the smallest).  Stack order on a peg is implied by disc
size, so every code is a legal state.  The canonical goal has every disc on
the last peg.
"""

from __future__ import annotations

import random
from collections import deque
from dataclasses import dataclass
from functools import lru_cache
from typing import Optional, Sequence, Union

import numpy as np

from ..core import StateSpace

PEGS = 4
#: spaces up to this many discs get fully tabulated moves and heuristics
TABULATE_MAX_DISCS = 9


class PDBTooLarge(MemoryError):
    pass


def encode(pegs: Sequence[int]) -> int:
    code = 0
    for d, p in enumerate(pegs):
        if not 0 <= p < PEGS:
            raise ValueError(f"peg index {p} out of range")
        code |= p << (2 * d)
    return code


def decode(code: int, discs: int) -> tuple[int, ...]:
    return tuple((code >> (2 * d)) & 3 for d in range(discs))


def hanoi_moves(code: int, discs: int) -> list[int]:
    """Codes one legal move away: a peg's top disc onto an empty peg or a larger disc."""
    top = [-1, -1, -1, -1]
    found = 0
    for d in range(discs):
        p = (code >> (2 * d)) & 3
        if top[p] < 0:
            top[p] = d
            found += 1
            if found == PEGS:
                break
    out = []
    for p in range(PEGS):
        d = top[p]
        if d < 0:
            continue
        for q in range(PEGS):
            if q != p and (top[q] < 0 or top[q] > d):
                out.append(code ^ ((p ^ q) << (2 * d)))
    return out


@lru_cache(maxsize=4)
def move_table(discs: int) -> tuple:
    """Successor lists (with unit costs) for every state of a small space."""
    return tuple([(t, 1) for t in hanoi_moves(c, discs)] for c in range(PEGS**discs))


def _group_table(anchor_code: int, size: int) -> bytes:
    """BFS distances to the anchor in the problem containing only ``size`` discs."""
    dist = bytearray([255]) * (PEGS**size)
    dist[anchor_code] = 0
    queue = deque([anchor_code])
    if size <= TABULATE_MAX_DISCS:
        table = move_table(size)
        moves = lambda s: [t for t, _ in table[s]]  # noqa: E731
    else:
        moves = lambda s: hanoi_moves(s, size)  # noqa: E731
    while queue:
        s = queue.popleft()
        ds = dist[s] + 1
        for t in moves(s):
            if dist[t] == 255:
                dist[t] = ds
                queue.append(t)
    return bytes(dist)


@dataclass(frozen=True)
class AdditivePDB:
    """Disjoint groups of consecutive discs, one exact distance table each.

    ``h(state)`` sums the table entries of the state's projections; every
    move shifts one disc and so changes at most one term by one.
    """

    groups: tuple[tuple[int, int], ...]  # (first disc, size)
    tables: tuple[bytes, ...]
    anchor: int

    def __call__(self, code: int) -> int:
        total = 0
        for (lo, size), table in zip(self.groups, self.tables):
            total += table[(code >> (2 * lo)) & ((1 << (2 * size)) - 1)]
        return total

    def tabulate(self, discs: int) -> list[int]:
        codes = np.arange(PEGS**discs, dtype=np.int64)
        total = np.zeros(len(codes), dtype=np.int64)
        for (lo, size), table in zip(self.groups, self.tables):
            t = np.frombuffer(table, dtype=np.uint8).astype(np.int64)
            total += t[(codes >> (2 * lo)) & ((1 << (2 * size)) - 1)]
        return total.tolist()


def build_hanoi_pdb(
    anchor: Union[int, Sequence[int]],
    partition: Sequence[int],
    discs: Optional[int] = None,
    cap: int = 4**10,
) -> AdditivePDB:
    """Additive PDB towards ``anchor`` (peg tuple or packed code).

    Groups take discs from the smallest up, so ``(6, 2)`` on 8 discs pairs
    discs 0-5 and discs 6-7.
    """
    if not isinstance(anchor, int):
        discs = len(anchor)
        anchor = encode(anchor)
    if discs is None:
        raise ValueError("discs is required with a packed anchor")
    if sum(partition) != discs:
        raise ValueError(f"partition {tuple(partition)} does not sum to {discs} discs")
    groups = []
    tables = []
    lo = 0
    for size in partition:
        if PEGS**size > cap:
            raise PDBTooLarge(f"group of {size} discs needs {PEGS**size} entries (cap {cap})")
        groups.append((lo, size))
        tables.append(_group_table((anchor >> (2 * lo)) & ((1 << (2 * size)) - 1), size))
        lo += size
    return AdditivePDB(tuple(groups), tuple(tables), anchor)


class HanoiSpace(StateSpace):
    """h_F is a goal-anchored PDB and h_B a start-anchored one, same partition."""

    min_edge_cost = 1

    def __init__(
        self,
        start: Union[int, Sequence[int]],
        partition: Optional[Sequence[int]] = None,
        goal: Optional[Union[int, Sequence[int]]] = None,
        heuristic: str = "pdb",
        discs: Optional[int] = None,
    ):
        if not isinstance(start, int):
            discs = len(start)
            start = encode(start)
        if discs is None:
            raise ValueError("discs is required with a packed start")
        self.discs = discs
        self.start = start
        if goal is None:
            goal = (1 << (2 * discs)) - 1
        elif not isinstance(goal, int):
            goal = encode(goal)
        self.goal = goal
        self.partition = tuple(partition) if partition is not None else (discs,)
        self._zero = heuristic == "zero"
        self._moves = move_table(discs) if discs <= TABULATE_MAX_DISCS else None
        self._hf = self._hb = None
        if not self._zero:
            self.pdb_forward = build_hanoi_pdb(self.goal, self.partition, discs)
            self.pdb_backward = build_hanoi_pdb(self.start, self.partition, discs)
            if discs <= TABULATE_MAX_DISCS:
                self._hf = self.pdb_forward.tabulate(discs)
                self._hb = self.pdb_backward.tabulate(discs)

    def expand_forward(self, state):
        if self._moves is not None:
            return self._moves[state]
        return [(t, 1) for t in hanoi_moves(state, self.discs)]

    expand_backward = expand_forward

    def h_forward(self, state):
        if self._zero:
            return 0
        if self._hf is not None:
            return self._hf[state]
        return self.pdb_forward(state)

    def h_backward(self, state):
        if self._zero:
            return 0
        if self._hb is not None:
            return self._hb[state]
        return self.pdb_backward(state)

    def pegs(self, state: int) -> tuple[int, ...]:
        return decode(state, self.discs)


def random_hanoi(rng: random.Random, discs: int = 8) -> tuple[int, ...]:
    return tuple(rng.randrange(PEGS) for _ in range(discs))
