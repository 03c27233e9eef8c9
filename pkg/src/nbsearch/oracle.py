"""Exact distance tables for whole puzzle spaces.

Every puzzle instance here shares the canonical goal and uses reversible
unit-cost moves, so one breadth-first sweep from the goal answers
``d(start, goal)`` for every start.  The pancake table is built with numpy
over permutation ranks and cached under ``$NBSEARCH_CACHE`` (default
``~/.cache/nbsearch``).
"""

from __future__ import annotations

import os
from functools import lru_cache
from math import factorial
from pathlib import Path
from typing import Optional, Sequence, Union

import numpy as np

from .core import BACKWARD, FORWARD, INF, Cost, HeuristicOverride, SearchTrace, StateSpace, dijkstra
from .domains.hanoi import HanoiSpace, encode
from .domains.pancake import PancakeSpace
from .domains.tiles import TileSpace

UNSEEN = 255


def cache_dir() -> Path:
    return Path(os.environ.get("NBSEARCH_CACHE", Path.home() / ".cache" / "nbsearch"))


def perm_rank(perms: np.ndarray) -> np.ndarray:
    """Lexicographic rank of each row, a permutation of ``0..n-1``."""
    perms = np.asarray(perms)
    m, n = perms.shape
    rank = np.zeros(m, dtype=np.int64)
    for i in range(n - 1):
        smaller = (perms[:, i + 1 :] < perms[:, i : i + 1]).sum(axis=1)
        rank += smaller.astype(np.int64) * factorial(n - 1 - i)
    return rank


def _pancake_bfs(n: int, chunk: int = 200_000) -> np.ndarray:
    dist = np.full(factorial(n), UNSEEN, dtype=np.uint8)
    frontier = np.arange(n, dtype=np.uint8)[None, :]
    dist[perm_rank(frontier)] = 0
    depth = 0
    while len(frontier):
        depth += 1
        found = []
        for lo in range(0, len(frontier), chunk):
            block = frontier[lo : lo + chunk]
            for k in range(2, n + 1):
                child = block.copy()
                child[:, :k] = block[:, k - 1 :: -1]
                r = perm_rank(child)
                fresh = dist[r] == UNSEEN
                if not fresh.any():
                    continue
                r, idx = np.unique(r[fresh], return_index=True)
                dist[r] = depth
                found.append(child[fresh][idx])
        frontier = np.concatenate(found) if found else np.empty((0, n), dtype=np.uint8)
    return dist


@lru_cache(maxsize=None)
def pancake_table(n: int) -> np.ndarray:
    """Distance to the sorted stack for every permutation of ``n`` pancakes."""
    path = cache_dir() / f"pancake_{n}.npy"
    if path.exists():
        table = np.load(path)
        if table.shape == (factorial(n),):
            return table
    table = _pancake_bfs(n)
    try:
        path.parent.mkdir(parents=True, exist_ok=True)
        tmp = path.with_suffix(".tmp.npy")
        np.save(tmp, table)
        os.replace(tmp, path)
    except OSError:
        pass
    return table


def pancake_distance(state: Sequence[int]) -> int:
    """Exact flips needed to sort ``state`` (values 1..n)."""
    n = len(state)
    row = np.asarray(state, dtype=np.uint8)[None, :] - 1
    return int(pancake_table(n)[perm_rank(row)[0]])


@lru_cache(maxsize=None)
def _goal_sweep(kind: str, size: int) -> dict:
    if kind == "tiles":
        goal = tuple(range(size * size))
        space = TileSpace(goal, size, heuristic="zero")
    else:
        space = HanoiSpace((3,) * size, heuristic="zero")
        goal = space.goal
    return dijkstra(space, goal, BACKWARD)


def tiles_distance(state: Sequence[int], width: int) -> int:
    return _goal_sweep("tiles", width)[tuple(state)]


def hanoi_distance(state: Union[int, Sequence[int]], discs: Optional[int] = None) -> int:
    """Exact moves to stack every disc on the last peg; ``state`` is a peg tuple or a packed code."""
    if isinstance(state, int):
        if discs is None:
            raise ValueError("discs is required with a packed state")
        return _goal_sweep("hanoi", discs)[state]
    return _goal_sweep("hanoi", len(state))[encode(state)]


def _unwrap(space: StateSpace) -> StateSpace:
    while isinstance(space, HeuristicOverride):
        space = space.base
    return space


def pancake_distances(states: Sequence[Sequence[int]], relabel: Optional[Sequence[int]] = None) -> np.ndarray:
    """Table lookups for many stacks at once.

    Flips act on positions, so renaming pancakes preserves distances:
    with ``relabel[x]`` the 1-based position of ``x`` in a stack ``p``,
    ``d(p, q)`` is the distance of the relabelled ``q`` to the sorted stack.
    """
    rows = np.asarray(states, dtype=np.int64)
    if relabel is not None:
        rows = np.asarray(relabel, dtype=np.int64)[rows]
    table = pancake_table(rows.shape[1])
    return table[perm_rank(rows - 1)]


def _pancake_suboptimal(space: PancakeSpace, trace: SearchTrace) -> list[tuple]:
    bad = []
    label = [0] * (space.n + 1)
    for pos, x in enumerate(space.start):
        label[x] = pos + 1
    for d, relabel in ((FORWARD, label), (BACKWARD, None)):
        entries = [e for e in trace.expansions if e.direction is d]
        if not entries:
            continue
        exact = pancake_distances([e.state for e in entries], relabel)
        for e, true_g in zip(entries, exact.tolist()):
            if true_g != e.g:
                bad.append((d, e.state, e.g, true_g))
    return bad


def oracle_cost(space: StateSpace) -> Cost:
    """Exact C* for any space: puzzle tables when the goal is canonical,
    otherwise a Dijkstra sweep from start."""
    base = _unwrap(space)
    if isinstance(base, PancakeSpace):
        return pancake_distance(base.start)
    if isinstance(base, TileSpace) and base.width == base.height and base.goal == tuple(range(base.width**2)):
        return tiles_distance(base.start, base.width)
    if isinstance(base, HanoiSpace) and base.goal == (1 << (2 * base.discs)) - 1:
        return hanoi_distance(base.start, base.discs)
    if space.start == space.goal:
        return 0
    dist = dijkstra(space, space.start, FORWARD, target=space.goal)
    return dist.get(space.goal, INF)


def suboptimal_expansions(space: StateSpace, trace: SearchTrace) -> list[tuple]:
    """Expansions whose g differs from the true distance to/from the root.

    Returns ``(direction, state, g, exact)`` tuples; empty means every
    expanded path was optimal.  The sweeps only reach as far as the largest
    g expanded on each side.
    """
    base = _unwrap(space)
    if isinstance(base, PancakeSpace) and space.goal == base.goal:
        return _pancake_suboptimal(base, trace)
    bad = []
    for d, root in ((FORWARD, space.start), (BACKWARD, space.goal)):
        entries = [e for e in trace.expansions if e.direction is d]
        if not entries:
            continue
        reach = max(e.g for e in entries)
        exact = dijkstra(space, root, d, bound=reach, inclusive=True)
        for e in entries:
            true_g = exact.get(e.state)
            if true_g is None or true_g != e.g:
                bad.append((d, e.state, e.g, true_g))
    return bad
