"""Seeded instance generators for every domain.

``generate(domain, seed, difficulty)`` is deterministic per seed.  The
``difficulty`` argument is the problem size: pancakes, board width, discs,
grid side or number of graph states.
"""

from __future__ import annotations

import random
from typing import Optional

from ..core import StateSpace, with_zero_heuristic
from .graphs import random_graph
from .grid import random_grid_instance
from .hanoi import HanoiSpace, random_hanoi
from .pancake import PancakeSpace, random_pancake
from .tiles import TileSpace, random_tiles

DOMAINS = ("pancake", "tiles", "hanoi", "grid", "maze", "random")

DEFAULT_DIFFICULTY = {
    "pancake": 10,
    "tiles": 3,
    "hanoi": 8,
    "grid": 32,
    "maze": 32,
    "random": 200,
}


def default_partition(discs: int) -> tuple[int, ...]:
    """Groups of at most 6 discs, e.g. 8 -> (6, 2) and 10 -> (6, 4)."""
    out = []
    left = discs
    while left > 0:
        out.append(min(6, left))
        left -= out[-1]
    return tuple(out)


def generate(
    domain: str,
    seed: int,
    difficulty: Optional[int] = None,
    heuristic: Optional[str] = None,
    k: int = 0,
    partition: Optional[tuple[int, ...]] = None,
    alpha: Optional[float] = None,
    density: float = 0.25,
) -> StateSpace:
    if domain not in DOMAINS:
        raise ValueError(f"unknown domain {domain!r}; choose from {DOMAINS}")
    size = difficulty or DEFAULT_DIFFICULTY[domain]
    rng = random.Random(f"{domain}:{size}:{seed}")
    zero = heuristic == "zero"
    if domain == "pancake":
        return PancakeSpace(random_pancake(rng, size), k=k, heuristic="zero" if zero else "gap")
    if domain == "tiles":
        return TileSpace(random_tiles(rng, size), size, heuristic="zero" if zero else "md")
    if domain == "hanoi":
        return HanoiSpace(
            random_hanoi(rng, size),
            partition or default_partition(size),
            heuristic="zero" if zero else "pdb",
        )
    if domain in ("grid", "maze"):
        return random_grid_instance(
            rng, size, size, density, maze=domain == "maze", heuristic="zero" if zero else "octile"
        )
    space = random_graph(rng.randrange(2**32), size, alpha_f=alpha, alpha_b=alpha)
    return with_zero_heuristic(space) if zero else space
