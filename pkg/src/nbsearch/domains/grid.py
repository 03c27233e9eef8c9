"""Octile grid pathfinding in the standard benchmark map/scenario formats.

States are cell indices ``y * width + x``.  Moves are 8-connected; a
diagonal step needs both orthogonally adjacent cells free (no corner
cutting).  Costs are exact :class:`OctileCost` values.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Optional

from ..core import OctileCost, StateSpace, with_zero_heuristic

PASSABLE_GLYPHS = frozenset(".G")
BLOCKED_GLYPHS = frozenset("@OTW")

CARDINAL = OctileCost(1, 0)
DIAGONAL = OctileCost(0, 1)


class MapFormatError(ValueError):
    pass


@dataclass(frozen=True)
class GridMap:
    width: int
    height: int
    rows: tuple[str, ...]

    @property
    def passable(self) -> tuple[bool, ...]:
        return tuple(ch in PASSABLE_GLYPHS for row in self.rows for ch in row)

    def is_passable(self, x: int, y: int) -> bool:
        return 0 <= x < self.width and 0 <= y < self.height and self.rows[y][x] in PASSABLE_GLYPHS

    def index(self, x: int, y: int) -> int:
        return y * self.width + x

    def cell(self, index: int) -> tuple[int, int]:
        return index % self.width, index // self.width

    def open_cells(self) -> list[int]:
        return [i for i, p in enumerate(self.passable) if p]

    @classmethod
    def from_rows(cls, rows: list[str]) -> "GridMap":
        return cls(len(rows[0]) if rows else 0, len(rows), tuple(rows))


def parse_map(text: str) -> GridMap:
    lines = text.splitlines()
    header = {}
    i = 0
    while i < len(lines):
        line = lines[i].strip()
        i += 1
        if not line:
            continue
        if line == "map":
            break
        parts = line.split()
        if len(parts) != 2:
            raise MapFormatError(f"bad header line {line!r}")
        header[parts[0]] = parts[1]
    else:
        raise MapFormatError("missing 'map' line")
    if header.get("type") != "octile":
        raise MapFormatError(f"unsupported map type {header.get('type')!r}")
    try:
        height = int(header["height"])
        width = int(header["width"])
    except (KeyError, ValueError) as exc:
        raise MapFormatError("header needs integer height and width") from exc
    rows = [ln.rstrip() for ln in lines[i : i + height]]
    if len(rows) != height:
        raise MapFormatError(f"expected {height} rows, got {len(rows)}")
    for y, row in enumerate(rows):
        if len(row) != width:
            raise MapFormatError(f"row {y} has length {len(row)}, expected {width}")
        bad = set(row) - PASSABLE_GLYPHS - BLOCKED_GLYPHS
        if bad:
            raise MapFormatError(f"unknown glyph(s) {sorted(bad)} in row {y}")
    return GridMap(width, height, tuple(rows))


def emit_map(grid: GridMap) -> str:
    head = f"type octile\nheight {grid.height}\nwidth {grid.width}\nmap\n"
    return head + "".join(row + "\n" for row in grid.rows)


def octile_h(a: tuple[int, int], b: tuple[int, int]) -> OctileCost:
    dx = abs(a[0] - b[0])
    dy = abs(a[1] - b[1])
    lo, hi = min(dx, dy), max(dx, dy)
    return OctileCost(hi - lo, lo)


def _neighbors(grid: GridMap) -> list[list[tuple[int, OctileCost]]]:
    out = []
    w = grid.width
    for y in range(grid.height):
        for x in range(w):
            adj = []
            if grid.is_passable(x, y):
                for dx in (-1, 0, 1):
                    for dy in (-1, 0, 1):
                        if dx == 0 and dy == 0:
                            continue
                        nx, ny = x + dx, y + dy
                        if not grid.is_passable(nx, ny):
                            continue
                        if dx and dy:
                            if not (grid.is_passable(x + dx, y) and grid.is_passable(x, y + dy)):
                                continue
                            adj.append((ny * w + nx, DIAGONAL))
                        else:
                            adj.append((ny * w + nx, CARDINAL))
            out.append(adj)
    return out


class GridSpace(StateSpace):
    """Undirected octile grid; the reverse relation equals the forward one."""

    min_edge_cost = CARDINAL

    def __init__(self, grid: GridMap, start: tuple[int, int], goal: tuple[int, int]):
        for name, (x, y) in (("start", start), ("goal", goal)):
            if not grid.is_passable(x, y):
                raise ValueError(f"{name} {(x, y)} is not a passable cell")
        self.grid = grid
        self.start = grid.index(*start)
        self.goal = grid.index(*goal)
        self._adj = _neighbors(grid)
        w = grid.width
        self._xy = [(i % w, i // w) for i in range(w * grid.height)]

    def expand_forward(self, state):
        return self._adj[state]

    expand_backward = expand_forward

    def h_forward(self, state):
        return octile_h(self._xy[state], self._xy[self.goal])

    def h_backward(self, state):
        return octile_h(self._xy[state], self._xy[self.start])


# --- scenarios -------------------------------------------------------------


@dataclass(frozen=True)
class ScenarioEntry:
    bucket: int
    map_name: str
    width: int
    height: int
    sx: int
    sy: int
    gx: int
    gy: int
    optimal: float


def parse_scen(text: str) -> list[ScenarioEntry]:
    out = []
    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.strip()
        if not line or line.startswith("version"):
            continue
        parts = line.split()
        if len(parts) != 9:
            raise MapFormatError(f"scenario line {lineno}: expected 9 fields, got {len(parts)}")
        b, m, w, h, sx, sy, gx, gy, opt = parts
        out.append(
            ScenarioEntry(int(b), m, int(w), int(h), int(sx), int(sy), int(gx), int(gy), float(opt))
        )
    return out


def emit_scen(entries: list[ScenarioEntry]) -> str:
    lines = ["version 1"]
    for e in entries:
        lines.append(
            f"{e.bucket}\t{e.map_name}\t{e.width}\t{e.height}\t{e.sx}\t{e.sy}\t{e.gx}\t{e.gy}\t{e.optimal:.8f}"
        )
    return "\n".join(lines) + "\n"


def scenario_space(grid: GridMap, entry: ScenarioEntry) -> GridSpace:
    if (entry.width, entry.height) != (grid.width, grid.height):
        raise MapFormatError("scenario map size does not match the map file")
    return GridSpace(grid, (entry.sx, entry.sy), (entry.gx, entry.gy))


# --- generators ------------------------------------------------------------


def _component(grid: GridMap, origin: int) -> set[int]:
    adj = _neighbors(grid)
    seen = {origin}
    stack = [origin]
    while stack:
        u = stack.pop()
        for v, _ in adj[u]:
            if v not in seen:
                seen.add(v)
                stack.append(v)
    return seen


def random_grid(rng: random.Random, width: int = 32, height: int = 32, density: float = 0.25) -> GridMap:
    rows = [
        "".join("@" if rng.random() < density else "." for _ in range(width)) for _ in range(height)
    ]
    return GridMap(width, height, tuple(rows))


def random_maze(rng: random.Random, width: int = 32, height: int = 32) -> GridMap:
    """Depth-first carved maze with one-cell corridors on the odd lattice."""
    cells = [["@"] * width for _ in range(height)]
    xs = range(1, width - 1, 2)
    ys = range(1, height - 1, 2)
    sx, sy = rng.choice(xs), rng.choice(ys)
    cells[sy][sx] = "."
    stack = [(sx, sy)]
    while stack:
        x, y = stack[-1]
        options = []
        for dx, dy in ((2, 0), (-2, 0), (0, 2), (0, -2)):
            nx, ny = x + dx, y + dy
            if 1 <= nx < width - 1 and 1 <= ny < height - 1 and cells[ny][nx] == "@":
                options.append((nx, ny, dx, dy))
        if not options:
            stack.pop()
            continue
        nx, ny, dx, dy = rng.choice(options)
        cells[y + dy // 2][x + dx // 2] = "."
        cells[ny][nx] = "."
        stack.append((nx, ny))
    return GridMap(width, height, tuple("".join(r) for r in cells))


def random_grid_instance(
    rng: random.Random,
    width: int = 32,
    height: int = 32,
    density: float = 0.25,
    maze: bool = False,
    heuristic: str = "octile",
    grid: Optional[GridMap] = None,
):
    """Random start/goal pair in one connected component of a (random) map."""
    while True:
        g = grid
        if g is None:
            g = random_maze(rng, width, height) if maze else random_grid(rng, width, height, density)
        cells = g.open_cells()
        if len(cells) < 2:
            continue
        s = rng.choice(cells)
        comp = sorted(_component(g, s) - {s})
        if not comp:
            continue
        t = rng.choice(comp)
        space = GridSpace(g, g.cell(s), g.cell(t))
        if heuristic == "zero":
            return with_zero_heuristic(space)
        return space
