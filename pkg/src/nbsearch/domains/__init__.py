from .fixtures import adversarial_pair, worked_example_open_list
from .generators import DOMAINS, generate
from .graphs import ExplicitGraph, random_graph, scaled_oracle_heuristics
from .grid import GridMap, GridSpace, emit_map, octile_h, parse_map, parse_scen
from .hanoi import AdditivePDB, HanoiSpace, build_hanoi_pdb, decode as hanoi_decode, encode as hanoi_encode
from .pancake import PancakeSpace, gap_h
from .tiles import TileSpace, is_solvable, manhattan_h

__all__ = [
    "AdditivePDB",
    "DOMAINS",
    "ExplicitGraph",
    "GridMap",
    "GridSpace",
    "HanoiSpace",
    "PancakeSpace",
    "TileSpace",
    "build_hanoi_pdb",
    "hanoi_decode",
    "hanoi_encode",
    "emit_map",
    "adversarial_pair",
    "gap_h",
    "generate",
    "is_solvable",
    "manhattan_h",
    "octile_h",
    "parse_map",
    "parse_scen",
    "random_graph",
    "scaled_oracle_heuristics",
    "worked_example_open_list",
]
