import itertools
import random

import pytest

from nbsearch import BACKWARD, FORWARD, SearchNode, astar_search, dijkstra, nbs_search
from nbsearch.core import InconsistentHeuristicError, SearchTrace
from nbsearch.domains import ExplicitGraph, adversarial_pair, generate
from nbsearch.mx import (
    MismatchedInstance,
    MustExpandGraph,
    build_gmx,
    dump_gmx,
    grade_trace,
    load_gmx,
    max_bipartite_matching,
    min_vertex_cover,
    pair_parity_ok,
)


def brute_cover_size(adj):
    left = sorted(adj, key=repr)
    edges = [(u, v) for u in left for v in adj[u]]
    if not edges:
        return 0
    right = sorted({v for _, v in edges}, key=repr)
    verts = [("F", u) for u in left] + [("B", v) for v in right]
    for k in range(len(verts) + 1):
        for pick in itertools.combinations(verts, k):
            s = set(pick)
            if all(("F", u) in s or ("B", v) in s for u, v in edges):
                return k
    raise AssertionError("unreachable")


def brute_cover_size_small_side(adj):
    """Exhaustive over subsets of the smaller side, completing with the other."""
    left = list(adj)
    right = sorted({v for vs in adj.values() for v in vs})
    best = len(left) + len(right)
    if len(left) <= len(right):
        for mask in range(1 << len(left)):
            chosen = {left[i] for i in range(len(left)) if mask >> i & 1}
            need = {v for u in left if u not in chosen for v in adj[u]}
            best = min(best, len(chosen) + len(need))
    else:
        nbr = {v: set() for v in right}
        for u, vs in adj.items():
            for v in vs:
                nbr[v].add(u)
        for mask in range(1 << len(right)):
            chosen = {right[i] for i in range(len(right)) if mask >> i & 1}
            need = {u for v in right if v not in chosen for u in nbr[v]}
            best = min(best, len(chosen) + len(need))
    return best


def random_bipartite(rng, max_side):
    n_l = rng.randint(1, max_side)
    n_r = rng.randint(1, max_side)
    p = rng.uniform(0.02, 0.4)
    return {u: {v for v in range(n_r) if rng.random() < p} for u in range(n_l)}


class TestCover:
    def test_single_edge(self):
        assert len(min_vertex_cover({"a": {"x"}})) == 1

    def test_complete_2x3(self):
        adj = {u: {"x", "y", "z"} for u in ("a", "b")}
        cover = min_vertex_cover(adj)
        assert cover == {("F", "a"), ("F", "b")}

    def test_cover_is_a_cover(self):
        rng = random.Random(5)
        for _ in range(50):
            adj = random_bipartite(rng, 12)
            cover = min_vertex_cover(adj)
            for u, vs in adj.items():
                for v in vs:
                    assert ("F", u) in cover or ("B", v) in cover

    def test_matches_brute_force_small(self):
        rng = random.Random(11)
        for _ in range(40):
            adj = random_bipartite(rng, 5)
            assert len(min_vertex_cover(adj)) == brute_cover_size(adj)

    def test_matching_size_equals_cover_size(self):
        rng = random.Random(2)
        for _ in range(30):
            adj = random_bipartite(rng, 14)
            m = max_bipartite_matching(adj)
            assert len(set(m.values())) == len(m)
            assert all(v in adj[u] for u, v in m.items())
            assert len(m) == brute_cover_size_small_side(adj)


class TestBuild:
    def test_single_edge_instance(self):
        g = build_gmx(ExplicitGraph([("s", "g", 1)], "s", "g"))
        assert set(g.edges()) == {("s", "g")}
        assert len(min_vertex_cover(g)) == 1

    def test_fixture_i1(self):
        g = build_gmx(adversarial_pair("I1"))
        assert g.c_star == 3
        assert set(g.edges()) == {("s", "g"), ("t", "g")}
        assert min_vertex_cover(g) == {("B", "g")}

    def test_perfect_heuristic_has_no_edges(self):
        base = generate("random", 0, heuristic="zero")
        h_f = dijkstra(base, base.goal, BACKWARD)
        h_b = dijkstra(base, base.start, FORWARD)
        space = ExplicitGraph(
            [(u, v, c) for (u, v), c in base.base.edges.items()], base.start, base.goal, h_f, h_b
        )
        assert build_gmx(space).n_edges == 0

    def test_matches_pairwise_definition(self):
        for seed in range(5):
            space = generate("random", seed, difficulty=40)
            g = build_gmx(space)
            d_f = dijkstra(space, space.start)
            d_b = dijkstra(space, space.goal, BACKWARD)
            c = g.c_star
            expect = set()
            for u, du in d_f.items():
                for v, dv in d_b.items():
                    if max(du + space.h_forward(u), dv + space.h_backward(v), du + dv) < c:
                        expect.add((u, v))
            assert set(g.edges()) == expect

    def test_inconsistent_rejected(self, reopen_graph):
        with pytest.raises(InconsistentHeuristicError):
            build_gmx(reopen_graph)


class TestGrade:
    def test_nbs_on_i1(self):
        space = adversarial_pair("I1")
        g = build_gmx(space)
        rep = grade_trace(nbs_search(space).trace, g)
        assert rep.is_cover and rep.vc_size == 1
        assert rep.algorithm_cover_size == 2 and rep.ratio == 2

    def test_astar_on_i1(self):
        space = adversarial_pair("I1")
        rep = grade_trace(astar_search(space).trace, build_gmx(space))
        assert rep.is_cover

    def test_empty_graph(self):
        g = MustExpandGraph(set(), set(), {}, 0)
        rep = grade_trace(SearchTrace(), g)
        assert rep.vc_size == 0 and rep.is_cover and rep.ratio == 0

    def test_wrong_instance(self):
        g = build_gmx(adversarial_pair("I1"))
        trace = SearchTrace()
        trace.record(FORWARD, SearchNode("elsewhere", FORWARD, 0, 0), 0)
        with pytest.raises(MismatchedInstance):
            grade_trace(trace, g)

    def test_pair_parity(self):
        space = generate("random", 2)
        res = nbs_search(space)
        assert pair_parity_ok(res.trace, res.cost)


def test_text_round_trip():
    space = generate("random", 4, difficulty=60)
    g = build_gmx(space)
    cover = min_vertex_cover(g)
    text = dump_gmx(g, cover)
    g2, cover2 = load_gmx(text)
    assert g2.c_star == g.c_star
    assert set(g2.edges()) == set(g.edges())
    assert cover2 == cover
    assert dump_gmx(g2, cover2) == text


def test_text_round_trip_tuple_states():
    space = generate("pancake", 1, difficulty=6, k=2)
    g = build_gmx(space)
    g2, _ = load_gmx(dump_gmx(g))
    assert set(g2.edges()) == set(g.edges())


def test_load_rejects_garbage():
    with pytest.raises(ValueError):
        load_gmx("hello\n")
