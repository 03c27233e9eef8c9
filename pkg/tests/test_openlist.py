from nbsearch import FORWARD, BACKWARD, DualOpenList, SearchNode, lb
from nbsearch.domains import worked_example_open_list
from nbsearch.domains.fixtures import WORKED_EXAMPLE_BACKWARD, WORKED_EXAMPLE_FORWARD


def node(state, direction, f, g):
    return SearchNode(state, direction, g, f - g)


class TestLowerBound:
    def test_roots(self):
        assert lb(node("s", FORWARD, 0, 0), node("g", BACKWARD, 0, 0)) == 0

    def test_sum_dominates(self):
        assert lb(node("a", FORWARD, 9, 8), node("d", BACKWARD, 9, 8)) == 16

    def test_f_dominates(self):
        assert lb(node("a", FORWARD, 12, 5), node("d", BACKWARD, 10, 7)) == 12


class TestWalkthrough:
    def test_c_lb_sequence_and_pair(self):
        ol = worked_example_open_list()
        assert ol.prepare_best()
        assert ol.c_lb_history == [0, 9, 12]
        u, v = ol.pop_pair()
        assert (u.state, v.state) == ("B", "E")

    def test_staging(self):
        ol = worked_example_open_list()
        ol.prepare_best()
        # A, B and D, E end up in ready; C and F stay in waiting
        assert ol.waiting_front(FORWARD).state == "C"
        assert ol.waiting_front(BACKWARD).state == "F"
        assert ol.ready_front(FORWARD).state == "B"
        assert ol.ready_front(BACKWARD).state == "E"

    def test_walkthrough_values(self):
        f = {n: (fv, g) for n, fv, g in WORKED_EXAMPLE_FORWARD}
        b = {n: (fv, g) for n, fv, g in WORKED_EXAMPLE_BACKWARD}
        assert f["A"][1] + b["D"][1] == 16
        assert f["B"][1] + b["E"][1] == 12


def test_exhausted_side():
    ol = DualOpenList()
    ol.add(node("g", BACKWARD, 3, 0))
    assert ol.prepare_best() is False


def test_single_pair_raises_to_f():
    ol = DualOpenList()
    ol.add(node("s", FORWARD, 5, 0))
    ol.add(node("g", BACKWARD, 5, 0))
    assert ol.prepare_best()
    assert ol.c_lb == 5


def test_replacement_hides_stale_entry():
    ol = DualOpenList()
    old = node("x", FORWARD, 4, 3)
    ol.add(old)
    ol.add(node("x", FORWARD, 3, 2))
    assert ol.size(FORWARD) == 1
    assert ol.waiting_front(FORWARD).g == 2
    ol.remove(old)  # no-op: no longer the member
    assert ol.get(FORWARD, "x").g == 2


def test_waiting_ties_prefer_larger_g():
    ol = DualOpenList()
    ol.add(node("p", FORWARD, 5, 1))
    ol.add(node("q", FORWARD, 5, 4))
    assert ol.waiting_front(FORWARD).state == "q"


def test_c_lb_never_decreases():
    ol = DualOpenList()
    ol.add(node("a", FORWARD, 6, 0))
    ol.add(node("b", BACKWARD, 6, 0))
    ol.prepare_best()
    ol.pop_pair()
    ol.add(node("c", FORWARD, 2, 1))
    ol.add(node("d", BACKWARD, 2, 1))
    ol.prepare_best()
    assert ol.c_lb == 6
    assert ol.c_lb_history == sorted(ol.c_lb_history)
