"""Hand-built instances: the adversarial pair of three-state graphs and the
six-node open-list walkthrough used to pin down PrepareBest."""

from __future__ import annotations

from ..core import BACKWARD, FORWARD, SearchNode
from ..openlist import DualOpenList
from .graphs import ExplicitGraph


def adversarial_pair(which: str) -> ExplicitGraph:
    """Two 3-state instances with C* = 3 and zero heuristics.

    ``I1``: s->g 3, s->t 1, t->g 3.  ``I2`` mirrors the (s,t)/(t,g) costs.
    Expanding g backward alone settles I1; expanding s forward alone
    settles I2.
    """
    if which == "I1":
        edges = [("s", "g", 3), ("s", "t", 1), ("t", "g", 3)]
    elif which == "I2":
        edges = [("s", "g", 3), ("s", "t", 3), ("t", "g", 1)]
    else:
        raise ValueError(f"unknown fixture {which!r}; expected 'I1' or 'I2'")
    return ExplicitGraph(edges, "s", "g")


#: (name, f, g) for the forward and backward halves of the walkthrough
# g(A) + g(D) = 16 and g(B) + g(E) = 12 as in the walkthrough; g(D) > g(E)
# so that E, not D, heads ready_B once C_lb reaches 12.
WORKED_EXAMPLE_FORWARD = (("A", 9, 7), ("B", 12, 4), ("C", 13, 2))
WORKED_EXAMPLE_BACKWARD = (("D", 9, 9), ("E", 12, 8), ("F", 13, 2))


def worked_example_open_list() -> DualOpenList:
    """Open list holding A, B, C (forward) and D, E, F (backward) in waiting.

    With C_lb starting at 0, PrepareBest must raise C_lb to 9, stage A and
    D, find c(A) + c(D) = 16 too large, raise to 12 and settle on (B, E).
    """
    ol = DualOpenList()
    for direction, rows in ((FORWARD, WORKED_EXAMPLE_FORWARD), (BACKWARD, WORKED_EXAMPLE_BACKWARD)):
        for name, f, g in rows:
            ol.add(SearchNode(name, direction, g, f - g))
    return ol
