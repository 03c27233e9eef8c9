"""NBS open list: per-direction waiting (by f) and ready (by g) queues.

``C_lb`` starts at 0 and only ever rises.  :meth:`DualOpenList.prepare_best`
raises it to the smallest pair lower bound over ``Open_F x Open_B`` without
materialising the cross product; the pair to expand is then the front of
``ready_F`` and ``ready_B``.

Removal is lazy: a heap entry is live only while its node is still the
registered member for its state.
"""

from __future__ import annotations

from heapq import heappop, heappush
from itertools import count
from math import log2
from typing import Optional

from .core import BACKWARD, FORWARD, INF, Cost, Direction, SearchNode, State


def lb(node_f: SearchNode, node_b: SearchNode) -> Cost:
    """Lower bound on any solution extending the pair ``(node_f, node_b)``."""
    return max(node_f.f, node_b.f, node_f.g + node_b.g)


class DualOpenList:
    def __init__(self):
        self.waiting: dict[Direction, list] = {FORWARD: [], BACKWARD: []}
        self.ready: dict[Direction, list] = {FORWARD: [], BACKWARD: []}
        self.members: dict[Direction, dict[State, SearchNode]] = {FORWARD: {}, BACKWARD: {}}
        self.c_lb: Cost = 0
        #: every value C_lb has taken, in order (starts with 0)
        self.c_lb_history: list = [0]
        self.ops = 0
        self.op_cost = 0.0
        self.insertions = 0
        self._seq = count()

    # --- bookkeeping -------------------------------------------------------

    def _charge(self, heap: list) -> None:
        self.ops += 1
        self.op_cost += log2(len(heap) + 2)

    def __len__(self) -> int:
        return len(self.members[FORWARD]) + len(self.members[BACKWARD])

    def size(self, direction: Direction) -> int:
        return len(self.members[direction])

    def get(self, direction: Direction, state: State) -> Optional[SearchNode]:
        return self.members[direction].get(state)

    def add(self, node: SearchNode) -> None:
        """Insert into waiting; replaces any node registered for the same state."""
        d = node.direction
        self.members[d][node.state] = node
        heap = self.waiting[d]
        self.ops += 1
        self.op_cost += log2(len(heap) + 2)
        heappush(heap, (node.f, -node.g, node.state, next(self._seq), node))
        self.insertions += 1

    def remove(self, node: SearchNode) -> None:
        m = self.members[node.direction]
        if m.get(node.state) is node:
            del m[node.state]

    def _front(self, heap: list, members: dict) -> Optional[SearchNode]:
        while heap:
            self.ops += 1
            self.op_cost += 1
            node = heap[0][-1]
            if members.get(node.state) is node:
                return node
            self._charge(heap)
            heappop(heap)
        return None

    def _move_to_ready(self, d: Direction) -> None:
        heap = self.waiting[d]
        self._charge(heap)
        entry = heappop(heap)
        node = entry[-1]
        ready = self.ready[d]
        self._charge(ready)
        heappush(ready, (node.g, node.state, entry[3], node))

    def waiting_front(self, d: Direction) -> Optional[SearchNode]:
        return self._front(self.waiting[d], self.members[d])

    def ready_front(self, d: Direction) -> Optional[SearchNode]:
        return self._front(self.ready[d], self.members[d])

    def _set_c_lb(self, value: Cost) -> None:
        if value != self.c_lb:
            self.c_lb = value
            self.c_lb_history.append(value)

    # --- selection ---------------------------------------------------------

    def prepare_best(self) -> bool:
        """Raise C_lb to lbmin and stage the best pair at the ready fronts.

        Returns False when one direction has nothing left in either queue.
        """
        front = self._front
        wait_f, wait_b = self.waiting[FORWARD], self.waiting[BACKWARD]
        ready_f, ready_b = self.ready[FORWARD], self.ready[BACKWARD]
        mem_f, mem_b = self.members[FORWARD], self.members[BACKWARD]
        for d, heap, mem in ((FORWARD, wait_f, mem_f), (BACKWARD, wait_b, mem_b)):
            while True:
                w = front(heap, mem)
                if w is None or not w.f < self.c_lb:
                    break
                self._move_to_ready(d)
        while True:
            rf = front(ready_f, mem_f)
            rb = front(ready_b, mem_b)
            wf = front(wait_f, mem_f)
            wb = front(wait_b, mem_b)
            if (rf is None and wf is None) or (rb is None and wb is None):
                return False
            c_lb = self.c_lb
            ready_sum = INF if rf is None or rb is None else rf.g + rb.g
            if ready_sum <= c_lb:
                return True
            moved = False
            if wf is not None and wf.f <= c_lb:
                self._move_to_ready(FORWARD)
                moved = True
            if wb is not None and wb.f <= c_lb:
                self._move_to_ready(BACKWARD)
                moved = True
            if not moved:
                self._set_c_lb(
                    min(
                        wf.f if wf is not None else INF,
                        wb.f if wb is not None else INF,
                        ready_sum,
                    )
                )

    def pop_pair(self) -> tuple[SearchNode, SearchNode]:
        """Remove and return the staged pair; call after ``prepare_best``."""
        pair = []
        for d in (FORWARD, BACKWARD):
            node = self.ready_front(d)
            heap = self.ready[d]
            self._charge(heap)
            heappop(heap)
            del self.members[d][node.state]
            pair.append(node)
        return pair[0], pair[1]
