"""Exact minimum-move search for small instances, and the gap metric.

States are packed into two bitmasks (escort cells, target cells); other items
are interchangeable and need no encoding.  The search is A* with a
consistent lower bound, so the first time a goal is popped its depth is
optimal.
"""

from __future__ import annotations

import heapq
from collections import deque
from dataclasses import dataclass

from .assignment import InfeasibleError
from .grid import GridState


class OracleExhausted(Exception):
    """The search hit its state or depth budget before proving an optimum."""

    def __init__(self, expanded: int, bound: int):
        super().__init__(f"search exhausted after {expanded} states (best bound {bound})")
        self.expanded = expanded
        self.bound = bound


@dataclass(frozen=True)
class OracleLimits:
    max_expanded_states: int = 2_000_000
    max_depth: int = 400

    def __post_init__(self):
        if self.max_expanded_states < 1 or self.max_depth < 1:
            raise ValueError("oracle limits must be positive")


class _Board:
    """Precomputed geometry shared by both searches."""

    def __init__(self, state: GridState):
        w, h = state.width, state.height
        self.n = n = w * h
        self.coords = [(i % w, i // w) for i in range(n)]
        self.nbrs = []
        for i in range(n):
            x, y = self.coords[i]
            nb = []
            for nx, ny in ((x, y - 1), (x, y + 1), (x - 1, y), (x + 1, y)):
                if 0 <= nx < w and 0 <= ny < h:
                    nb.append(ny * w + nx)
            self.nbrs.append(tuple(nb))
        self.io_mask = 0
        for x, y in state.io_positions:
            self.io_mask |= 1 << (y * w + x)
        ios = [(x, y) for x, y in state.io_positions]
        # nearest-IO distance per cell; retrieval frees IOs, so this is the per-item floor
        self.io_dist = [min((abs(x - a) + abs(y - b) for a, b in ios), default=0)
                        for x, y in self.coords]

    def encode(self, state: GridState) -> tuple[int, int]:
        esc = tgt = 0
        for i, c in enumerate(state.cells):
            if c == ".":
                esc |= 1 << i
            elif c == "T":
                tgt |= 1 << i
        return esc, tgt

    def successors(self, esc: int, tgt: int):
        io_mask, nbrs = self.io_mask, self.nbrs
        m = esc
        while m:
            low = m & -m
            i = low.bit_length() - 1
            m ^= low
            for j in nbrs[i]:
                bj = 1 << j
                if esc & bj:
                    continue
                ne = (esc ^ low) | bj
                nt = tgt
                if tgt & bj:
                    nt = tgt ^ bj
                    if io_mask & low:
                        # target lands on an IO: retrieved, cell becomes an escort
                        ne |= low
                    else:
                        nt |= low
                yield ne, nt

    def lower_bound(self, esc: int, tgt: int) -> int:
        """Item moves needed plus escort moves before the first item move.

        Every item move shifts one item by one cell, so the summed nearest-IO
        distance is a floor on item moves.  Before any item can move some
        escort must stand next to some target item.
        """
        if not tgt:
            return 0
        coords, io_dist = self.coords, self.io_dist
        total = 0
        items = []
        m = tgt
        while m:
            low = m & -m
            i = low.bit_length() - 1
            m ^= low
            total += io_dist[i]
            items.append(coords[i])
        near = 1 << 30
        m = esc
        while m:
            low = m & -m
            ex, ey = coords[low.bit_length() - 1]
            m ^= low
            for ix, iy in items:
                d = abs(ex - ix) + abs(ey - iy)
                if d < near:
                    near = d
        return total + max(0, near - 1)


def _check(state: GridState):
    if len(state.targets) > len(state.io_positions):
        raise InfeasibleError(f"{len(state.targets)} target items but only {len(state.io_positions)} IOs")


def optimal_steps(initial: GridState, limits: OracleLimits | None = None) -> int:
    """Minimum number of escort moves that retrieves every target item.

    Raises :class:`OracleExhausted` rather than returning an approximation.
    """
    limits = limits or OracleLimits()
    _check(initial)
    board = _Board(initial)
    start = board.encode(initial.swept())
    if not start[1]:
        return 0
    if not start[0]:
        raise OracleExhausted(0, board.lower_bound(*start))
    lb = board.lower_bound
    g_best = {start: 0}
    heap = [(lb(*start), 0, start)]
    expanded = 0
    while heap:
        f, neg_g, s = heapq.heappop(heap)
        g = -neg_g
        if g != g_best.get(s):
            continue
        if not s[1]:
            return g
        expanded += 1
        if expanded > limits.max_expanded_states:
            raise OracleExhausted(expanded, f)
        if g >= limits.max_depth:
            continue
        g2 = g + 1
        for nxt in board.successors(*s):
            old = g_best.get(nxt)
            if old is not None and old <= g2:
                continue
            g_best[nxt] = g2
            # ties on f prefer deeper nodes
            heapq.heappush(heap, (g2 + lb(*nxt), -g2, nxt))
    raise OracleExhausted(expanded, limits.max_depth)


def bfs_steps(initial: GridState, limits: OracleLimits | None = None) -> int:
    """Plain breadth-first search; the reference the A* search is checked against."""
    limits = limits or OracleLimits()
    _check(initial)
    board = _Board(initial)
    start = board.encode(initial.swept())
    if not start[1]:
        return 0
    seen = {start}
    frontier = deque([(start, 0)])
    while frontier:
        s, g = frontier.popleft()
        if g >= limits.max_depth:
            continue
        for nxt in board.successors(*s):
            if nxt in seen:
                continue
            if not nxt[1]:
                return g + 1
            seen.add(nxt)
            if len(seen) > limits.max_expanded_states:
                raise OracleExhausted(len(seen), g)
            frontier.append((nxt, g + 1))
    raise OracleExhausted(len(seen), limits.max_depth)


def gap(pairs) -> float:
    """Mean relative excess of heuristic over optimal steps, in percent."""
    pairs = list(pairs)
    if not pairs:
        return 0.0
    total = 0.0
    for heur, opt in pairs:
        if opt <= 0:
            raise ValueError("optimal step counts must be positive")
        if heur < opt:
            raise ValueError(f"heuristic ({heur}) below optimum ({opt})")
        total += 100.0 * (heur - opt) / opt
    return total / len(pairs)
