"""Estimated escort travel cost to escort target positions.

The cost of bringing escort ``e`` to target position ``T`` is the Manhattan
distance plus two corrections: ``t`` (+2 when every monotone path is blocked
by a target item) and ``r`` (extra moves for reusing escorts when the
rectangle between ``T`` and the item's IO holds too few of them).  An escort
already standing on ``T`` still pays ``r``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import combinations

from .assignment import AssignmentPlanSet
from .escorts import existing_escorts_in_rectangle, target_map
from .grid import ESCORT, TARGET, GridState, Position, manhattan

INF = math.inf


@dataclass(frozen=True)
class DistanceEstimate:
    base: int
    t: int
    r: int

    @property
    def c(self) -> int:
        return self.base + self.t + self.r


@dataclass(frozen=True)
class QVector:
    targets: tuple[Position, ...]
    q: tuple[float, ...]

    @property
    def min_d(self) -> float:
        return min(self.q, default=INF)


def monotone_paths(a: Position, b: Position):
    """Yield every staircase path from ``a`` to ``b`` as a list of cells (``a`` excluded)."""
    dx, dy = b[0] - a[0], b[1] - a[1]
    sx = 1 if dx > 0 else -1
    sy = 1 if dy > 0 else -1
    n = abs(dx) + abs(dy)
    for xs in combinations(range(n), abs(dx)):
        xs = set(xs)
        x, y = a
        cells = []
        for i in range(n):
            if i in xs:
                x += sx
            else:
                y += sy
            cells.append(Position(x, y))
        yield cells


def correction_t_enumerated(state: GridState, e: Position, tpos: Position) -> int:
    """Reference version of :func:`correction_t`: lists all C(dx+dy, dx) paths."""
    for path in monotone_paths(e, tpos):
        if all(state.glyph(p) != TARGET for p in path):
            return 0
    return 2


def correction_t(state: GridState, e: Position, tpos: Position) -> int:
    x0, y0 = e
    x1, y1 = tpos
    sx = 1 if x1 >= x0 else -1
    sy = 1 if y1 >= y0 else -1
    nx, ny = abs(x1 - x0) + 1, abs(y1 - y0) + 1
    w, cells = state.width, state.cells
    xlo, xhi = min(x0, x1), max(x0, x1)
    ylo, yhi = min(y0, y1), max(y0, y1)
    if TARGET not in "".join(cells[y * w + xlo:y * w + xhi + 1] for y in range(ylo, yhi + 1)):
        return 0
    # reach[i] for the current row of the box, walking away from e
    reach = [False] * nx
    for j in range(ny):
        y = y0 + sy * j
        row = cells[y * w:(y + 1) * w]
        for i in range(nx):
            if i == 0 and j == 0:
                reach[0] = True
                continue
            if row[x0 + sx * i] == TARGET:
                reach[i] = False
            else:
                reach[i] = reach[i] or (i > 0 and reach[i - 1])
    return 0 if reach[-1] else 2


def reuse_shortfall(state: GridState, tpos: Position, io: Position, exclude: Position | None = None) -> int:
    """Escorts still missing to walk an item from ``tpos`` to ``io``; negative is surplus.

    ``exclude`` is an escort that is not counted even if it lies inside the
    rectangle (its capacity is spent reaching ``tpos``).
    """
    have = existing_escorts_in_rectangle(state, tpos, io)
    if exclude is not None and state.glyph(exclude) == ESCORT and _inside(exclude, tpos, io):
        have -= 1
    return manhattan(tpos, io) - have + 1


def _inside(p: Position, a: Position, b: Position) -> bool:
    return (min(a[0], b[0]) <= p[0] <= max(a[0], b[0])
            and min(a[1], b[1]) <= p[1] <= max(a[1], b[1]))


def _served(state: GridState, tpos: Position, plans: AssignmentPlanSet, tmap=None) -> dict[Position, list[Position]]:
    if tmap is None:
        tmap = target_map(state, plans)
    served: dict[Position, list[Position]] = {}
    for m, io in tmap.get(tpos, ()):
        served.setdefault(m, []).append(io)
    return served


def _max_turns(first_is_x: bool, dx: int, dy: int) -> int:
    """Turns available on a staircase walk of ``dx`` by ``dy`` cells.

    A reused escort that can follow a turn costs two extra moves; one that has
    to go around a straight stretch costs four.
    """
    a, b = (dx + 1, dy) if first_is_x else (dy + 1, dx)
    if a > b:
        return 2 * b
    return 2 * a - 1


def _reuse_cost(state: GridState, e: Position | None, tpos: Position, m: Position, io: Position) -> int:
    # escorts the item still lacks after ``e`` brings it onto ``tpos``
    k = max(0, reuse_shortfall(state, tpos, io, exclude=e) - 1)
    dx, dy = abs(tpos[0] - io[0]), abs(tpos[1] - io[1])
    turns = _max_turns(tpos[0] != m[0], dx, dy)
    return 2 * k + 2 * max(0, k - turns)


def correction_r(state: GridState, e: Position, tpos: Position, plans: AssignmentPlanSet,
                 served: dict[Position, list[Position]] | None = None) -> int:
    if served is None:
        served = _served(state, tpos, plans)
    k = -INF
    for m, ios in served.items():
        k = max(k, min(_reuse_cost(state, e, tpos, m, io) for io in ios))
    return max(0, k) if k != -INF else 0


def estimate(state: GridState, e: Position, tpos: Position, plans: AssignmentPlanSet,
             served: dict[Position, list[Position]] | None = None) -> DistanceEstimate:
    return DistanceEstimate(manhattan(e, tpos), correction_t(state, e, tpos),
                            correction_r(state, e, tpos, plans, served))


def distance_matrix(state: GridState, targets, plans: AssignmentPlanSet) -> list[list[float]]:
    """Fully materialized escort x target cost matrix (rows follow ``state.escorts``)."""
    targets = sorted(targets)
    rows = []
    for e in state.escorts:
        row = []
        for tp in targets:
            row.append(estimate(state, e, tp, plans).c)
        rows.append(row)
    return rows


def q_vector(state: GridState, targets, plans: AssignmentPlanSet) -> QVector:
    """Column minima of the distance matrix, computed without materializing it.

    Escorts are scanned nearest first; the scan stops once the Manhattan
    distance plus the smallest possible ``r`` cannot beat the current best.
    """
    targets = tuple(sorted(targets))
    escorts = state.escorts
    tmap = target_map(state, plans)
    q = []
    for tp in targets:
        served = _served(state, tp, plans, tmap)
        r_floor = correction_r(state, None, tp, plans, served)
        best = INF
        for dist, e in sorted((manhattan(e, tp), e) for e in escorts):
            if dist + r_floor >= best:
                break
            c = dist + correction_r(state, e, tp, plans, served)
            if c >= best:
                continue
            c += correction_t(state, e, tp)
            if c < best:
                best = c
        q.append(best)
    return QVector(targets, tuple(q))
