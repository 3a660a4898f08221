"""Escort target positions and required-escort counts."""

from __future__ import annotations

from dataclasses import dataclass

from .assignment import AssignmentPlan, AssignmentPlanSet
from .grid import ESCORT, TARGET, GridState, Position, manhattan


@dataclass(frozen=True)
class EscortDemand:
    per_item: tuple[int, ...]

    @property
    def total(self) -> int:
        return sum(self.per_item)


def existing_escorts_in_rectangle(state: GridState, a: Position, b: Position) -> int:
    """Escorts inside the closed bounding box of ``a`` and ``b``."""
    x0, x1 = sorted((a[0], b[0]))
    y0, y1 = sorted((a[1], b[1]))
    n = 0
    for e in state.escorts:
        if x0 <= e[0] <= x1 and y0 <= e[1] <= y1:
            n += 1
    return n


def required_escorts(state: GridState, item: Position, io: Position) -> int:
    return max(0, manhattan(item, io) - existing_escorts_in_rectangle(state, item, io))


def escort_demand(state: GridState, plan: AssignmentPlan) -> EscortDemand:
    return EscortDemand(tuple(required_escorts(state, m, io) for m, io in plan.pairs(state)))


def total_required_escorts(state: GridState, plan: AssignmentPlan) -> int:
    return escort_demand(state, plan).total


def et_s_min(state: GridState, plans: AssignmentPlanSet) -> int:
    if not state.targets:
        return 0
    return min(total_required_escorts(state, p) for p in plans.plans)


def shortens(item: Position, p: Position, io: Position) -> bool:
    """Moving ``item`` onto its neighbour ``p`` brings it closer to ``io``."""
    return ((io[0] - item[0]) * (p[0] - item[0]) > 0
            or (io[1] - item[1]) * (p[1] - item[1]) > 0)


def target_map(state: GridState, plans: AssignmentPlanSet) -> dict[Position, list[tuple[Position, Position]]]:
    """Escort target position -> list of (adjacent item, target IO) it serves.

    Positions holding another target item are skipped.
    """
    out: dict[Position, list[tuple[Position, Position]]] = {}
    ios = state.io_positions
    for j, m in enumerate(state.targets):
        for k in plans.target_ios(j):
            io = ios[k]
            for p in m.neighbors():
                if not state.in_bounds(p) or state.glyph(p) == TARGET:
                    continue
                if shortens(m, p, io):
                    out.setdefault(p, []).append((m, io))
    return out


def escort_target_positions(state: GridState, plans: AssignmentPlanSet) -> set[Position]:
    return set(target_map(state, plans))


def escorts_on_targets(state: GridState, plans: AssignmentPlanSet) -> list[Position]:
    return [p for p in target_map(state, plans) if state.glyph(p) == ESCORT]
