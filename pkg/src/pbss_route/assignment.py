"""Distribution of target IOs to target items.

Items are matched injectively to IOs so that the summed Manhattan distance
is minimal.  Every minimizing assignment is kept, because a target item may
legitimately head for more than one IO.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import permutations

from .grid import GridState, manhattan


class InfeasibleError(ValueError):
    """More target items than IO cells."""


@dataclass(frozen=True, order=True)
class AssignmentPlan:
    """``mapping[j]`` is the IO index assigned to the j-th target item."""

    mapping: tuple[int, ...]

    def pairs(self, state: GridState):
        return [(state.targets[j], state.io_positions[k]) for j, k in enumerate(self.mapping)]


@dataclass(frozen=True)
class AssignmentPlanSet:
    d_s_min: int
    plans: tuple[AssignmentPlan, ...]

    @property
    def h(self) -> int:
        return len(self.plans)

    def target_ios(self, j: int) -> tuple[int, ...]:
        """Sorted IO indexes assigned to item ``j`` by at least one plan."""
        return tuple(sorted({p.mapping[j] for p in self.plans}))


def plan_distance(state: GridState, plan: AssignmentPlan) -> int:
    targets, ios = state.targets, state.io_positions
    if len(plan.mapping) != len(targets):
        raise IndexError("plan does not cover the live target items")
    total = 0
    for j, k in enumerate(plan.mapping):
        if not 0 <= k < len(ios):
            raise IndexError(f"IO index {k} out of range")
        total += manhattan(targets[j], ios[k])
    return total


def optimal_assignments(state: GridState) -> AssignmentPlanSet:
    """All injective item->IO maps of minimal total distance, sorted."""
    targets, ios = state.targets, state.io_positions
    n = len(targets)
    if n > len(ios):
        raise InfeasibleError(f"{n} target items but only {len(ios)} IOs")
    cost = [[manhattan(t, io) for io in ios] for t in targets]
    best = None
    plans: list[tuple[int, ...]] = []
    # itertools.permutations yields in lexicographic order, so plans come out sorted
    for perm in permutations(range(len(ios)), n):
        d = 0
        for j, k in enumerate(perm):
            d += cost[j][k]
        if best is None or d < best:
            best, plans = d, [perm]
        elif d == best:
            plans.append(perm)
    return AssignmentPlanSet(best, tuple(AssignmentPlan(p) for p in plans))
