"""Greedy one-step decision engine.

Each step scores every adjacent status by how it changes three indexes of the
current status (total item-IO distance, required escorts, and the smallest
estimated escort travel cost) and takes the best-scoring move.
"""

from __future__ import annotations

import enum
import random
from collections import deque
from dataclasses import dataclass, field

from .assignment import optimal_assignments
from .distance import INF, q_vector
from .escorts import escort_target_positions, et_s_min
from .grid import GridState, MoveAction, apply_action, legal_actions


class NoLegalActionError(RuntimeError):
    """The state has target items left but no escort can move."""


class Reason(str, enum.Enum):
    TOTAL_DISTANCE = "TotalDistance"
    REQUIRED_ESCORTS = "RequiredEscorts"
    MIN_DISTANCE_MATRIX = "MinDistanceMatrix"
    NEUTRAL = "Neutral"


@dataclass(frozen=True)
class StatusIndexes:
    d_s_min: int
    et_s_min: int
    min_d: float

    def as_tuple(self):
        return (self.d_s_min, self.et_s_min, self.min_d)


@dataclass(frozen=True)
class DecisionRecord:
    step: int
    escort_from: tuple[int, int]
    escort_to: tuple[int, int]
    reason: Reason
    value_before: float
    value_after: float
    reward: int

    @property
    def action(self) -> MoveAction:
        return MoveAction(self.escort_from, self.escort_to)


@dataclass
class SolverConfig:
    rng_seed: int = 0
    max_steps: int | None = None
    cycle_memory: int = 64

    def __post_init__(self):
        if self.max_steps is not None and self.max_steps < 1:
            raise ValueError("max_steps must be at least 1")
        if self.cycle_memory < 1:
            raise ValueError("cycle_memory must be at least 1")

    def step_cap(self, state: GridState) -> int:
        return self.max_steps if self.max_steps is not None else 20 * state.width * state.height


@dataclass
class SolveTrace:
    initial: GridState
    records: list[DecisionRecord] = field(default_factory=list)
    solved: bool = False
    final: GridState | None = None

    @property
    def total_steps(self) -> int:
        return len(self.records)

    @property
    def actions(self) -> list[MoveAction]:
        return [r.action for r in self.records]


def evaluate(state: GridState) -> StatusIndexes:
    plans = optimal_assignments(state)
    if not state.targets:
        return StatusIndexes(0, 0, INF)
    targets = escort_target_positions(state, plans)
    et = et_s_min(state, plans)
    q = q_vector(state, targets, plans)
    return StatusIndexes(plans.d_s_min, et, q.min_d)


def classify(before: StatusIndexes, after: StatusIndexes) -> tuple[int, Reason]:
    """Reward and deciding index for a transition (the seven movement types)."""
    if after.d_s_min < before.d_s_min:
        return 100, Reason.TOTAL_DISTANCE
    if after.d_s_min > before.d_s_min:
        return -1, Reason.TOTAL_DISTANCE
    if after.et_s_min < before.et_s_min:
        return 50, Reason.REQUIRED_ESCORTS
    if after.et_s_min > before.et_s_min:
        return -1, Reason.REQUIRED_ESCORTS
    if after.min_d < before.min_d:
        return 10, Reason.MIN_DISTANCE_MATRIX
    if after.min_d > before.min_d:
        return -1, Reason.MIN_DISTANCE_MATRIX
    return 0, Reason.NEUTRAL


def reward(before: StatusIndexes, after: StatusIndexes) -> int:
    return classify(before, after)[0]


def _record(step, action, before, after) -> DecisionRecord:
    r, reason = classify(before, after)
    if reason is Reason.TOTAL_DISTANCE:
        vb, va = before.d_s_min, after.d_s_min
    elif reason is Reason.REQUIRED_ESCORTS:
        vb, va = before.et_s_min, after.et_s_min
    else:
        vb, va = before.min_d, after.min_d
    return DecisionRecord(step, action.escort_from, action.escort_to, reason, vb, va, r)


def _choose(state, indexes, rng, avoid):
    actions = legal_actions(state)
    if not actions:
        raise NoLegalActionError("no escort can move")
    scored = []
    for a in actions:
        nxt = apply_action(state, a)
        after = evaluate(nxt)
        scored.append((reward(indexes, after), a, nxt, after))
    pool = [s for s in scored if s[0] > 0 or s[2].cells not in avoid] or scored
    top = max(s[0] for s in pool)
    best = [s for s in pool if s[0] == top]
    return best[rng.randrange(len(best))] if len(best) > 1 else best[0]


def decide(state: GridState, indexes: StatusIndexes, rng: random.Random,
           step: int = 1, avoid=frozenset()) -> tuple[MoveAction, DecisionRecord, GridState]:
    """Pick the argmax-reward move; ties are broken uniformly with ``rng``.

    Moves with reward <= 0 whose successor is in ``avoid`` are dropped unless
    nothing else is left.
    """
    _, a, nxt, after = _choose(state, indexes, rng, avoid)
    return a, _record(step, a, indexes, after), nxt


def solve(initial: GridState, config: SolverConfig | None = None) -> SolveTrace:
    config = config or SolverConfig()
    rng = random.Random(config.rng_seed)
    state = initial.swept()
    trace = SolveTrace(initial)
    recent: deque[str] = deque([state.cells], maxlen=config.cycle_memory)
    cap = config.step_cap(state)
    indexes = evaluate(state)
    while state.targets and len(trace.records) < cap:
        _, action, state, after = _choose(state, indexes, rng, frozenset(recent))
        trace.records.append(_record(len(trace.records) + 1, action, indexes, after))
        recent.append(state.cells)
        indexes = after
    trace.solved = not state.targets
    trace.final = state
    return trace
