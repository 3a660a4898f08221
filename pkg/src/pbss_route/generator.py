"""Seeded random instances."""

from __future__ import annotations

import random
from dataclasses import dataclass, field

from .grid import GridState, Position


class InfeasibleSpecError(ValueError):
    pass


@dataclass(frozen=True)
class GeneratorSpec:
    width: int
    height: int
    n_escorts: int
    n_targets: int
    io_positions: tuple[Position, ...] = field(default=())
    rng_seed: int = 0

    def __post_init__(self):
        object.__setattr__(self, "io_positions", tuple(Position(*p) for p in self.io_positions))
        if self.width < 1 or self.height < 1:
            raise InfeasibleSpecError("grid dimensions must be positive")
        if self.n_escorts < 0 or self.n_targets < 0:
            raise InfeasibleSpecError("counts must be non-negative")
        if self.n_escorts + self.n_targets > self.width * self.height:
            raise InfeasibleSpecError(
                f"{self.n_escorts} escorts + {self.n_targets} targets exceed {self.width}x{self.height} cells")
        if self.n_targets > len(self.io_positions):
            raise InfeasibleSpecError(f"{self.n_targets} targets but only {len(self.io_positions)} IOs")
        if len(set(self.io_positions)) != len(self.io_positions):
            raise InfeasibleSpecError("duplicate IO position")
        for p in self.io_positions:
            if not (0 <= p.x < self.width and 0 <= p.y < self.height):
                raise InfeasibleSpecError(f"IO {p} outside the grid")


def generate(spec: GeneratorSpec) -> GridState:
    """Place escorts and target items uniformly at random; everything else is an other item.

    A target drawn onto an IO is retrieved on the spot, so generated states
    come back already swept.
    """
    rng = random.Random(spec.rng_seed)
    cells = [Position(x, y) for y in range(spec.height) for x in range(spec.width)]
    picked = rng.sample(cells, spec.n_escorts + spec.n_targets)
    return GridState.build(spec.width, spec.height, spec.io_positions,
                           targets=picked[:spec.n_targets], escorts=picked[spec.n_targets:])


def generate_solvable(spec: GeneratorSpec, max_tries: int = 1000) -> GridState:
    """Like :func:`generate` but redraws until no target item starts on an IO.

    Redraws use consecutive seeds starting at ``spec.rng_seed``.
    """
    if spec.n_targets > 0 and spec.n_escorts == 0:
        raise InfeasibleSpecError("target items cannot move without an escort")
    for i in range(max_tries):
        s = generate(GeneratorSpec(spec.width, spec.height, spec.n_escorts, spec.n_targets,
                                   spec.io_positions, spec.rng_seed + i))
        if len(s.targets) == spec.n_targets:
            return s
    raise InfeasibleSpecError(f"no usable instance in {max_tries} draws")
