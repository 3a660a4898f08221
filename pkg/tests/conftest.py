import random

import pytest
from hypothesis import strategies as st

from pbss_route.grid import GridState, Position


def random_state(rng: random.Random, max_w=6, max_h=6, max_targets=3, max_escorts=5,
                 min_escorts=0, max_ios=4) -> GridState:
    w, h = rng.randint(1, max_w), rng.randint(1, max_h)
    cells = [Position(x, y) for y in range(h) for x in range(w)]
    n_io = rng.randint(0, min(max_ios, len(cells)))
    ios = rng.sample(cells, n_io)
    n_t = rng.randint(0, min(max_targets, n_io, len(cells)))
    n_e = rng.randint(min(min_escorts, len(cells) - n_t), min(max_escorts, len(cells) - n_t))
    picked = rng.sample(cells, n_t + n_e)
    return GridState.build(w, h, ios, targets=picked[:n_t], escorts=picked[n_t:])


@st.composite
def states(draw, **kw):
    seed = draw(st.integers(0, 2**32 - 1))
    return random_state(random.Random(seed), **kw)


@st.composite
def live_states(draw, **kw):
    """States with at least one target item and one escort."""
    seed = draw(st.integers(0, 2**32 - 1))
    rng = random.Random(seed)
    while True:
        s = random_state(rng, **kw)
        if s.targets and s.escorts:
            return s


# Worked examples on 4x4 boards; layouts recovered from the published move
# lists.  Map files with the same boards live in tests/data.


@pytest.fixture
def single_item():
    return GridState.build(4, 4, [(0, 0)], targets=[(2, 3)], escorts=[(3, 0), (0, 1), (0, 0), (2, 0)])


@pytest.fixture
def two_item():
    return GridState.build(4, 4, [(0, 3), (3, 3)], targets=[(1, 2), (1, 1)], escorts=[(0, 2), (3, 3)])


# acceptance verdicts, one line per criterion, echoed at the end of the run
VERDICTS: list[str] = []


def pytest_configure(config):
    config.addinivalue_line("markers", "acceptance: long-running end-to-end acceptance checks")


def pytest_terminal_summary(terminalreporter):
    if VERDICTS:
        terminalreporter.section("acceptance criteria")
        for line in VERDICTS:
            terminalreporter.write_line(line)
