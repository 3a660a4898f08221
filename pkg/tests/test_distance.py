import random

from hypothesis import given, settings
from hypothesis import strategies as st

from pbss_route.assignment import optimal_assignments
from pbss_route.distance import (
    INF, correction_r, correction_t, correction_t_enumerated, distance_matrix, estimate,
    monotone_paths, q_vector, reuse_shortfall,
)
from pbss_route.escorts import escort_target_positions
from pbss_route.grid import (
    TARGET, GridState, MoveAction, Position, apply_action, legal_actions, manhattan,
)
from pbss_route.oracle import optimal_steps
from pbss_route.solver import evaluate, solve

from conftest import live_states, random_state


def _ctx(s):
    ps = optimal_assignments(s)
    return ps, escort_target_positions(s, ps)


def test_adjacent_escort_needs_no_detour():
    s = GridState.build(3, 3, [(0, 0)], targets=[(1, 1)], escorts=[(2, 0)])
    assert correction_t(s, (2, 0), (1, 0)) == 0


def test_single_path_blocked_by_target():
    # e and T share a row and another target item sits between them
    s = GridState.build(5, 2, [(0, 1), (4, 1)], targets=[(2, 0), (1, 1)], escorts=[(4, 0)])
    assert correction_t(s, (4, 0), (1, 0)) == 2
    assert correction_t_enumerated(s, (4, 0), (1, 0)) == 2


def test_some_paths_blocked_one_clear():
    s = GridState.build(4, 4, [(0, 0), (3, 3)], targets=[(1, 1), (2, 2)], escorts=[(0, 3)])
    assert correction_t(s, (0, 3), (3, 0)) == 0


def test_all_paths_blocked_by_two_targets():
    s = GridState.build(4, 4, [(0, 0), (3, 3)], targets=[(1, 0), (0, 1)], escorts=[(0, 0)])
    assert correction_t(s, (0, 0), (2, 2)) == 2


def test_path_count():
    assert len(list(monotone_paths((0, 0), (3, 2)))) == 10
    assert list(monotone_paths((1, 1), (1, 1))) == [[]]


def test_shortfall_four_with_four_escorts():
    s = GridState.build(5, 5, [(0, 0)], targets=[(3, 2)],
                        escorts=[(1, 0), (0, 1), (1, 1), (2, 1)])
    assert manhattan((2, 2), (0, 0)) == 4
    assert reuse_shortfall(s, (2, 2), (0, 0)) == 1


def test_shortfall_on_empty_io():
    s = GridState.build(2, 1, [(0, 0)], targets=[(1, 0)], escorts=[(0, 0)])
    assert reuse_shortfall(s, (0, 0), (0, 0)) == 0


def test_reuse_correction_prefers_the_far_escort_r4():
    # M one cell from T and two from the IO; E sits on the IO next to T, D is four away
    s = GridState.build(3, 5, [(0, 0)], targets=[(2, 0)], escorts=[(0, 0), (1, 4)])
    ps = optimal_assignments(s)
    e_est = estimate(s, Position(0, 0), Position(1, 0), ps)
    d_est = estimate(s, Position(1, 4), Position(1, 0), ps)
    assert (e_est.base, e_est.r, e_est.c) == (1, 4, 5)
    assert (d_est.base, d_est.r, d_est.c) == (4, 0, 4)
    assert solve(s).total_steps == 6 == optimal_steps(s)
    via_e = apply_action(s, MoveAction((0, 0), (1, 0)))
    assert optimal_steps(via_e) + 1 == 7


def test_reuse_correction_r2_saves_one_step():
    s = GridState.from_rows(["..##", "##T."], [(0, 0)])
    ps = optimal_assignments(s)
    e_est = estimate(s, Position(1, 0), Position(2, 0), ps)
    c_est = estimate(s, Position(3, 1), Position(2, 0), ps)
    assert (e_est.base, e_est.r) == (1, 2)
    assert (c_est.base, c_est.r) == (2, 0)
    assert solve(s).total_steps == optimal_steps(s) == 5
    via_e = apply_action(s, MoveAction((1, 0), (2, 0)))
    assert optimal_steps(via_e) + 1 == 6


def test_surplus_gives_zero_r():
    s = GridState.build(3, 3, [(0, 0)], targets=[(2, 2)],
                        escorts=[(0, 0), (1, 0), (0, 1), (1, 1), (2, 0)])
    ps = optimal_assignments(s)
    assert correction_r(s, Position(2, 0), Position(2, 1), ps) == 0


def test_escort_on_target_with_enough_escorts_gives_zero():
    s = GridState.build(3, 1, [(0, 0)], targets=[(2, 0)], escorts=[(0, 0), (1, 0)])
    ps, tg = _ctx(s)
    assert q_vector(s, tg, ps).min_d == 0


def test_no_targets_min_is_infinite():
    s = GridState.build(2, 2, [(0, 0)], escorts=[(1, 1)])
    ps, tg = _ctx(s)
    assert q_vector(s, tg, ps).min_d == INF


def test_t_dp_matches_enumeration_small_boxes():
    rng = random.Random(5)
    n = 0
    while n < 400:
        s = random_state(rng, max_w=7, max_h=7, max_targets=4, max_escorts=3, max_ios=4)
        if not s.escorts:
            continue
        e = rng.choice(s.escorts)
        tp = Position(rng.randrange(s.width), rng.randrange(s.height))
        if manhattan(e, tp) > 8:
            continue
        assert correction_t(s, e, tp) == correction_t_enumerated(s, e, tp)
        n += 1


@settings(max_examples=150, deadline=None)
@given(st.integers(0, 2**32 - 1))
def test_t_dp_matches_enumeration_dense_targets(seed):
    rng = random.Random(seed)
    w, h = rng.randint(1, 6), rng.randint(1, 6)
    cells = ["T" if rng.random() < 0.35 else "#" for _ in range(w * h)]
    e = Position(rng.randrange(w), rng.randrange(h))
    cells[e.y * w + e.x] = "."
    s = GridState(w, h, "".join(cells), ())
    tp = Position(rng.randrange(w), rng.randrange(h))
    assert correction_t(s, e, tp) == correction_t_enumerated(s, e, tp)


def test_t_zero_without_targets_in_box():
    rng = random.Random(9)
    for _ in range(200):
        s = random_state(rng, max_w=6, max_h=6)
        for e in s.escorts:
            for tp in [Position(x, y) for x in range(s.width) for y in range(s.height)]:
                box_has_target = any(
                    s.glyph((x, y)) == TARGET
                    for x in range(min(e.x, tp.x), max(e.x, tp.x) + 1)
                    for y in range(min(e.y, tp.y), max(e.y, tp.y) + 1))
                if not box_has_target:
                    assert correction_t(s, e, tp) == 0


@settings(max_examples=200, deadline=None)
@given(live_states(max_w=6, max_h=6, max_targets=3, max_escorts=6))
def test_q_vector_matches_full_matrix(s):
    ps, tg = _ctx(s)
    q = q_vector(s, tg, ps)
    mat = distance_matrix(s, tg, ps)
    cols = list(zip(*mat)) if mat else []
    assert q.targets == tuple(sorted(tg))
    assert list(q.q) == [min(c) for c in cols]
    assert q.min_d == min((min(c) for c in cols), default=INF)


@settings(max_examples=200, deadline=None)
@given(live_states(max_w=6, max_h=6, max_targets=3, max_escorts=6))
def test_estimate_invariants(s):
    ps, tg = _ctx(s)
    for tp in tg:
        for e in s.escorts:
            est = estimate(s, e, tp, ps)
            assert est.c == est.base + est.t + est.r
            assert est.t in (0, 2)
            assert est.r >= 0 and est.r % 2 == 0
            assert est.c >= manhattan(e, tp)


@settings(max_examples=200, deadline=None)
@given(live_states(max_w=6, max_h=6, max_targets=2, max_escorts=5))
def test_min_d_can_shrink_when_attained_on_a_clear_path(s):
    # stepping the attaining escort through plain items lowers its base and leaves t and r alone
    ps, tg = _ctx(s)
    q = q_vector(s, tg, ps)
    if not 0 < q.min_d < INF:
        return

    def box_is_plain(e, tp):
        return all(s.glyph((x, y)) == "#" or (x, y) == e
                   for x in range(min(e.x, tp.x), max(e.x, tp.x) + 1)
                   for y in range(min(e.y, tp.y), max(e.y, tp.y) + 1))

    attained = [(e, tp) for tp in tg for e in s.escorts
                if e != tp and box_is_plain(e, tp) and estimate(s, e, tp, ps).c == q.min_d]
    if not attained:
        return
    assert any(evaluate(apply_action(s, a)).min_d < q.min_d for a in legal_actions(s))
