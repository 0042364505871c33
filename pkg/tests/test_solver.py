import math
import random

import pytest

from dubins_intercept import (
    ConsistencyError,
    InvalidInputError,
    Pose,
    Scenario,
    SegmentLengths,
    Status,
    TurnDirection,
    check_model_constraints,
    control_profile,
    exit_pose,
    linear_subsolve,
    propagate_arc,
    propagate_straight,
    solve,
    solve_branch,
    target_position,
    timing_residual,
    turning_circle_clearance,
)
from dubins_intercept.solver import build_solution

from conftest import random_scenarios, table_scenarios

PI = math.pi
L, R = TurnDirection.LEFT, TurnDirection.RIGHT


def transformed(sc: Scenario, scale: float = 1.0, rotate: float = 0.0) -> Scenario:
    c, s = math.cos(rotate), math.sin(rotate)

    def move(p: Pose) -> tuple[float, float, float]:
        x, y = scale * p.x, scale * p.y
        return (c * x - s * y, s * x + c * y, p.heading + rotate)

    tx, ty, _ = move(sc.target_start)
    return Scenario.build(
        move(sc.pursuer_start),
        (tx, ty, sc.target.heading + rotate),
        sc.pursuer.speed,
        sc.target.speed,
        scale * sc.pursuer.turn_radius,
    )


def test_exit_pose(table1):
    p = exit_pose(table1, L, 0.92)
    assert (p.x, p.y, p.heading) == pytest.approx((-0.739170568, 0.491921293, 3.014395102), abs=1e-9)
    assert exit_pose(table1, L, 0) == table1.pursuer_start
    assert exit_pose(table1, R, 0) == table1.pursuer_start
    with pytest.raises(InvalidInputError):
        exit_pose(table1, L, 7.0)
    with pytest.raises(InvalidInputError):
        exit_pose(table1, L, -0.1)


def test_linear_subsolve(table1, table7):
    xi3, xi4 = linear_subsolve(table1, exit_pose(table1, L, 0.92))
    assert xi3 == pytest.approx(4.30, abs=0.01)
    assert xi4 == pytest.approx(1.04, abs=0.01)
    xi3, xi4 = linear_subsolve(table7, exit_pose(table7, L, 1.81))
    assert xi3 == pytest.approx(0.61, abs=0.02)
    assert xi4 == pytest.approx(0.24, abs=0.02)


def test_linear_subsolve_parallel_is_absent():
    sc = Scenario.build((0, 0, 0), (3, 5, 0), 5, 1, 1)
    assert linear_subsolve(sc, sc.pursuer_start) is None


def test_linear_subsolve_rejects_negative_legs():
    # target behind the pursuer, crossing its line: xi3 would be negative
    sc = Scenario.build((0, 0, 0), (-5, -1, PI / 2), 5, 1, 1)
    assert linear_subsolve(sc, sc.pursuer_start) is None


def test_timing_residual(table1):
    assert abs(timing_residual(table1, L, 0.92)) < 0.05
    best = solve(table1).best
    assert abs(timing_residual(table1, L, best.phi)) < 1e-9
    # at phi = 0 the pursuer flies along (-1/2, sqrt3/2) and meets x = -5 after
    # xi3 = 10, where the target has travelled xi4 = 10*sqrt3/2
    assert timing_residual(table1, L, 0.0) == pytest.approx(10 - 5 * 10 * math.sqrt(3) / 2, rel=1e-12)


def test_dead_ahead_pure_chase(dead_ahead):
    report = solve(dead_ahead)
    assert report.status is Status.OPTIMAL
    assert report.best.lengths.as_tuple() == pytest.approx((0, 0, 12.5, 2.5), abs=1e-9)
    assert report.best.branch is L
    assert control_profile(report.best) == [0.0]


@pytest.mark.parametrize(
    "branch, expected, f",
    [
        (L, (0.92, 0, 4.30, 1.04), 6.26),
        (R, (0, 5.70, 6.09, 2.36), 14.16),
    ],
)
def test_solve_branch_table1(table1, branch, expected, f):
    cands = solve_branch(table1, branch).candidates
    # the reference right-turn row is only accurate to ~0.03 (see README)
    tol = 0.02 if branch is L else 0.035
    assert any(
        c.lengths.as_tuple() == pytest.approx(expected, abs=tol) and c.total_length == pytest.approx(f, abs=tol)
        for c in cands
    ), cands


def test_solve_branch_table2(table2):
    cands = solve_branch(table2, R).candidates
    assert any(c.lengths.as_tuple() == pytest.approx((0, 1.07, 5.75, 2.73), abs=0.01) for c in cands)


def test_solve_table1(table1):
    report = solve(table1)
    assert report.best.branch is L
    assert report.best.total_length == pytest.approx(6.26, abs=0.02)
    assert report.best.total_time == pytest.approx(1.04, abs=0.02)
    assert all(report.best.total_length <= c.total_length for c in report.candidates)


def test_solve_table5_and_6():
    t5 = Scenario.build((0, 0, 2 * PI / 3), (-100, 0, PI / 2), 12, 5, 3)
    best = solve(t5).best
    assert best.total_length == pytest.approx(156.04, abs=0.02)
    assert best.lengths.xi1 == pytest.approx(1.87, abs=0.02)
    t6 = Scenario.build((0, 0, 2 * PI / 3), (-124.28, -72.68, PI / 2), 8, 8, 48)
    best = solve(t6).best
    assert best.total_length == pytest.approx(290.33, abs=0.1)
    assert best.total_time == pytest.approx(18.14, abs=0.02)


def test_infeasible_receding_target():
    sc = Scenario.build((0, 0, 0), (5, 0, 0), 2, 4, 1)
    report = solve(sc)
    assert report.status is Status.INFEASIBLE
    assert report.best is None and report.residuals is None


def test_solve_rejects_non_scenario():
    with pytest.raises(InvalidInputError):
        solve("not a scenario")


def test_check_model_constraints(table1):
    res = check_model_constraints(table1, SegmentLengths(0.92, 0, 4.30, 1.04))
    assert all(abs(r) < 0.03 for r in res)
    same = Scenario.build((3, 4, 1), (3, 4, 2), 5, 1, 1)
    assert check_model_constraints(same, SegmentLengths(0, 0, 0, 0)) == pytest.approx((0, 0, 0), abs=1e-15)
    t4 = Scenario.build((0, 0, PI / 3), (-1, 10, 3 * PI / 2), 5, 2, 3)
    assert all(abs(r) < 0.05 for r in check_model_constraints(t4, SegmentLengths(2.37, 0, 4.96, 2.93)))
    with pytest.raises(InvalidInputError):
        check_model_constraints(table1, SegmentLengths(-1, 0, 0, 0))


def test_check_model_constraints_composite_turns():
    # an external left-then-right candidate built by direct propagation
    sc0 = Scenario.build((1, -2, 0.3), (0, 0, 0), 4, 1, 2)
    p = propagate_arc(sc0.pursuer_start, L, 1.3, 0.5)
    p = propagate_arc(p, R, 2.1, 0.5)
    p = propagate_straight(p, 3.0)
    xi4 = (1.3 + 2.1 + 3.0) * 1 / 4
    th = 2.0
    start = (p.x - xi4 * math.cos(th), p.y - xi4 * math.sin(th), th)
    sc = Scenario.build((1, -2, 0.3), start, 4, 1, 2)
    res = check_model_constraints(sc, SegmentLengths(1.3, 2.1, 3.0, xi4))
    assert res == pytest.approx((0, 0, 0), abs=1e-12)


def test_clearance_examples(table1):
    best = solve(table1).best
    assert turning_circle_clearance(best, table1) > 0
    inside = Scenario.build((0, 0, 2 * PI / 3), (-70, 0, PI / 2), 12, 4, 48)
    cx, cy = -48 * math.sin(2 * PI / 3), 48 * math.cos(2 * PI / 3)
    assert math.hypot(-70 - cx, 0 - cy) < 48  # target starts inside the left circle
    best = solve(inside).best
    assert best.total_length == pytest.approx(105.01, abs=0.05)
    assert turning_circle_clearance(best, inside) >= -1e-9


def test_control_profiles(table1, table2, dead_ahead):
    assert control_profile(solve(table1).best) == [1.0, 0.0]
    assert control_profile(solve(table2).best) == [-1.0, 0.0]
    assert control_profile(solve(dead_ahead).best) == [0.0]


def test_control_profile_rejects_bad_pattern(table1):
    good = solve(table1).best
    bad = build_solution(table1, L, good.phi, good.lengths.xi3, good.lengths.xi4)
    object.__setattr__(bad, "lengths", SegmentLengths(0.5, 0.5, 1.0, 1.0))
    with pytest.raises(ConsistencyError):
        control_profile(bad)


def test_tie_break_prefers_left():
    # mirror-symmetric setup: pursuer heading away, target dead behind on the axis
    sc = Scenario.build((0, 0, 0), (-10, 0, PI / 2 + 1e-3), 5, 1, 1)
    flipped = Scenario.build((0, 0, 0), (-10, 0, -PI / 2 - 1e-3), 5, 1, 1)
    a, b = solve(sc).best, solve(flipped).best
    assert a.total_length == pytest.approx(b.total_length, rel=1e-12)
    sym = Scenario.build((0, 0, 0), (-10, 0, PI), 5, 1, 1)
    left = solve_branch(sym, L).candidates
    right = solve_branch(sym, R).candidates
    if left and right and abs(min(c.total_length for c in left) - min(c.total_length for c in right)) < 1e-9:
        assert solve(sym).best.branch is L


def _check_solution_invariants(sc, sol):
    scale = max(sc.scale, sol.total_length)
    xi = sol.lengths.as_tuple()
    assert all(v >= 0 for v in xi)
    assert (xi[0] == 0) != (xi[1] == 0) or (xi[0] == 0 and xi[1] == 0)
    assert sol.total_length == xi[0] + xi[1] + xi[2] + xi[3]
    res = check_model_constraints(sc, sol.lengths)
    assert max(abs(r) for r in res) <= 1e-8 * scale, res
    end = target_position(sc.target_start, sc.target, sol.total_time)
    ix, iy = sol.intercept_point
    assert math.hypot(ix - end.x, iy - end.y) <= 1e-8 * scale
    t_p = (xi[0] + xi[1] + xi[2]) / sc.pursuer.speed
    assert sol.total_time == pytest.approx(t_p, abs=1e-9 * max(1, sol.total_time))
    assert sol.total_time == sol.durations[3]
    if sol.arc_length > 0:
        assert turning_circle_clearance(sol, sc) >= -1e-9
    assert control_profile(sol) in ([sol.curvature, 0.0], [-sol.curvature, 0.0], [0.0])


@pytest.mark.parametrize("sc", table_scenarios() + random_scenarios(60, seed=7))
def test_solution_invariants(sc):
    report = solve(sc)
    for cand in report.candidates:
        _check_solution_invariants(sc, cand)


@pytest.mark.parametrize("sc", table_scenarios()[:6] + random_scenarios(20, seed=11))
def test_similarity_and_rotation(sc):
    base = solve(sc).best
    rng = random.Random(hash((sc.pursuer_start.x, sc.target_start.y)) & 0xFFFF)
    s = rng.uniform(0.2, 5)
    scaled = solve(transformed(sc, scale=s)).best
    assert scaled.lengths.as_tuple() == pytest.approx(tuple(s * v for v in base.lengths.as_tuple()), rel=1e-8, abs=1e-9)
    assert scaled.total_time == pytest.approx(s * base.total_time, rel=1e-8)
    rho = rng.uniform(0, 2 * PI)
    rotated = solve(transformed(sc, rotate=rho)).best
    assert rotated.total_length == pytest.approx(base.total_length, rel=1e-8)
    assert rotated.total_time == pytest.approx(base.total_time, rel=1e-8)
