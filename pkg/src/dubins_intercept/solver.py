"""Shortest arc-then-straight interception of a constant-velocity target.

The pursuer turns through an angle ``phi`` on one of its two turning circles,
then flies straight until it meets the target. For a fixed ``phi`` the
straight length and the target travel follow from a 2x2 linear system, so
each turn direction reduces to a scalar root-find on the timing mismatch

    r(phi) = V_T * (phi*R + xi3) - V_P * xi4.

Every root on a uniform grid over [0, 2*pi] is bracketed and bisected; the
shortest feasible root over both directions is the optimum.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field

from .kinematics import (
    TWO_PI,
    InvalidInputError,
    Pose,
    Scenario,
    TurnDirection,
    propagate_arc,
    propagate_straight,
    target_position,
    turning_circle_center,
)

GRID_INTERVALS = 2048
PHI_TOL = 1e-12
SINGULAR_TOL = 1e-10
CLAMP_TOL = 1e-9
TIE_TOL = 1e-9


class ConsistencyError(RuntimeError):
    """A solution violates a structural property the solver guarantees."""


class Status(enum.Enum):
    OPTIMAL = "optimal"
    INFEASIBLE = "infeasible"


@dataclass(frozen=True)
class SegmentLengths:
    xi1: float  # left arc
    xi2: float  # right arc
    xi3: float  # pursuer straight
    xi4: float  # target straight

    def as_tuple(self) -> tuple[float, float, float, float]:
        return (self.xi1, self.xi2, self.xi3, self.xi4)

    @property
    def total(self) -> float:
        return self.xi1 + self.xi2 + self.xi3 + self.xi4


@dataclass(frozen=True)
class InterceptSolution:
    branch: TurnDirection
    phi: float
    lengths: SegmentLengths
    durations: tuple[float, float, float, float]
    total_length: float
    total_time: float
    intercept_point: tuple[float, float]
    # (start, end) poses for the arc, the pursuer straight and the target leg
    segment_poses: tuple[tuple[Pose, Pose], tuple[Pose, Pose], tuple[Pose, Pose]]
    curvature: float

    @property
    def arc_length(self) -> float:
        return self.lengths.xi1 if self.branch is TurnDirection.LEFT else self.lengths.xi2


@dataclass
class BranchResult:
    branch: TurnDirection
    candidates: list[InterceptSolution]
    root_count: int


@dataclass
class SolveReport:
    best: InterceptSolution | None
    per_branch: list[BranchResult] = field(default_factory=list)
    residuals: tuple[float, float, float] | None = None

    @property
    def status(self) -> Status:
        return Status.OPTIMAL if self.best is not None else Status.INFEASIBLE

    @property
    def candidates(self) -> list[InterceptSolution]:
        return [c for b in self.per_branch for c in b.candidates]


def exit_pose(scenario: Scenario, branch: TurnDirection, phi: float) -> Pose:
    """Pose after turning through ``phi`` radians on the ``branch`` circle."""
    if not (0.0 <= phi <= TWO_PI):
        raise InvalidInputError(f"phi must lie in [0, 2*pi], got {phi}")
    return propagate_arc(
        scenario.pursuer_start, branch, phi * scenario.pursuer.turn_radius, scenario.pursuer.curvature
    )


def _straight_legs(scenario: Scenario, exit: Pose) -> tuple[float, float] | None:
    # exit + xi3*e = T0 + xi4*d, solved by Cramer's rule; None when e || d.
    th = scenario.target.heading
    ex, ey = math.cos(exit.heading), math.sin(exit.heading)
    dx, dy = math.cos(th), math.sin(th)
    if abs(math.sin(exit.heading - th)) < SINGULAR_TOL:
        return None
    bx = scenario.target_start.x - exit.x
    by = scenario.target_start.y - exit.y
    det = ey * dx - ex * dy
    xi3 = (by * dx - bx * dy) / det
    xi4 = (ex * by - ey * bx) / det
    return xi3, xi4


def linear_subsolve(scenario: Scenario, exit: Pose) -> tuple[float, float] | None:
    """Straight length ``xi3`` and target travel ``xi4`` meeting at one point.

    Returns None for parallel headings or when either length is negative
    beyond ``CLAMP_TOL``; tiny negatives are clamped to zero.
    """
    legs = _straight_legs(scenario, exit)
    if legs is None:
        return None
    xi3, xi4 = legs
    if xi3 < -CLAMP_TOL or xi4 < -CLAMP_TOL:
        return None
    return max(xi3, 0.0), max(xi4, 0.0)


def timing_residual(scenario: Scenario, branch: TurnDirection, phi: float) -> float | None:
    legs = linear_subsolve(scenario, exit_pose(scenario, branch, phi))
    if legs is None:
        return None
    xi3, xi4 = legs
    arc = phi * scenario.pursuer.turn_radius
    return scenario.target.speed * (arc + xi3) - scenario.pursuer.speed * xi4


def _residual_fn(scenario: Scenario, branch: TurnDirection):
    """Fast scalar form of the timing mismatch without the feasibility cut.

    Keeping negative legs makes the function continuous across xi3 = 0, so
    roots next to that edge are still bracketed. Returns None at poles.
    """
    p, t = scenario.pursuer_start, scenario.target_start
    R = scenario.pursuer.turn_radius
    vp, vt = scenario.pursuer.speed, scenario.target.speed
    sgn = branch.sign
    h0 = p.heading
    sin0, cos0 = math.sin(h0), math.cos(h0)
    dx, dy = math.cos(scenario.target.heading), math.sin(scenario.target.heading)
    th = scenario.target.heading

    def f(phi):
        h = h0 + sgn * phi
        ex, ey = math.cos(h), math.sin(h)
        if abs(math.sin(h - th)) < SINGULAR_TOL:
            return None
        bx = t.x - (p.x + sgn * R * (ey - sin0))
        by = t.y - (p.y - sgn * R * (ex - cos0))
        det = ey * dx - ex * dy
        xi3 = (by * dx - bx * dy) / det
        xi4 = (ex * by - ey * bx) / det
        return vt * (phi * R + xi3) - vp * xi4

    return f


def _bisect(func, lo: float, hi: float, f_lo: float, f_hi: float) -> float | None:
    # Runs past PHI_TOL down to float resolution: near a pole the residual
    # slope is large enough that a 1e-12 bracket still leaves ~1e-7 error.
    while True:
        mid = 0.5 * (lo + hi)
        if mid <= lo or mid >= hi:
            break
        f_mid = func(mid)
        if f_mid is None:
            return None
        if f_mid == 0.0:
            return mid
        if (f_mid < 0.0) == (f_lo < 0.0):
            lo, f_lo = mid, f_mid
        else:
            hi, f_hi = mid, f_mid
    return lo if abs(f_lo) <= abs(f_hi) else hi


def _collinear_phis(scenario: Scenario, branch: TurnDirection) -> list[float]:
    """Turn angles whose exit heading is parallel to the target's course."""
    th0 = scenario.pursuer_start.heading
    delta = branch.sign * (scenario.target.heading - th0)
    base = math.fmod(delta, math.pi)
    if base < 0:
        base += math.pi
    return [phi for phi in (base, base + math.pi, base + 2 * math.pi) if phi <= TWO_PI]


def _collinear_solution(scenario: Scenario, branch: TurnDirection, phi: float) -> tuple[float, float] | None:
    # When the target moves along the pursuer's exit line the 2x2 system is
    # rank one; speed coupling then pins xi4 directly.
    exit = exit_pose(scenario, branch, phi)
    ex, ey = math.cos(exit.heading), math.sin(exit.heading)
    bx = scenario.target_start.x - exit.x
    by = scenario.target_start.y - exit.y
    tol = 1e-9 * scenario.scale
    if abs(ex * by - ey * bx) > tol:
        return None
    along = ex * bx + ey * by
    same_way = math.cos(exit.heading - scenario.target.heading) > 0
    s = 1.0 if same_way else -1.0
    vp, vt = scenario.pursuer.speed, scenario.target.speed
    denom = vp - s * vt
    if abs(denom) < SINGULAR_TOL:
        return None
    xi4 = vt * (phi * scenario.pursuer.turn_radius + along) / denom
    xi3 = along + s * xi4
    if xi3 < -CLAMP_TOL or xi4 < -CLAMP_TOL:
        return None
    return max(xi3, 0.0), max(xi4, 0.0)


def build_solution(scenario: Scenario, branch: TurnDirection, phi: float, xi3: float, xi4: float) -> InterceptSolution:
    """Assemble the full solution record for a turn angle and straight legs."""
    vp, vt = scenario.pursuer.speed, scenario.target.speed
    arc = phi * scenario.pursuer.turn_radius
    if branch is TurnDirection.LEFT:
        lengths = SegmentLengths(arc, 0.0, xi3, xi4)
    else:
        lengths = SegmentLengths(0.0, arc, xi3, xi4)
    start = scenario.pursuer_start
    exit = propagate_arc(start, branch, arc, scenario.pursuer.curvature)
    end = propagate_straight(exit, xi3)
    t4 = xi4 / vt
    target_end = target_position(scenario.target_start, scenario.target, t4)
    return InterceptSolution(
        branch=branch,
        phi=phi,
        lengths=lengths,
        durations=(lengths.xi1 / vp, lengths.xi2 / vp, xi3 / vp, t4),
        total_length=lengths.xi1 + lengths.xi2 + lengths.xi3 + lengths.xi4,
        total_time=t4,
        intercept_point=end.position,
        segment_poses=((start, exit), (exit, end), (scenario.target_start, target_end)),
        curvature=scenario.pursuer.curvature,
    )


def _root_is_genuine(scenario: Scenario, residual: float | None) -> bool:
    # Sign changes across a pole of the linear solve bisect to the pole with
    # an enormous residual; real roots land near zero.
    if residual is None:
        return False
    speeds = scenario.pursuer.speed + scenario.target.speed
    return abs(residual) <= 1e-6 * speeds * scenario.scale


def _scan_points(poles: list[float], intervals: int) -> list[tuple[float, float]]:
    """Uniform grid cells over [0, 2*pi], split so no cell straddles a pole."""
    eps = 1e-9
    cuts = sorted({TWO_PI * i / intervals for i in range(intervals + 1)}
                  | {q for pole in poles for q in (pole - eps, pole + eps) if 0.0 < q < TWO_PI})
    cells = []
    for lo, hi in zip(cuts, cuts[1:]):
        if any(lo < pole < hi for pole in poles):
            continue
        cells.append((lo, hi))
    return cells


def _branch_roots(scenario: Scenario, branch: TurnDirection, intervals: int) -> list[float]:
    f = _residual_fn(scenario, branch)
    cells = _scan_points(_collinear_phis(scenario, branch), intervals)
    cache: dict[float, float | None] = {}

    def value(phi):
        if phi not in cache:
            cache[phi] = f(phi)
        return cache[phi]

    roots = []
    for lo, hi in cells:
        f_lo, f_hi = value(lo), value(hi)
        if f_lo is None or f_hi is None:
            continue
        if f_lo == 0.0:
            roots.append(lo)
            continue
        if hi == TWO_PI and f_hi == 0.0:
            roots.append(hi)
            continue
        if (f_lo < 0.0) == (f_hi < 0.0):
            continue
        phi = _bisect(f, lo, hi, f_lo, f_hi)
        if phi is not None and _root_is_genuine(scenario, f(phi)):
            roots.append(phi)
    return roots


def solve_branch(scenario: Scenario, branch: TurnDirection, intervals: int = GRID_INTERVALS) -> BranchResult:
    """All feasible single-arc interceptions that start with a ``branch`` turn."""
    roots = _branch_roots(scenario, branch, intervals)
    found: list[tuple[float, tuple[float, float]]] = []
    for phi in roots:
        legs = linear_subsolve(scenario, exit_pose(scenario, branch, phi))
        if legs is not None:
            found.append((phi, legs))
    root_count = len(roots)
    for phi in _collinear_phis(scenario, branch):
        legs = _collinear_solution(scenario, branch, phi)
        if legs is not None and all(abs(phi - other) > 1e-9 for other, _ in found):
            found.append((phi, legs))
            root_count += 1
    found.sort(key=lambda item: item[0])
    candidates = [build_solution(scenario, branch, phi, xi3, xi4) for phi, (xi3, xi4) in found]
    return BranchResult(branch, candidates, root_count)


def solve(
    scenario: Scenario,
    branches: tuple[TurnDirection, ...] = (TurnDirection.LEFT, TurnDirection.RIGHT),
    intervals: int = GRID_INTERVALS,
) -> SolveReport:
    """Shortest interception over the requested turn directions.

    Ties within ``TIE_TOL`` go to the earlier branch in ``branches`` (left
    first by default).
    """
    if not isinstance(scenario, Scenario):
        raise InvalidInputError(f"expected a Scenario, got {type(scenario).__name__}")
    report = SolveReport(best=None)
    for branch in branches:
        result = solve_branch(scenario, branch, intervals)
        report.per_branch.append(result)
        for cand in result.candidates:
            if report.best is None or cand.total_length < report.best.total_length - TIE_TOL:
                report.best = cand
    if report.best is not None:
        report.residuals = check_model_constraints(scenario, report.best.lengths)
    return report


def check_model_constraints(scenario: Scenario, lengths: SegmentLengths) -> tuple[float, float, float]:
    """Coincidence (x, y) and speed-coupling residuals for arbitrary lengths.

    Supports a left arc followed by a right arc, so externally supplied
    composite candidates can be validated too.
    """
    xi1, xi2, xi3, xi4 = lengths.as_tuple()
    for name, value in zip(("xi1", "xi2", "xi3", "xi4"), (xi1, xi2, xi3, xi4)):
        if not math.isfinite(value) or value < 0:
            raise InvalidInputError(f"{name} must be finite and >= 0, got {value}")
    a = scenario.pursuer.curvature
    p, t = scenario.pursuer_start, scenario.target_start
    th_t = scenario.target.heading
    th0 = p.heading
    th1 = th0 + a * xi1
    th2 = th1 - a * xi2
    rx = (
        p.x - t.x
        + (-math.sin(th0) + 2 * math.sin(th1) - math.sin(th2)) / a
        + xi3 * math.cos(th2)
        - xi4 * math.cos(th_t)
    )
    ry = (
        p.y - t.y
        + (math.cos(th0) - 2 * math.cos(th1) + math.cos(th2)) / a
        + xi3 * math.sin(th2)
        - xi4 * math.sin(th_t)
    )
    rt = scenario.target.speed * (xi1 + xi2 + xi3) - scenario.pursuer.speed * xi4
    return (rx, ry, rt)


def turning_circle_clearance(solution: InterceptSolution, scenario: Scenario) -> float:
    """Distance from the intercept point to the active turning circle, minus R.

    Never negative for a valid solution: the straight leg is tangent to the
    circle, so it cannot re-enter it. Straight-only solutions are measured
    against the left circle.
    """
    branch = solution.branch if solution.arc_length > 0 else TurnDirection.LEFT
    R = scenario.pursuer.turn_radius
    cx, cy = turning_circle_center(scenario.pursuer_start, branch, R)
    ix, iy = solution.intercept_point
    return math.hypot(ix - cx, iy - cy) - R


def control_profile(solution: InterceptSolution) -> list[float]:
    """Piecewise-constant turn-rate command ``u`` over the pursuer's segments.

    Zero-length segments are omitted, so a pure chase gives ``[0.0]`` and a
    left turn then straight gives ``[a, 0.0]``.
    """
    curvature = solution.curvature
    xi1, xi2, xi3, _ = solution.lengths.as_tuple()
    if xi1 > 0 and xi2 > 0:
        raise ConsistencyError("solution turns both left and right")
    profile = []
    if xi1 > 0:
        profile.append(curvature)
    elif xi2 > 0:
        profile.append(-curvature)
    if xi3 > 0 or not profile:
        profile.append(0.0)
    allowed = ([curvature, 0.0], [-curvature, 0.0], [0.0], [curvature], [-curvature])
    if profile not in allowed:
        raise ConsistencyError(f"unexpected control pattern {profile}")
    arc_sign = 1 if xi1 > 0 else -1 if xi2 > 0 else 0
    if arc_sign and arc_sign != solution.branch.sign:
        raise ConsistencyError("arc direction disagrees with solution branch")
    return profile
