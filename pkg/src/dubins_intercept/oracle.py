"""Brute-force reference solver for cross-checking :mod:`dubins_intercept.solver`.

Evaluates the timing mismatch on a dense turn-angle grid with numpy, bisects
every sign change, and keeps the shortest feasible root. It deliberately
shares nothing with the solver beyond the kinematics primitives.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .kinematics import InvalidInputError, Scenario, TurnDirection, propagate_arc
from .solver import SegmentLengths

DEFAULT_GRID = 100_000
MIN_GRID = 10_000


@dataclass(frozen=True)
class OracleRoot:
    branch: TurnDirection
    phi: float
    lengths: SegmentLengths
    f: float


@dataclass
class OracleResult:
    best: OracleRoot | None
    all_roots: list[OracleRoot] = field(default_factory=list)
    grid_size: int = DEFAULT_GRID


def _legs_vectorized(scenario: Scenario, sign: int, phi: np.ndarray):
    p, t = scenario.pursuer_start, scenario.target_start
    R = scenario.pursuer.turn_radius
    heading = p.heading + sign * phi
    # exit point from the circle centre: c + R*(sin h, -cos h) for left,
    # mirrored for right
    cx = p.x - sign * R * math.sin(p.heading)
    cy = p.y + sign * R * math.cos(p.heading)
    ux, uy = np.cos(heading), np.sin(heading)
    ex = cx + sign * R * uy
    ey = cy - sign * R * ux
    vx, vy = math.cos(scenario.target.heading), math.sin(scenario.target.heading)
    cross = ux * vy - uy * vx
    wx, wy = t.x - ex, t.y - ey
    with np.errstate(divide="ignore", invalid="ignore"):
        xi3 = (wx * vy - wy * vx) / cross
        xi4 = (wx * uy - wy * ux) / cross
    xi3[np.abs(cross) < 1e-10] = np.nan
    xi4[np.abs(cross) < 1e-10] = np.nan
    return xi3, xi4


def _legs_scalar(scenario: Scenario, branch: TurnDirection, phi: float):
    exit = propagate_arc(scenario.pursuer_start, branch, phi * scenario.pursuer.turn_radius, scenario.pursuer.curvature)
    ux, uy = math.cos(exit.heading), math.sin(exit.heading)
    vx, vy = math.cos(scenario.target.heading), math.sin(scenario.target.heading)
    cross = ux * vy - uy * vx
    if abs(cross) < 1e-10:
        return None
    wx, wy = scenario.target_start.x - exit.x, scenario.target_start.y - exit.y
    return (wx * vy - wy * vx) / cross, (wx * uy - wy * ux) / cross


def _mismatch(scenario: Scenario, phi, xi3, xi4):
    R = scenario.pursuer.turn_radius
    return scenario.target.speed * (phi * R + xi3) - scenario.pursuer.speed * xi4


def _degenerate_roots(scenario: Scenario, branch: TurnDirection) -> list[tuple[float, float, float]]:
    """Roots at turn angles where the target travels along the exit line.

    There the coincidence equations lose rank, so the three constraints are
    solved together in the least-squares sense and kept if consistent.
    """
    sign = branch.sign
    th0, th_t = scenario.pursuer_start.heading, scenario.target.heading
    R = scenario.pursuer.turn_radius
    out = []
    for k in range(-3, 4):
        phi = sign * (th_t - th0) + k * math.pi
        if not (0.0 <= phi <= 2 * math.pi):
            continue
        exit = propagate_arc(scenario.pursuer_start, branch, phi * R, scenario.pursuer.curvature)
        A = np.array([
            [math.cos(exit.heading), -math.cos(th_t)],
            [math.sin(exit.heading), -math.sin(th_t)],
            [scenario.target.speed, -scenario.pursuer.speed],
        ])
        b = np.array([
            scenario.target_start.x - exit.x,
            scenario.target_start.y - exit.y,
            -scenario.target.speed * phi * R,
        ])
        sol, *_ = np.linalg.lstsq(A, b, rcond=None)
        if np.max(np.abs(A @ sol - b)) <= 1e-9 * scenario.scale:
            out.append((phi, float(sol[0]), float(sol[1])))
    return out


def oracle_solve(scenario: Scenario, grid_size: int = DEFAULT_GRID) -> OracleResult:
    if not isinstance(scenario, Scenario):
        raise InvalidInputError(f"expected a Scenario, got {type(scenario).__name__}")
    if grid_size < MIN_GRID:
        raise InvalidInputError(f"grid_size must be >= {MIN_GRID}, got {grid_size}")
    R = scenario.pursuer.turn_radius
    tol = 1e-9
    speeds = scenario.pursuer.speed + scenario.target.speed
    uniform = np.linspace(0.0, 2 * math.pi, grid_size)
    roots: list[OracleRoot] = []

    for branch in (TurnDirection.LEFT, TurnDirection.RIGHT):
        # exit heading parallel to the target course -> pole of the mismatch;
        # place samples just either side so no cell hides a root beside it
        offset = branch.sign * (scenario.target.heading - scenario.pursuer_start.heading)
        poles = np.mod(offset, math.pi) + math.pi * np.arange(3)
        poles = poles[poles <= 2 * math.pi]
        extra = np.concatenate([poles - 1e-9, poles + 1e-9])
        extra = extra[(extra > 0) & (extra < 2 * math.pi)]
        phis = np.unique(np.concatenate([uniform, extra]))
        straddles = np.zeros(len(phis) - 1, dtype=bool)
        for q in poles:
            straddles |= (phis[:-1] < q) & (phis[1:] > q)

        xi3, xi4 = _legs_vectorized(scenario, branch.sign, phis)
        g = _mismatch(scenario, phis, xi3, xi4)
        finite = np.isfinite(g)
        s = np.sign(g)
        changes = np.nonzero(
            finite[:-1] & finite[1:] & ~straddles & (s[:-1] * s[1:] <= 0) & (s[:-1] != 0)
        )[0]

        def g_at(phi):
            legs = _legs_scalar(scenario, branch, phi)
            return None if legs is None else _mismatch(scenario, phi, *legs)

        found = []
        for i in changes:
            lo, hi = float(phis[i]), float(phis[i + 1])
            g_lo = g_at(lo)
            if g_lo is None:
                continue
            if g_lo == 0.0:
                found.append(lo)
                continue
            ok = True
            while True:
                mid = 0.5 * (lo + hi)
                if mid in (lo, hi):
                    break
                g_mid = g_at(mid)
                if g_mid is None:
                    ok = False
                    break
                if (g_mid > 0) == (g_lo > 0):
                    lo, g_lo = mid, g_mid
                else:
                    hi = mid
            if not ok:
                continue
            g_hi = g_at(hi)
            phi = lo if g_hi is None or abs(g_lo) <= abs(g_hi) else hi
            val = g_at(phi)
            if val is not None and abs(val) <= 1e-6 * speeds * scenario.scale:
                found.append(phi)

        candidates = []
        for phi in found:
            legs = _legs_scalar(scenario, branch, phi)
            if legs is not None:
                candidates.append((phi, *legs))
        for phi, a, b in _degenerate_roots(scenario, branch):
            if all(abs(phi - c[0]) > 1e-9 for c in candidates):
                candidates.append((phi, a, b))

        for phi, a, b in candidates:
            if a < -tol or b < -tol:
                continue
            arc = phi * R
            a, b = max(a, 0.0), max(b, 0.0)
            if branch is TurnDirection.LEFT:
                lengths = SegmentLengths(arc, 0.0, a, b)
            else:
                lengths = SegmentLengths(0.0, arc, a, b)
            roots.append(OracleRoot(branch, phi, lengths, arc + a + b))

    best = None
    for r in roots:
        if best is None or r.f < best.f - 1e-9:
            best = r
    return OracleResult(best=best, all_roots=roots, grid_size=grid_size)
