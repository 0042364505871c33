"""Time-stamped points along a solved pursuer path and the target's course."""

from __future__ import annotations

import math
from dataclasses import dataclass

from .kinematics import InvalidInputError, Scenario
from .solver import InterceptSolution

DEFAULT_SAMPLES = 200

Sample = tuple[float, tuple[float, float]]


@dataclass(frozen=True)
class Trajectory:
    pursuer_samples: list[Sample]
    target_samples: list[Sample]
    intercept: Sample


def _arc_samples(scenario: Scenario, solution: InterceptSolution, m: int) -> list[Sample]:
    # Heading steps by a fixed increment; positions come from the closed form
    # anchored at the start pose, so the points stay on the turning circle.
    p = scenario.pursuer_start
    a = scenario.pursuer.curvature
    sgn = solution.branch.sign
    sweep = sgn * a * solution.arc_length
    step = sweep / m
    t_arc = solution.arc_length / scenario.pursuer.speed
    out = []
    heading = p.heading
    for i in range(1, m + 1):
        heading += step
        x = p.x + sgn * (math.sin(heading) - math.sin(p.heading)) / a
        y = p.y - sgn * (math.cos(heading) - math.cos(p.heading)) / a
        out.append((t_arc * i / m, (x, y)))
    return out


def sample(
    solution: InterceptSolution,
    scenario: Scenario,
    arc_samples: int = DEFAULT_SAMPLES,
    line_samples: int = DEFAULT_SAMPLES,
) -> Trajectory:
    """Discretise the pursuer's arc and straight leg and the target's run.

    Each trajectory starts with its initial point at t = 0; a zero-length
    segment adds no further points.
    """
    if arc_samples < 2 or line_samples < 2:
        raise InvalidInputError("arc_samples and line_samples must both be >= 2")
    vp, vt = scenario.pursuer.speed, scenario.target.speed
    p = scenario.pursuer_start
    pursuer: list[Sample] = [(0.0, (p.x, p.y))]

    t_arc = solution.arc_length / vp
    if solution.arc_length > 0:
        pursuer.extend(_arc_samples(scenario, solution, arc_samples))

    exit_pose = solution.segment_poses[0][1]
    xi3 = solution.lengths.xi3
    if xi3 > 0:
        x0, y0 = exit_pose.x, exit_pose.y
        c, s = math.cos(exit_pose.heading), math.sin(exit_pose.heading)
        t3 = xi3 / vp
        for j in range(1, line_samples + 1):
            d = xi3 * j / line_samples
            pursuer.append((t_arc + t3 * j / line_samples, (x0 + d * c, y0 + d * s)))

    t0 = scenario.target_start
    target: list[Sample] = [(0.0, (t0.x, t0.y))]
    t4 = solution.durations[3]
    if t4 > 0:
        c, s = math.cos(scenario.target.heading), math.sin(scenario.target.heading)
        for j in range(1, line_samples + 1):
            tj = t4 * j / line_samples
            target.append((tj, (t0.x + vt * c * tj, t0.y + vt * s * tj)))

    return Trajectory(pursuer, target, (solution.total_time, solution.intercept_point))
