"""Shortest arc-then-straight paths for intercepting a moving target."""

from .kinematics import (
    InvalidInputError,
    Pose,
    PursuerParams,
    Scenario,
    TargetParams,
    TurnDirection,
    normalize_angle,
    propagate_arc,
    propagate_straight,
    target_position,
    turning_circle_center,
)
from .solver import (
    ConsistencyError,
    InterceptSolution,
    SegmentLengths,
    SolveReport,
    Status,
    check_model_constraints,
    control_profile,
    exit_pose,
    linear_subsolve,
    solve,
    solve_branch,
    timing_residual,
    turning_circle_clearance,
)

__version__ = "0.1.0"
