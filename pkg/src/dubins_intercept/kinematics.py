"""Planar pose propagation for a constant-speed, curvature-bounded vehicle.

Headings are measured counterclockwise from the x-axis. They stay unwrapped
while propagating so that consecutive arcs compose exactly; use
:func:`normalize_angle` at I/O boundaries.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

TWO_PI = 2.0 * math.pi


class InvalidInputError(ValueError):
    """Raised when an operation receives a non-finite or out-of-range argument."""


def _require_finite(**values: float) -> None:
    for name, value in values.items():
        if not math.isfinite(value):
            raise InvalidInputError(f"{name} must be finite, got {value!r}")


class TurnDirection(enum.Enum):
    LEFT = "left"
    RIGHT = "right"

    @property
    def sign(self) -> int:
        """+1 for a counterclockwise (left) turn, -1 for clockwise."""
        return 1 if self is TurnDirection.LEFT else -1


@dataclass(frozen=True)
class Pose:
    x: float
    y: float
    heading: float

    @property
    def position(self) -> tuple[float, float]:
        return (self.x, self.y)

    def normalized(self) -> Pose:
        return Pose(self.x, self.y, normalize_angle(self.heading))


@dataclass(frozen=True)
class PursuerParams:
    speed: float
    turn_radius: float

    def __post_init__(self):
        _require_finite(speed=self.speed, turn_radius=self.turn_radius)
        if self.speed <= 0:
            raise InvalidInputError(f"pursuer speed must be > 0, got {self.speed}")
        if self.turn_radius <= 0:
            raise InvalidInputError(f"turn radius must be > 0, got {self.turn_radius}")

    @property
    def curvature(self) -> float:
        return 1.0 / self.turn_radius


@dataclass(frozen=True)
class TargetParams:
    speed: float
    heading: float

    def __post_init__(self):
        _require_finite(speed=self.speed, heading=self.heading)
        if self.speed <= 0:
            raise InvalidInputError(f"target speed must be > 0, got {self.speed}")


@dataclass(frozen=True)
class Scenario:
    """One interception problem: pursuer start/limits and target start/motion.

    ``target_start.heading`` is ignored in favour of ``target.heading``; the
    constructor helper :meth:`build` keeps them in sync.
    """

    pursuer_start: Pose
    pursuer: PursuerParams
    target_start: Pose
    target: TargetParams

    def __post_init__(self):
        for label, pose in (("pursuer_start", self.pursuer_start), ("target_start", self.target_start)):
            _require_finite(**{f"{label}.x": pose.x, f"{label}.y": pose.y, f"{label}.heading": pose.heading})

    @classmethod
    def build(
        cls,
        pursuer: tuple[float, float, float],
        target: tuple[float, float, float],
        pursuer_speed: float,
        target_speed: float,
        turn_radius: float,
    ) -> Scenario:
        px, py, ph = pursuer
        tx, ty, th = target
        return cls(
            pursuer_start=Pose(px, py, ph),
            pursuer=PursuerParams(pursuer_speed, turn_radius),
            target_start=Pose(tx, ty, th),
            target=TargetParams(target_speed, th),
        )

    @property
    def scale(self) -> float:
        """Characteristic length used to scale absolute tolerances."""
        p, t = self.pursuer_start, self.target_start
        return max(1.0, self.pursuer.turn_radius, abs(p.x), abs(p.y), abs(t.x), abs(t.y))


def normalize_angle(theta: float) -> float:
    """Wrap ``theta`` into [0, 2*pi)."""
    _require_finite(theta=theta)
    wrapped = math.fmod(theta, TWO_PI)
    if wrapped < 0.0:
        wrapped += TWO_PI
    # fmod of a tiny negative number can round up to exactly 2*pi
    if wrapped >= TWO_PI:
        wrapped = 0.0
    return wrapped


def propagate_arc(start: Pose, direction: TurnDirection, arc_length: float, curvature: float) -> Pose:
    """Advance ``start`` along a circular arc of the given curvature.

    Uses the closed-form update ``x' = x + (sin h' - sin h)/u``,
    ``y' = y - (cos h' - cos h)/u`` with signed curvature ``u``.
    """
    _require_finite(x=start.x, y=start.y, heading=start.heading, arc_length=arc_length, curvature=curvature)
    if curvature <= 0:
        raise InvalidInputError(f"curvature must be > 0, got {curvature}")
    if arc_length < 0:
        raise InvalidInputError(f"arc_length must be >= 0, got {arc_length}")
    u = direction.sign * curvature
    heading = start.heading + u * arc_length
    x = start.x + (math.sin(heading) - math.sin(start.heading)) / u
    y = start.y - (math.cos(heading) - math.cos(start.heading)) / u
    return Pose(x, y, heading)


def propagate_straight(start: Pose, length: float) -> Pose:
    _require_finite(x=start.x, y=start.y, heading=start.heading, length=length)
    if length < 0:
        raise InvalidInputError(f"length must be >= 0, got {length}")
    return Pose(
        start.x + length * math.cos(start.heading),
        start.y + length * math.sin(start.heading),
        start.heading,
    )


def target_position(target_start: Pose, target: TargetParams, elapsed: float) -> Pose:
    """Where a constant-velocity target is after ``elapsed`` time units."""
    _require_finite(elapsed=elapsed)
    if elapsed < 0:
        raise InvalidInputError(f"elapsed must be >= 0, got {elapsed}")
    travelled = target.speed * elapsed
    return Pose(
        target_start.x + travelled * math.cos(target.heading),
        target_start.y + travelled * math.sin(target.heading),
        target.heading,
    )


def turning_circle_center(start: Pose, direction: TurnDirection, radius: float) -> tuple[float, float]:
    # Left circle lies to the left of the heading: (x - R sin h, y + R cos h).
    _require_finite(x=start.x, y=start.y, heading=start.heading, radius=radius)
    if radius <= 0:
        raise InvalidInputError(f"radius must be > 0, got {radius}")
    s = direction.sign
    return (
        start.x - s * radius * math.sin(start.heading),
        start.y + s * radius * math.cos(start.heading),
    )
