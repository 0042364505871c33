"""Scenario files, CSV trajectory export and SVG plots."""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from xml.sax.saxutils import quoteattr

from .kinematics import Pose, PursuerParams, Scenario, TargetParams, TurnDirection, turning_circle_center
from .sampler import Trajectory
from .solver import InterceptSolution

PURSUER_KEYS = {"x", "y", "heading", "speed", "turn_radius"}
TARGET_KEYS = {"x", "y", "heading", "speed"}
SOLVER_KEYS = {"grid_size", "arc_samples", "line_samples"}
TOP_KEYS = {"pursuer", "target", "solver"}


class ScenarioFileError(ValueError):
    def __init__(self, message: str, line: int | None = None, column: int | None = None):
        where = f" (line {line}, column {column})" if line is not None else ""
        super().__init__(f"{message}{where}")
        self.line = line
        self.column = column


@dataclass
class ScenarioFile:
    scenario: Scenario
    solver: dict[str, int] = field(default_factory=dict)


def _number(section: str, key: str, value) -> float:
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise ScenarioFileError(f"{section}.{key} must be a number, got {value!r}")
    value = float(value)
    if not math.isfinite(value):
        raise ScenarioFileError(f"{section}.{key} must be finite")
    return value


def _section(doc: dict, name: str, keys: set[str], required: bool = True) -> dict:
    if name not in doc:
        if required:
            raise ScenarioFileError(f"missing section {name!r}")
        return {}
    body = doc[name]
    if not isinstance(body, dict):
        raise ScenarioFileError(f"section {name!r} must be an object")
    unknown = set(body) - keys
    if unknown:
        raise ScenarioFileError(f"unknown keys in {name!r}: {', '.join(sorted(unknown))}")
    if required:
        missing = keys - set(body)
        if missing:
            raise ScenarioFileError(f"missing keys in {name!r}: {', '.join(sorted(missing))}")
    return body


def _reject_constants(token: str):
    raise ScenarioFileError(f"non-finite number {token} is not allowed")


def parse_scenario(text: str, degrees: bool = False) -> ScenarioFile:
    """Parse a scenario document; ``degrees`` converts headings to radians."""
    try:
        doc = json.loads(text, parse_constant=_reject_constants)
    except json.JSONDecodeError as exc:
        raise ScenarioFileError(exc.msg, exc.lineno, exc.colno) from None
    if not isinstance(doc, dict):
        raise ScenarioFileError("top level must be an object")
    unknown = set(doc) - TOP_KEYS
    if unknown:
        raise ScenarioFileError(f"unknown top-level keys: {', '.join(sorted(unknown))}")
    p = {k: _number("pursuer", k, v) for k, v in _section(doc, "pursuer", PURSUER_KEYS).items()}
    t = {k: _number("target", k, v) for k, v in _section(doc, "target", TARGET_KEYS).items()}
    solver = {}
    for k, v in _section(doc, "solver", SOLVER_KEYS, required=False).items():
        if isinstance(v, bool) or not isinstance(v, int) or v <= 0:
            raise ScenarioFileError(f"solver.{k} must be a positive integer, got {v!r}")
        solver[k] = v
    for section, values in (("pursuer", p), ("target", t)):
        if values["speed"] <= 0:
            raise ScenarioFileError(f"{section}.speed must be > 0")
    if p["turn_radius"] <= 0:
        raise ScenarioFileError("pursuer.turn_radius must be > 0")
    if degrees:
        p["heading"] = math.radians(p["heading"])
        t["heading"] = math.radians(t["heading"])
    scenario = Scenario(
        pursuer_start=Pose(p["x"], p["y"], p["heading"]),
        pursuer=PursuerParams(p["speed"], p["turn_radius"]),
        target_start=Pose(t["x"], t["y"], t["heading"]),
        target=TargetParams(t["speed"], t["heading"]),
    )
    return ScenarioFile(scenario, solver)


def scenario_to_dict(scenario: Scenario, solver: dict[str, int] | None = None) -> dict:
    p, t = scenario.pursuer_start, scenario.target_start
    doc = {
        "pursuer": {
            "x": p.x,
            "y": p.y,
            "heading": p.heading,
            "speed": scenario.pursuer.speed,
            "turn_radius": scenario.pursuer.turn_radius,
        },
        "target": {"x": t.x, "y": t.y, "heading": scenario.target.heading, "speed": scenario.target.speed},
    }
    if solver:
        doc["solver"] = dict(solver)
    return doc


def dump_scenario(scenario: Scenario, solver: dict[str, int] | None = None) -> str:
    return json.dumps(scenario_to_dict(scenario, solver), indent=2) + "\n"


def solution_to_dict(solution: InterceptSolution) -> dict:
    lengths = solution.lengths
    return {
        "branch": solution.branch.value,
        "lengths": {"xi1": lengths.xi1, "xi2": lengths.xi2, "xi3": lengths.xi3, "xi4": lengths.xi4},
        "durations": list(solution.durations),
        "total_length": solution.total_length,
        "total_time": solution.total_time,
        "intercept_point": list(solution.intercept_point),
    }


def trajectory_csv(trajectory: Trajectory) -> str:
    lines = ["actor,time,x,y"]
    for actor, samples in (("pursuer", trajectory.pursuer_samples), ("target", trajectory.target_samples)):
        for t, (x, y) in samples:
            lines.append(f"{actor},{t:.9g},{x:.9g},{y:.9g}")
    return "\n".join(lines) + "\n"


def _fmt(v: float) -> str:
    return f"{v:.6f}".rstrip("0").rstrip(".") if v != 0 else "0"


def trajectory_svg(trajectory: Trajectory, scenario: Scenario, solution: InterceptSolution) -> str:
    """Static plot in world coordinates (y flipped by a group transform)."""
    R = scenario.pursuer.turn_radius
    centers = {
        d: turning_circle_center(scenario.pursuer_start, d, R) for d in (TurnDirection.LEFT, TurnDirection.RIGHT)
    }
    xs = [pt[0] for _, pt in trajectory.pursuer_samples + trajectory.target_samples]
    ys = [pt[1] for _, pt in trajectory.pursuer_samples + trajectory.target_samples]
    for cx, cy in centers.values():
        xs += [cx - R, cx + R]
        ys += [cy - R, cy + R]
    xmin, xmax, ymin, ymax = min(xs), max(xs), min(ys), max(ys)
    w = max(xmax - xmin, 1e-9)
    h = max(ymax - ymin, 1e-9)
    mx, my = 0.1 * w, 0.1 * h
    vx, vy = xmin - mx, -(ymax + my)
    vw, vh = w + 2 * mx, h + 2 * my
    marker = 0.01 * max(vw, vh)

    def points(samples):
        return " ".join(f"{_fmt(x)},{_fmt(y)}" for _, (x, y) in samples)

    ix, iy = solution.intercept_point
    parts = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" viewBox="{_fmt(vx)} {_fmt(vy)} {_fmt(vw)} {_fmt(vh)}">',
        '<g transform="scale(1,-1)" fill="none" stroke-width="1">',
    ]
    for d, (cx, cy) in centers.items():
        active = d is solution.branch and solution.arc_length > 0
        parts.append(
            f'<circle id={quoteattr(d.value + "-circle")} cx="{_fmt(cx)}" cy="{_fmt(cy)}" r="{_fmt(R)}" '
            f'stroke="{"#888888" if active else "#cccccc"}" stroke-dasharray="4 2" '
            'vector-effect="non-scaling-stroke"/>'
        )
    parts.append(
        f'<polyline id="target" points="{points(trajectory.target_samples)}" stroke="#d62728" '
        'vector-effect="non-scaling-stroke"/>'
    )
    parts.append(
        f'<polyline id="pursuer" points="{points(trajectory.pursuer_samples)}" stroke="#1f77b4" '
        'vector-effect="non-scaling-stroke"/>'
    )
    parts.append(f'<circle id="intercept" cx="{_fmt(ix)}" cy="{_fmt(iy)}" r="{_fmt(marker)}" fill="#000000"/>')
    parts.append("</g>")
    parts.append("</svg>")
    return "\n".join(parts) + "\n"
