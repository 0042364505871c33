"""Built-in benchmark scenarios with their reference results.

Each row pairs a scenario with the reported segment lengths, segment times
and totals. Rows marked ``forced`` were reported for a fixed initial turn
direction rather than as the overall optimum.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .kinematics import Scenario, TurnDirection
from .solver import InterceptSolution, solve

PI = math.pi
TOLERANCE = 0.05

COLUMNS = ("xi1", "xi2", "xi3", "xi4", "t1", "t2", "t3", "t4", "f", "t")


@dataclass(frozen=True)
class TableCase:
    table: int
    label: str
    scenario: Scenario
    reported: tuple[float, ...]
    forced: TurnDirection | None = None
    note: str = ""


def row_values(solution: InterceptSolution) -> tuple[float, ...]:
    """Solution laid out as ``xi1..xi4, t1..t4, f, t``."""
    return (*solution.lengths.as_tuple(), *solution.durations, solution.total_length, solution.total_time)


def format_cell(value: float) -> str:
    return "0" if value == 0 else f"{value:.2f}"


def format_row(values) -> str:
    return " ".join(format_cell(v) for v in values)


def _sc(p, t, vp, vt, r):
    return Scenario.build(p, t, vp, vt, r)


_T1 = _sc((0, 0, 2 * PI / 3), (-5, 0, PI / 2), 5, 1, 1)
_T2 = _sc((0, 0, PI / 3), (8, -2, 2 * PI / 3), 5, 2, 1)
_T3 = _sc((0, 0, PI / 3), (8, 3, PI), 5, 2, 1)

CASES: tuple[TableCase, ...] = (
    TableCase(1, "Optimal Path", _T1, (0.92, 0, 4.30, 1.04, 0.18, 0, 0.86, 1.04, 6.26, 1.04)),
    TableCase(1, "Feasible Path", _T1, (0, 5.70, 6.09, 2.36, 0, 1.14, 1.21, 2.36, 14.16, 2.36), TurnDirection.RIGHT),
    TableCase(2, "Optimal Path", _T2, (0, 1.07, 5.75, 2.73, 0, 0.21, 1.15, 1.36, 9.55, 1.36)),
    TableCase(2, "Feasible Path", _T2, (5.65, 0, 6.63, 4.91, 1.13, 0, 1.33, 2.46, 17.19, 2.46), TurnDirection.LEFT),
    TableCase(3, "Optimal Path", _T3, (0, 0.57, 5.71, 2.51, 0, 0.11, 1.14, 1.26, 8.80, 1.26)),
    TableCase(3, "Feasible Path", _T3, (5.94, 0, 5.03, 4.39, 1.19, 0, 1.00, 2.20, 15.36, 2.20), TurnDirection.LEFT),
    TableCase(
        4, "P(0,0) -> T(8,3)", _sc((0, 0, PI / 3), (8, 3, PI), 5, 2, 3),
        (0, 1.92, 4.41, 2.53, 0, 0.38, 0.88, 1.27, 8.87, 1.27),
    ),
    TableCase(
        4, "P(0,0) -> T(-1,10)", _sc((0, 0, PI / 3), (-1, 10, 3 * PI / 2), 5, 2, 3),
        (2.37, 0, 4.96, 2.93, 0.47, 0, 0.99, 1.46, 10.25, 1.46),
    ),
    TableCase(
        5, "turn rate 1/4 | R=48", _sc((0, 0, 2 * PI / 3), (-100, 0, PI / 2), 12, 5, 48),
        (34.31, 0, 78.39, 46.96, 2.86, 0, 6.53, 9.39, 159.65, 9.39),
        note="target speed 5 inferred from speed coupling",
    ),
    TableCase(
        5, "turn rate 1 | R=12", _sc((0, 0, 2 * PI / 3), (-100, 0, PI / 2), 12, 5, 12),
        (7.64, 0, 102.94, 46.08, 0.64, 0, 8.58, 9.22, 156.66, 9.22),
        note="target speed 5 inferred from speed coupling",
    ),
    TableCase(
        5, "turn rate 4 | R=3", _sc((0, 0, 2 * PI / 3), (-100, 0, PI / 2), 12, 5, 3),
        (1.87, 0, 108.28, 45.89, 0.16, 0, 9.02, 9.18, 156.04, 9.18),
        note="target speed 5 inferred from speed coupling",
    ),
    TableCase(
        6, "target inside turning circle", _sc((0, 0, 2 * PI / 3), (-70, 0, PI / 2), 12, 4, 48),
        (46.71, 0, 32.04, 26.26, 3.89, 0, 2.67, 6.56, 105.01, 6.56),
        note="start positions reconstructed from the reported lengths",
    ),
    TableCase(
        6, "equal speeds", _sc((0, 0, 2 * PI / 3), (-124.28, -72.68, PI / 2), 8, 8, 48),
        (27.47, 0, 117.68, 145.18, 3.43, 0, 14.71, 18.14, 290.33, 18.14),
        note="start positions reconstructed from the reported lengths",
    ),
    TableCase(
        7, "comparison", _sc((1, 0, 0), (2, 2, 5 * PI / 4), 10, 1, 1),
        (1.81, 0, 0.61, 0.24, 0.18, 0, 0.06, 0.24, 2.66, 0.24),
    ),
)

TABLE_IDS = tuple(sorted({c.table for c in CASES}))


def cases_for(table: int) -> list[TableCase]:
    return [c for c in CASES if c.table == table]


def solve_case(case: TableCase) -> InterceptSolution | None:
    branches = (case.forced,) if case.forced else (TurnDirection.LEFT, TurnDirection.RIGHT)
    return solve(case.scenario, branches).best


@dataclass
class CaseOutcome:
    case: TableCase
    computed: tuple[float, ...] | None
    deviations: tuple[float, ...] | None

    @property
    def max_deviation(self) -> float:
        return math.inf if self.deviations is None else max(self.deviations)

    def passed(self, tolerance: float = TOLERANCE) -> bool:
        return self.max_deviation <= tolerance


def evaluate(case: TableCase) -> CaseOutcome:
    best = solve_case(case)
    if best is None:
        return CaseOutcome(case, None, None)
    computed = row_values(best)
    deviations = tuple(abs(c - r) for c, r in zip(computed, case.reported))
    return CaseOutcome(case, computed, deviations)
