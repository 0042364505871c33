"""Command-line front end.

    dubins-intercept solve scenario.json [--branch left|right] [--json]
    dubins-intercept simulate scenario.json --out traj.csv [--svg plot.svg]
    dubins-intercept tables (--table N | --all)

Exit codes: 0 success, 1 usage/IO/parse error (or, for ``tables``, a
reproduced cell outside tolerance), 2 infeasible.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import tables
from .io import ScenarioFileError, dump_scenario, parse_scenario, solution_to_dict, trajectory_csv, trajectory_svg
from .kinematics import TurnDirection
from .sampler import DEFAULT_SAMPLES, sample
from .solver import GRID_INTERVALS, SegmentLengths, check_model_constraints, solve

EXIT_OK = 0
EXIT_ERROR = 1
EXIT_INFEASIBLE = 2

HEADER = "xi1 xi2 xi3 xi4 t1 t2 t3 t4 f t"


def _load(path: str, degrees: bool):
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise ScenarioFileError(f"cannot read {path}: {exc.strerror}") from None
    return parse_scenario(text, degrees=degrees)


def _branches(choice: str | None):
    if choice is None:
        return (TurnDirection.LEFT, TurnDirection.RIGHT)
    return (TurnDirection(choice),)


def cmd_solve(args) -> int:
    doc = _load(args.scenario, args.degrees)
    intervals = doc.solver.get("grid_size", GRID_INTERVALS)
    report = solve(doc.scenario, _branches(args.branch), intervals)
    best = report.best
    if args.json:
        doc = {"status": report.status.value, "solution": None}
        if best is not None:
            doc["solution"] = solution_to_dict(best)
            doc["residuals"] = list(report.residuals)
        print(json.dumps(doc, indent=2))
    elif best is None:
        print("status: infeasible")
    else:
        print(f"status: optimal ({best.branch.value} turn)")
        print(HEADER)
        print(tables.format_row(tables.row_values(best)))
    return EXIT_OK if best is not None else EXIT_INFEASIBLE


def cmd_simulate(args) -> int:
    doc = _load(args.scenario, args.degrees)
    intervals = doc.solver.get("grid_size", GRID_INTERVALS)
    report = solve(doc.scenario, _branches(args.branch), intervals)
    if report.best is None:
        print("status: infeasible", file=sys.stderr)
        return EXIT_INFEASIBLE
    m = args.arc_samples or doc.solver.get("arc_samples", DEFAULT_SAMPLES)
    k = args.line_samples or doc.solver.get("line_samples", DEFAULT_SAMPLES)
    traj = sample(report.best, doc.scenario, m, k)
    outputs = [(args.out, trajectory_csv(traj))]
    if args.svg:
        outputs.append((args.svg, trajectory_svg(traj, doc.scenario, report.best)))
    for path, text in outputs:
        try:
            Path(path).write_text(text, encoding="utf-8")
        except OSError as exc:
            print(f"error: cannot write {path}: {exc.strerror}", file=sys.stderr)
            return EXIT_ERROR
    return EXIT_OK


def render_table(table: int) -> tuple[list[str], bool]:
    lines = [f"Table {table}"]
    ok = True
    for case in tables.cases_for(table):
        outcome = tables.evaluate(case)
        tag = f" [forced {case.forced.value}]" if case.forced else ""
        lines.append(f"  {case.label}{tag}")
        if case.note:
            lines.append(f"    note: {case.note}")
        lines.append(f"    {'':9}{HEADER}")
        lines.append(f"    {'reported':9}{tables.format_row(case.reported)}")
        if outcome.computed is None:
            lines.append(f"    {'computed':9}infeasible")
            ok = False
            continue
        lines.append(f"    {'computed':9}{tables.format_row(outcome.computed)}")
        lines.append(f"    {'|dev|':9}{' '.join(f'{d:.3f}' for d in outcome.deviations)}")
        passed = outcome.passed()
        ok = ok and passed
        lines.append(f"    max |dev| = {outcome.max_deviation:.3f} -> {'PASS' if passed else 'FAIL'}")
    return lines, ok


def cmd_tables(args) -> int:
    ids = tables.TABLE_IDS if args.all else (args.table,)
    if any(t not in tables.TABLE_IDS for t in ids):
        print(f"error: unknown table {args.table}; choose from {list(tables.TABLE_IDS)}", file=sys.stderr)
        return EXIT_ERROR
    all_ok = True
    for t in ids:
        lines, ok = render_table(t)
        print("\n".join(lines))
        all_ok = all_ok and ok
    print(f"tolerance {tables.TOLERANCE}: {'all cells within tolerance' if all_ok else 'some cells out of tolerance'}")
    return EXIT_OK if all_ok else EXIT_ERROR


def cmd_check(args) -> int:
    doc = _load(args.scenario, args.degrees)
    residuals = check_model_constraints(doc.scenario, SegmentLengths(*args.lengths))
    print(" ".join(f"{r:.3e}" for r in residuals))
    return EXIT_OK


def cmd_normalize(args) -> int:
    doc = _load(args.scenario, args.degrees)
    sys.stdout.write(dump_scenario(doc.scenario, doc.solver))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="dubins-intercept", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def scenario_cmd(name, help):
        p = sub.add_parser(name, help=help)
        p.add_argument("scenario", help="scenario JSON file")
        p.add_argument("--degrees", action="store_true", help="headings in the file are in degrees")
        return p

    p = scenario_cmd("solve", "solve one scenario and print its table row")
    p.add_argument("--branch", choices=["left", "right"], help="restrict to one initial turn direction")
    p.add_argument("--json", action="store_true", help="print a JSON report instead of a table row")
    p.set_defaults(func=cmd_solve)

    p = scenario_cmd("simulate", "sample the optimal trajectories to CSV (and optionally SVG)")
    p.add_argument("--out", required=True, help="CSV output path")
    p.add_argument("--svg", help="SVG output path")
    p.add_argument("--branch", choices=["left", "right"])
    p.add_argument("--arc-samples", type=int, help=f"points per arc (default {DEFAULT_SAMPLES})")
    p.add_argument("--line-samples", type=int, help=f"points per straight leg (default {DEFAULT_SAMPLES})")
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("tables", help="reproduce the built-in benchmark tables")
    group = p.add_mutually_exclusive_group(required=True)
    group.add_argument("--table", type=int)
    group.add_argument("--all", action="store_true")
    p.set_defaults(func=cmd_tables)

    p = scenario_cmd("check", "constraint residuals for given segment lengths")
    p.add_argument("lengths", type=float, nargs=4, metavar=("XI1", "XI2", "XI3", "XI4"))
    p.set_defaults(func=cmd_check)

    p = scenario_cmd("normalize", "re-serialise a scenario file (headings in radians)")
    p.set_defaults(func=cmd_normalize)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_ERROR if exc.code else EXIT_OK
    for attr in ("arc_samples", "line_samples"):
        value = getattr(args, attr, None)
        if value is not None and value < 2:
            print(f"error: --{attr.replace('_', '-')} must be >= 2", file=sys.stderr)
            return EXIT_ERROR
    try:
        return args.func(args)
    except ScenarioFileError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
