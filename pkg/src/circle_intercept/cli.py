"""Command-line front end.

Subcommands::

    solve   --scenario S [--out F] [--epsilon E]
    curves  --scenario S [--out F] [--grid N]
    times   --scenario S [--out F] [--grid N] [--beta-max R]
    path    --scenario S [--out F] [--samples M]

Exit codes: 0 success, 2 bad input, 3 no feasible path, 4 verification failed.
"""

from __future__ import annotations

import argparse
import contextlib
import csv
import dataclasses
import io
import json
import math
import sys

import numpy as np

from .dubins import MODE_ORDER, d_csc_grid, mode_lengths
from .exceptions import AllModesInfeasible, ScenarioError, VerificationFailed
from .intercept import (
    delta_t_grid,
    solve,
    target_pose_at,
    target_time,
    verify_interception,
)
from .scenario_io import load_scenario, solution_report

EXIT_OK, EXIT_INPUT, EXIT_INFEASIBLE, EXIT_VERIFY = 0, 2, 3, 4


def _fmt(value) -> str:
    if isinstance(value, str):
        return value
    value = float(value)
    return "" if math.isnan(value) else f"{value:.17g}"


@contextlib.contextmanager
def _output(path):
    if path is None or path == "-":
        yield sys.stdout
    else:
        with open(path, "w", encoding="utf-8", newline="") as fh:
            yield fh


def _write_table(path, header, rows):
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow([_fmt(v) for v in row])
    with _output(path) as fh:
        fh.write(buf.getvalue())


def _solve_verified(scenario):
    solution = solve(scenario)
    try:
        report = verify_interception(scenario, solution)
    except VerificationFailed as exc:
        return solution, exc.report
    return solution, report


def cmd_solve(args, scenario) -> int:
    solution, report = _solve_verified(scenario)
    doc = solution_report(scenario, solution, report)
    with _output(args.out) as fh:
        fh.write(json.dumps(doc, indent=2) + "\n")
    return EXIT_OK if report.passed else EXIT_VERIFY


def cmd_curves(args, scenario) -> int:
    n = args.grid
    alphas = 2.0 * math.pi * np.arange(n) / n
    lengths = mode_lengths(scenario.pursuer, scenario.circle, scenario.rho, alphas)
    best, idx = d_csc_grid(scenario.pursuer, scenario.circle, scenario.rho, alphas)
    rows = (
        [alphas[i], *lengths[:, i], best[i], MODE_ORDER[idx[i]].name if idx[i] >= 0 else ""]
        for i in range(n)
    )
    header = ["alpha", *(f"D_{m.name}" for m in MODE_ORDER), "D_CSC", "mode"]
    _write_table(args.out, header, rows)
    return EXIT_OK


def cmd_times(args, scenario) -> int:
    beta_max = args.beta_max
    if beta_max is None:
        beta_max = max(4.0 * math.pi, 2.0 * solve(scenario).beta_star)
    betas = np.linspace(0.0, beta_max, args.grid)
    t_t = target_time(scenario, betas)
    dt = delta_t_grid(scenario, betas)
    rows = zip(betas, scenario.alpha_at(betas), dt + t_t, t_t, dt)
    _write_table(args.out, ["beta", "alpha", "T_p", "T_t", "delta_t"], rows)
    return EXIT_OK


def cmd_path(args, scenario) -> int:
    solution, report = _solve_verified(scenario)
    if not report.passed:
        print(f"error: solution failed verification: {report.failed_clauses()}", file=sys.stderr)
        return EXIT_VERIFY
    samples = solution.path.sample(args.samples)
    rows = []
    for s, x, y, heading in samples:
        t = s / scenario.v_p
        target = target_pose_at(scenario, t)
        rows.append((s, t, x, y, heading, target.x, target.y))
    header = ["s", "t", "x", "y", "heading", "target_x", "target_y"]
    _write_table(args.out, header, rows)
    return EXIT_OK


def _positive_int(minimum):
    def parse(text):
        value = int(text)
        if value < minimum:
            raise argparse.ArgumentTypeError(f"must be >= {minimum}")
        return value

    return parse


def _positive_float(text):
    value = float(text)
    if not (math.isfinite(value) and value > 0):
        raise argparse.ArgumentTypeError("must be a positive number")
    return value


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="circle-intercept",
        description="Curvature-constrained interception of a target moving on a circle.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, func, help):
        p = sub.add_parser(name, help=help)
        p.add_argument("--scenario", required=True, help="scenario JSON file")
        p.add_argument("--out", default=None, help="output file (default: stdout)")
        p.add_argument("--epsilon", type=_positive_float, default=None,
                       help="override the scenario's time tolerance [s]")
        p.set_defaults(func=func)
        return p

    add("solve", cmd_solve, "solve the interception and write a JSON report")
    p = add("curves", cmd_curves, "CSC mode lengths over the target circle (CSV)")
    p.add_argument("--grid", type=_positive_int(2), default=1000)
    p = add("times", cmd_times, "pursuer and target travel times (CSV)")
    p.add_argument("--grid", type=_positive_int(2), default=1000)
    p.add_argument("--beta-max", type=_positive_float, default=None,
                   help="largest travel angle [rad] (default: twice the solution)")
    p = add("path", cmd_path, "sampled interception path and target track (CSV)")
    p.add_argument("--samples", type=_positive_int(2), default=200)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        scenario = load_scenario(args.scenario)
    except ScenarioError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    if args.epsilon is not None:
        scenario = dataclasses.replace(scenario, epsilon=args.epsilon)
    try:
        return args.func(args, scenario)
    except AllModesInfeasible as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INFEASIBLE


if __name__ == "__main__":
    sys.exit(main())
