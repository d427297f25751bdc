"""Command-line entry point.

Three subcommands share a scenario file and an output directory:

* ``approximate`` - closed-form pipeline, per-body CSV trajectories.
* ``integrate``   - reference integration, per-body CSVs plus a JSON
  conservation report.
* ``compare``     - both pipelines on a shared grid, per-body error CSVs
  plus a JSON comparison report.

Outputs are deterministic: floats are serialized with shortest
round-trip formatting, rows in fixed order, LF line endings. Exit codes:
0 success, 2 input error, 3 computation error.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from pathlib import Path

import numpy as np

from .assembly import assemble_all, trajectory_vs_angle
from .errors import Collision, ScenarioError, StepFailure, TriconicError
from .integrator import IntegrationResult, integrate, sample_times
from .kinematics import to_barycentric
from .metrics import ComparisonReport, compare
from .scenario import Scenario, apply_sweep, load_scenario

EXIT_OK = 0
EXIT_INPUT = 2
EXIT_COMPUTE = 3


def _fmt(value: float) -> str:
    """Shortest decimal that round-trips to the same float."""
    return repr(float(value))


def _write_csv(path: Path, header: str, columns) -> None:
    lines = [header]
    for row in zip(*columns):
        lines.append(",".join(cell if isinstance(cell, str) else _fmt(cell) for cell in row))
    path.write_text("\n".join(lines) + "\n", encoding="utf-8", newline="\n")


def _finite(value: float, context: str) -> float:
    v = float(value)
    if not math.isfinite(v):
        raise TriconicError(f"non-finite value in {context}")
    return v


def _finite_list(values, context: str) -> list[float]:
    return [_finite(v, context) for v in values]


def _write_json(path: Path, payload: dict) -> None:
    path.write_text(json.dumps(payload, indent=2) + "\n", encoding="utf-8", newline="\n")


def _write_series(out: Path, prefix: str, series, with_method: bool) -> None:
    cols = [series.t, series.theta, series.r, series.x, series.y]
    header = "t,theta,r,x,y"
    if with_method:
        cols.append([series.method] * len(series))
        header += ",method"
    _write_csv(out / f"{prefix}_body{series.subject_index}.csv", header, cols)


def _conservation_dict(result: IntegrationResult) -> dict:
    c = result.conservation
    return {
        "relative_energy_drift": _finite(c.relative_energy_drift, "conservation"),
        "momentum_drift": _finite(c.momentum_drift, "conservation"),
        "angular_momentum_drift": _finite(c.angular_momentum_drift, "conservation"),
    }


def _report_dict(report: ComparisonReport, frame_shifted: bool) -> dict:
    payload = {
        "frame_shifted": frame_shifted,
        "per_body": [
            {
                "body": s.body,
                "max_rel_radial_error": _finite(s.max_rel_radial_error, "per_body"),
                "mean_rel_radial_error": _finite(s.mean_rel_radial_error, "per_body"),
                "max_position_error": _finite(s.max_position_error, "per_body"),
                "max_radius": _finite(s.max_radius, "per_body"),
            }
            for s in report.per_body
        ],
        "collinearity": {
            "t": _finite_list(report.collinearity_t, "collinearity"),
            "defect": _finite_list(report.collinearity_defect, "collinearity"),
        },
        "regime_flags": [
            {
                "t": _finite(f.t, "regime_flags"),
                "body": f.body,
                "kind": f.kind,
                "value": _finite(f.value, "regime_flags"),
            }
            for f in report.regime_flags
        ],
        "conservation": None,
    }
    if report.conservation is not None:
        c = report.conservation
        payload["conservation"] = {
            "relative_energy_drift": _finite(c.relative_energy_drift, "conservation"),
            "momentum_drift": _finite(c.momentum_drift, "conservation"),
            "angular_momentum_drift": _finite(c.angular_momentum_drift, "conservation"),
        }
    return payload


def _oracle_times(scenario: Scenario) -> np.ndarray:
    s = scenario.settings
    if s.horizon is not None and s.sample_interval is not None:
        return sample_times(scenario.config, s)
    if scenario.time_grid is None:
        raise ScenarioError(
            "scenario: a time_grid (or integrator horizon + sample_interval) is required"
        )
    return scenario.time_grid.to_array()


def cmd_approximate(scenario: Scenario, out: Path) -> int:
    if scenario.theta_grid is not None:
        spec = scenario.theta_grid
        try:
            series = trajectory_vs_angle(
                scenario.config, spec.subject, spec.to_array(), scenario.ic_overrides
            )
        except TriconicError as exc:
            stage = getattr(exc, "stage", "sample")
            print(
                f"error: body {spec.subject} failed at stage {stage}: "
                f"{type(exc).__name__}: {exc}",
                file=sys.stderr,
            )
            return EXIT_COMPUTE
        _write_series(out, "approx", series, with_method=True)
        return EXIT_OK

    result = assemble_all(
        scenario.config, scenario.time_grid.to_array(), scenario.ic_overrides
    )
    for series in result.series:
        if series is not None:
            _write_series(out, "approx", series, with_method=True)
    for failure in result.failures:
        print(f"error: {failure}", file=sys.stderr)
    return EXIT_COMPUTE if result.failures else EXIT_OK


def cmd_integrate(scenario: Scenario, out: Path) -> int:
    times = _oracle_times(scenario)
    config = to_barycentric(scenario.config)
    status = EXIT_OK
    try:
        result = integrate(config, scenario.settings, times)
    except (Collision, StepFailure) as exc:
        print(f"error: integration aborted: {type(exc).__name__}: {exc}", file=sys.stderr)
        result = exc.partial
        status = EXIT_COMPUTE
    for series in result.series:
        _write_series(out, "oracle", series, with_method=False)
    _write_json(out / "conservation.json", _conservation_dict(result))
    return status


def cmd_compare(scenario: Scenario, out: Path) -> int:
    if scenario.time_grid is None:
        raise ScenarioError("compare requires a time_grid scenario")
    times = scenario.time_grid.to_array()
    config = to_barycentric(scenario.config)
    frame_shifted = config.bodies != scenario.config.bodies

    approx = assemble_all(config, times, scenario.ic_overrides)
    for failure in approx.failures:
        print(f"error: {failure}", file=sys.stderr)
    if approx.failures:
        return EXIT_COMPUTE
    try:
        oracle = integrate(config, scenario.settings, times)
    except (Collision, StepFailure) as exc:
        print(f"error: oracle integration aborted: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_COMPUTE

    report = compare(approx.series, oracle.series, config, oracle.conservation)
    for rows in report.rows:
        _write_csv(
            out / f"compare_body{rows.body}.csv",
            "t,err_radial_rel,err_pos",
            [rows.t, rows.rel_radial_error, rows.position_error],
        )
    _write_json(out / "report.json", _report_dict(report, frame_shifted))
    return EXIT_OK


COMMANDS = {
    "approximate": cmd_approximate,
    "integrate": cmd_integrate,
    "compare": cmd_compare,
}


def _parse_sweep(spec: str) -> tuple[str, list[tuple[str, float]]]:
    if "=" not in spec:
        raise ScenarioError("--sweep expects <param>=<v1,v2,...>")
    param, _, values = spec.partition("=")
    param = param.strip()
    pairs = []
    for token in values.split(","):
        token = token.strip()
        if not token:
            raise ScenarioError(f"--sweep {param}: empty value")
        try:
            pairs.append((token, float(token)))
        except ValueError as exc:
            raise ScenarioError(f"--sweep {param}: bad value {token!r}") from exc
    if not pairs:
        raise ScenarioError(f"--sweep {param}: no values given")
    return param, pairs


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="triconic",
        description="Closed-form three-body trajectory approximation and its reference oracle.",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    for name, help_text in (
        ("approximate", "closed-form trajectories on the scenario grid"),
        ("integrate", "reference integration of the exact dynamics"),
        ("compare", "run both pipelines and report approximation errors"),
    ):
        p = sub.add_parser(name, help=help_text)
        p.add_argument("--scenario", required=True, help="path to a scenario JSON file")
        p.add_argument("--out", required=True, help="output directory")
        p.add_argument(
            "--dimensionless",
            action="store_true",
            help="force G = 1 regardless of the scenario units",
        )
        p.add_argument(
            "--sweep",
            metavar="PARAM=V1,V2,...",
            help="repeat the command for each value of m1|m2|m3|G, one subdirectory per value",
        )
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    command = COMMANDS[args.command]
    try:
        scenario = load_scenario(args.scenario, dimensionless=args.dimensionless)
        runs: list[tuple[Scenario, Path]]
        if args.sweep:
            param, pairs = _parse_sweep(args.sweep)
            runs = [
                (apply_sweep(scenario, param, value), Path(args.out) / f"{param}={token}")
                for token, value in pairs
            ]
        else:
            runs = [(scenario, Path(args.out))]
    except ScenarioError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT

    status = EXIT_OK
    for run_scenario, out in runs:
        out.mkdir(parents=True, exist_ok=True)
        try:
            status = max(status, command(run_scenario, out))
        except ScenarioError as exc:
            print(f"error: {exc}", file=sys.stderr)
            status = max(status, EXIT_INPUT)
        except TriconicError as exc:
            print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
            status = max(status, EXIT_COMPUTE)
    return status


if __name__ == "__main__":
    sys.exit(main())
