#!/usr/bin/env python3
# trident_nilpotent/core/cli.py

"""
cli.py – command-line surface of the toolkit

Subcommands:
    model      print the control fields in the DSL
    analyze    growth vector, privileged transform, hat fields and reports (JSON, or text with --text)
    bracket    one Lie bracket, symbolic and numeric, against the finite-difference oracle
    simulate   exact-model bracket loop: trajectory CSV, pose CSV, SVG
    compare    exact vs nilpotent model under the same loop
    sweep      compare over every loop kind and amplitude, convergence table CSV

Exit status: 0 on success, 1 when ``--strict`` and a verification failed,
2 on any toolkit or I/O error.
"""

import argparse
import csv
import json
import logging
import sys
from pathlib import Path
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from .config import CFG, RunConfig, format_number
from .errors import FieldCountError, NotBracketGeneratingError, RankDeficiencyError, TridentError
from .logging_setup import configure_logging
from ..nilpotent.pipeline import approximate
from ..privcoord.frame import scan_degenerate
from ..sim.experiments import SWEEP_COLUMNS, bracket_displacement, compare, max_slip, sweep, sweep_rows
from ..sim.inputs import BRACKET_KINDS, InputKind
from ..sim.integrator import STATE_COLUMNS
from ..sim.plot import write_svg
from ..trident.model import Parametrization, fields_for
from ..trident.reference import PRINTED_BRACKETS
from ..vfield.field import VectorField, fd_bracket, lie_bracket, load_fields

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_ERROR = 2

# -------------------------------------------------------------------
# Helpers
# -------------------------------------------------------------------

def _number(value: float) -> float:
    return float(format_number(value))


def _dump(payload: Dict) -> str:
    return json.dumps(payload, indent=2)


def load_model(
    config: RunConfig, count: Optional[int] = CFG.control_count,
) -> Tuple[Tuple[VectorField, ...], Parametrization]:
    """
    Fields selected by the configuration and the kinematics that go with them.
    ``count`` is the number of fields the command drives; None accepts any.
    """
    if config.model == "dsl-file":
        if config.dsl_path is None:
            raise TridentError("--model dsl-file needs --dsl PATH")
        fields = load_fields(config.dsl_path)
        if count is not None and len(fields) != count:
            raise FieldCountError(count, len(fields), f"fields in {config.dsl_path}")
        return fields, Parametrization.TRANSFORMED
    parametrization = Parametrization(config.model)
    return fields_for(parametrization), parametrization


def _write_json(path: Path, payload: Dict) -> Path:
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(_dump(payload) + "\n", encoding="utf-8")
    return path


def write_compare_csv(path: Path, report) -> Path:
    """Both trajectories side by side: ``t,x1..x6,hat_x1..hat_x6``."""
    path.parent.mkdir(parents=True, exist_ok=True)
    header = list(STATE_COLUMNS) + [f"hat_{c}" for c in STATE_COLUMNS[1:]]
    with path.open("w", newline="", encoding="utf-8") as handle:
        writer = csv.writer(handle, lineterminator="\n")
        writer.writerow(header)
        for t, q, q_hat in zip(report.exact.times, report.exact.states, report.nilpotent.states):
            writer.writerow([format_number(t), *(format_number(v) for v in q), *(format_number(v) for v in q_hat)])
    return path


def _emits(config: RunConfig, what: str) -> bool:
    return config.emit in (what, "both")

# -------------------------------------------------------------------
# Commands
# -------------------------------------------------------------------

def cmd_model(config: RunConfig, args: argparse.Namespace) -> int:
    fields, _ = load_model(config, count=None)
    for i, g in enumerate(fields, start=1):
        print(f"{g.name or f'g{i}'} = {g.to_dsl()}")
    return EXIT_OK


def cmd_analyze(config: RunConfig, args: argparse.Namespace) -> int:
    fields, _ = load_model(config)
    payload: Dict = {"model": config.model}
    if args.scan_degenerate:
        found = scan_degenerate(fields, config.point)
        payload["degenerate_point"] = None if found is None else found.to_json()
    try:
        approximation = approximate(fields, config.point)
    except RankDeficiencyError as e:
        payload["error"] = {
            "type": "rank_deficiency",
            "message": str(e),
            "achieved_rank": e.achieved_rank,
            "expected_rank": e.expected_rank,
            "point": [_number(v) for v in e.point],
        }
        print(_dump(payload))
        return EXIT_ERROR
    except NotBracketGeneratingError as e:
        payload["error"] = {
            "type": "not_bracket_generating",
            "message": str(e),
            "depth": e.depth,
            "dims": list(e.dims),
        }
        print(_dump(payload))
        return EXIT_ERROR
    if args.text:
        print(approximation.to_text())
    else:
        payload.update(approximation.to_json())
        print(_dump(payload))
    if config.strict and not approximation.passed:
        return EXIT_FAILED
    return EXIT_OK


def cmd_bracket(config: RunConfig, args: argparse.Namespace) -> int:
    fields, _ = load_model(config, count=None)
    i, j = args.pair
    count = len(fields)
    if not (1 <= i <= count and 1 <= j <= count):
        raise TridentError(f"bracket indices must lie in 1..{count}, got {i} {j}")
    bracket = lie_bracket(fields[i - 1], fields[j - 1])
    p = np.asarray(config.point, dtype=float)
    value = bracket.evaluate(p)
    oracle = fd_bracket(fields[i - 1], fields[j - 1], p)
    difference = float(np.max(np.abs(value - oracle)))
    payload: Dict = {
        "pair": [i, j],
        "point": [_number(v) for v in p],
        "symbolic": bracket.to_dsl(),
        "value": [_number(v) for v in value],
        "finite_difference": [_number(v) for v in oracle],
        "max_abs_diff": _number(difference),
        "passed": difference <= CFG.fd_tol,
    }
    printed = PRINTED_BRACKETS.get((min(i, j), max(i, j)))
    if config.model == "transformed" and not np.any(p) and printed is not None:
        sign = 1.0 if i < j else -1.0
        payload["printed"] = [sign * v for v in printed]
        payload["printed_max_abs_diff"] = _number(np.max(np.abs(value - sign * np.asarray(printed))))
    print(_dump(payload))
    if config.strict and not payload["passed"]:
        return EXIT_FAILED
    return EXIT_OK


def cmd_simulate(config: RunConfig, args: argparse.Namespace) -> int:
    fields, parametrization = load_model(config)
    kind = InputKind(config.kind)
    result = bracket_displacement(
        fields, kind, config.amplitude, config.omega, config.steps, config.periods, config.point,
    )
    trajectory = result.trajectory
    out = config.output_dir
    written: List[Path] = []
    if _emits(config, "csv"):
        written.append(trajectory.write_csv(out / f"simulate_{kind.tag}.csv"))
        written.append(trajectory.write_pose_csv(out / f"simulate_{kind.tag}_pose.csv", parametrization))
    if _emits(config, "svg"):
        written.append(write_svg(
            out / f"simulate_{kind.tag}.svg", trajectory,
            parametrization=parametrization, title=f"{kind.value} A={config.amplitude:g}",
        ))
    slip_max = max_slip(trajectory, fields, parametrization)
    payload = {**result.to_json(), "max_slip": _number(slip_max), "files": [str(p) for p in written]}
    print(_dump(payload))
    logger.info("simulate %s: %d files in %s", kind.value, len(written), out)
    if config.strict and slip_max > CFG.slip_tol:
        return EXIT_FAILED
    return EXIT_OK


def cmd_compare(config: RunConfig, args: argparse.Namespace) -> int:
    fields, parametrization = load_model(config)
    kind = InputKind(config.kind)
    approximation = approximate(fields, config.point)
    report = compare(
        fields, approximation.hats_x, kind, config.amplitude, config.omega,
        config.steps, config.periods, parametrization, config.point,
    )
    out = config.output_dir
    if _emits(config, "csv"):
        write_compare_csv(out / f"compare_{kind.tag}.csv", report)
    if _emits(config, "svg"):
        write_svg(
            out / f"compare_{kind.tag}.svg", report.exact, report.nilpotent,
            parametrization=parametrization, title=f"{kind.value} A={config.amplitude:g}",
        )
    payload = {**report.to_json(), "approximation_passed": approximation.passed}
    _write_json(out / f"compare_{kind.tag}.json", payload)
    print(_dump(payload))
    failed = not approximation.passed or report.exact_max_slip > CFG.slip_tol
    if config.strict and failed:
        return EXIT_FAILED
    return EXIT_OK


def cmd_sweep(config: RunConfig, args: argparse.Namespace) -> int:
    fields, parametrization = load_model(config)
    approximation = approximate(fields, config.point)
    reports = sweep(
        fields, approximation.hats_x, BRACKET_KINDS, config.amplitudes, config.omega,
        config.steps, config.periods, parametrization, config.workers, config.point,
    )
    path = config.output_dir / "sweep.csv"
    path.parent.mkdir(parents=True, exist_ok=True)
    with path.open("w", newline="", encoding="utf-8") as handle:
        writer = csv.writer(handle, lineterminator="\n")
        writer.writerow(SWEEP_COLUMNS)
        writer.writerows(sweep_rows(reports))
    print(_dump({"table": str(path), "rows": [r.to_json() for r in reports]}))
    failed = not approximation.passed or any(r.exact_max_slip > CFG.slip_tol for r in reports)
    if config.strict and failed:
        return EXIT_FAILED
    return EXIT_OK


COMMANDS = {
    "model": cmd_model,
    "analyze": cmd_analyze,
    "bracket": cmd_bracket,
    "simulate": cmd_simulate,
    "compare": cmd_compare,
    "sweep": cmd_sweep,
}

# -------------------------------------------------------------------
# Parser
# -------------------------------------------------------------------

def _common_arguments() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", type=Path, help="JSON file with RunConfig fields")
    common.add_argument("--model", "--which", dest="model", choices=("original", "transformed", "dsl-file"))
    common.add_argument("--dsl", dest="dsl_path", type=Path, help="file of DSL vector fields")
    common.add_argument("--point", type=float, nargs=6, metavar="X")
    common.add_argument("--kind", choices=[k.value for k in BRACKET_KINDS])
    common.add_argument("--amplitude", "-A", type=float)
    common.add_argument("--omega", type=float)
    common.add_argument("--periods", type=int)
    common.add_argument("--steps", type=int)
    common.add_argument("--amplitudes", type=float, nargs="+")
    common.add_argument("--output-dir", dest="output_dir", type=Path)
    common.add_argument("--emit", choices=("csv", "svg", "both"))
    common.add_argument("--workers", type=int)
    common.add_argument("--strict", action="store_true", default=None, help="exit 1 on a failed verification")
    common.add_argument("--log-json", action="store_true", help="structured JSON log lines on stderr")
    common.add_argument("--verbose", "-v", action="store_true")
    return common


def build_parser() -> argparse.ArgumentParser:
    common = _common_arguments()
    parser = argparse.ArgumentParser(
        prog="trident-nilpotent",
        description="Nilpotent approximation and bracket-motion simulation of the trident snake",
    )
    subparsers = parser.add_subparsers(dest="command", required=True)
    subparsers.add_parser("model", parents=[common], help="print the control fields")
    analyze = subparsers.add_parser("analyze", parents=[common], help="privileged coordinates and hat fields")
    analyze.add_argument("--scan-degenerate", action="store_true", help="grid-scan the angles for a singular frame")
    analyze.add_argument("--text", action="store_true", help="aligned text report instead of JSON")
    bracket = subparsers.add_parser("bracket", parents=[common], help="one Lie bracket [g_i, g_j]")
    bracket.add_argument("--pair", type=int, nargs=2, default=(1, 2), metavar=("I", "J"))
    subparsers.add_parser("simulate", parents=[common], help="exact-model bracket loop")
    subparsers.add_parser("compare", parents=[common], help="exact vs nilpotent model")
    subparsers.add_parser("sweep", parents=[common], help="compare over kinds and amplitudes")
    return parser


CONFIG_FIELDS = (
    "model", "dsl_path", "point", "kind", "amplitude", "omega", "periods", "steps",
    "amplitudes", "output_dir", "emit", "strict", "workers",
)


def config_from_args(args: argparse.Namespace) -> RunConfig:
    """Flags override ``--config`` file values, which override defaults."""
    overrides = {name: getattr(args, name) for name in CONFIG_FIELDS if getattr(args, name) is not None}
    if "point" in overrides:
        overrides["point"] = tuple(overrides["point"])
    if args.config is not None:
        overrides = {k: (str(v) if isinstance(v, Path) else v) for k, v in overrides.items()}
        return RunConfig.from_json_file(args.config, **overrides)
    return RunConfig.build(**overrides)


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    configure_logging(json_output=args.log_json, verbose=args.verbose)
    try:
        config = config_from_args(args)
        return COMMANDS[args.command](config, args)
    except (TridentError, ValueError, OSError) as e:
        message = str(e).splitlines()[0] if str(e) else type(e).__name__
        print(f"trident-nilpotent {args.command}: {message}", file=sys.stderr)
        logger.debug("command %s failed", args.command, exc_info=True)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
