"""Command-line front end.

Exit codes: 0 success, 2 invalid input (unreadable or schema-violating
files, bad flags or indices), 3 numerical-contract violation (Monte
Carlo disagreement beyond 4 standard errors, a broken analytic bound,
or inconsistent closed-form routes).
"""

from __future__ import annotations

import argparse
import dataclasses
import json
import sys
from pathlib import Path

from .fidelity import (
    PartitionedEvolution,
    TargetGate,
    average_fidelity,
    block_population_bound,
    fidelity_report,
    nuclear_norm,
    optimal_embedding_fidelity,
    projected_fidelity,
)
from .haar import SampleConfig, average_fidelity_mc
from .linalg import polar
from .matrixio import load_matrix, matrix_to_jsonable
from .qubit_resonator import SystemParams, sweep, sweep_csv
from .tolerances import DEFAULT_TOLS


def _indices_arg(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(part) for part in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(
            f"indices must be comma-separated integers, got {text!r}"
        )


def _tols(args):
    if getattr(args, "tol", None) is None:
        return DEFAULT_TOLS
    if args.tol <= 0:
        raise ValueError(f"--tol must be positive, got {args.tol}")
    return dataclasses.replace(DEFAULT_TOLS, unitary=args.tol, hermitian=args.tol)


def _emit(payload: dict, out: str | None) -> None:
    text = json.dumps(payload, indent=2) + "\n"
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def _partition(args, tols) -> PartitionedEvolution:
    return PartitionedEvolution(load_matrix(args.evolution), args.indices, tols)


def _target(args, tols) -> TargetGate:
    return TargetGate(load_matrix(args.target), tols=tols)


def _cmd_favg(args) -> int:
    tols = _tols(args)
    value = average_fidelity(load_matrix(args.target), load_matrix(args.evolution), tols)
    _emit({"f_avg": value}, args.out)
    return 0


def _cmd_f1(args) -> int:
    tols = _tols(args)
    _emit({"f1": projected_fidelity(_target(args, tols), _partition(args, tols))}, args.out)
    return 0


def _cmd_f2(args) -> int:
    tols = _tols(args)
    value = optimal_embedding_fidelity(_target(args, tols), _partition(args, tols), tols)
    _emit({"f2": value}, args.out)
    return 0


def _cmd_report(args) -> int:
    tols = _tols(args)
    report = fidelity_report(_target(args, tols), _partition(args, tols), tols)
    _emit(report.as_dict(), args.out)
    return 0


def _cmd_mc_verify(args) -> int:
    tols = _tols(args)
    u_target = load_matrix(args.target)
    u_actual = load_matrix(args.evolution)
    trace_value = average_fidelity(u_target, u_actual, tols)
    estimate = average_fidelity_mc(u_target, u_actual,
                                   SampleConfig(args.seed, args.samples), tols)
    agrees = abs(estimate.mean - trace_value) <= 4.0 * estimate.std_error
    _emit(
        {
            "trace_formula": trace_value,
            "monte_carlo": estimate.as_dict(),
            "agrees_within_4_sigma": agrees,
        },
        args.out,
    )
    return 0 if agrees else 3


def _cmd_sweep(args) -> int:
    tols = _tols(args)
    params = SystemParams(
        unit_convention="angular_2pi" if args.units == "angular" else "raw"
    )
    result = sweep(params, args.t_start, args.t_end, args.points,
                   args.compensate_phases, tols)
    text = sweep_csv(result, params, args.compensate_phases)
    if args.out:
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)
    if args.plot is not None:
        from . import plotting  # matplotlib import deferred until needed

        path = args.plot
        if not path:
            path = str(Path(args.out).with_suffix(".png")) if args.out else "sweep.png"
        plotting.save_sweep_figure(result, path)
    return 0


def _cmd_polar(args) -> int:
    tols = _tols(args)
    factors = polar(load_matrix(args.matrix), tols)
    _emit(
        {
            "unitary_factor": matrix_to_jsonable(factors.unitary_factor),
            "hermitian_factor": matrix_to_jsonable(factors.hermitian_factor),
        },
        args.out,
    )
    return 0


def _cmd_smax(args) -> int:
    tols = _tols(args)
    _emit({"s_max": nuclear_norm(load_matrix(args.matrix), tols)}, args.out)
    return 0


def _cmd_theorem1(args) -> int:
    tols = _tols(args)
    value, bound = block_population_bound(load_matrix(args.matrix), args.p, args.q, tols)
    holds = value <= bound + tols.bound_slack
    _emit({"value": value, "bound": bound, "holds": holds}, args.out)
    return 0 if holds else 3


def _add_common(sub, target=False, evolution=False, indices=False):
    if target:
        sub.add_argument("--target", required=True, help="target gate (matrix JSON)")
    if evolution:
        sub.add_argument("--evolution", required=True, help="full evolution (matrix JSON)")
    if indices:
        sub.add_argument("--indices", required=True, type=_indices_arg,
                         help="computational-subspace indices, e.g. 0,1,3,4")
    sub.add_argument("--tol", type=float, default=None,
                     help="override the unitarity/Hermiticity validation tolerance")
    sub.add_argument("--out", default=None, help="write output to this file instead of stdout")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="leakfid",
        description="Leakage-aware process fidelity between a target gate and "
                    "the computational block of a full unitary evolution.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("favg", help="trace-formula averaged fidelity of two full-space operators")
    _add_common(p, target=True, evolution=True)
    p.set_defaults(func=_cmd_favg)

    p = sub.add_parser("f1", help="projected (subspace) fidelity")
    _add_common(p, target=True, evolution=True, indices=True)
    p.set_defaults(func=_cmd_f1)

    p = sub.add_parser("f2", help="closed-form maximized embedding fidelity")
    _add_common(p, target=True, evolution=True, indices=True)
    p.set_defaults(func=_cmd_f2)

    p = sub.add_parser("report", help="full fidelity report as JSON")
    _add_common(p, target=True, evolution=True, indices=True)
    p.set_defaults(func=_cmd_report)

    p = sub.add_parser("mc-verify",
                       help="cross-check the trace formula against a Monte Carlo estimate")
    _add_common(p, target=True, evolution=True)
    p.add_argument("--seed", type=int, default=0, help="Monte Carlo seed (default 0)")
    p.add_argument("--samples", type=int, default=200_000,
                   help="number of Haar samples (default 200000)")
    p.set_defaults(func=_cmd_mc_verify)

    p = sub.add_parser("sweep", help="qubit-resonator controlled-Z fidelity sweep (CSV)")
    p.add_argument("--t-start", type=float, default=0.0, help="grid start in ns")
    p.add_argument("--t-end", type=float, default=50.0, help="grid end in ns")
    p.add_argument("--points", type=int, default=501, help="number of grid points")
    p.add_argument("--compensate-phases", action="store_true",
                   help="let the target's single-qubit phases track the evolution")
    p.add_argument("--units", choices=("angular", "raw"), default="angular",
                   help="frequency convention: angular multiplies by 2*pi (default)")
    p.add_argument("--plot", nargs="?", const="", default=None, metavar="PNG",
                   help="also render the sweep as a figure (default: CSV path with .png)")
    _add_common(p)
    p.set_defaults(func=_cmd_sweep)

    p = sub.add_parser("polar", help="polar decomposition of a square matrix")
    p.add_argument("matrix", help="input matrix (matrix JSON)")
    _add_common(p)
    p.set_defaults(func=_cmd_polar)

    p = sub.add_parser("smax", help="nuclear norm |Tr sqrt(c†c)| of a square matrix")
    p.add_argument("matrix", help="input matrix (matrix JSON)")
    _add_common(p)
    p.set_defaults(func=_cmd_smax)

    p = sub.add_parser("theorem1",
                       help="population of the top-left p x q block of a unitary vs min(p, q)")
    p.add_argument("matrix", help="unitary matrix (matrix JSON)")
    p.add_argument("--p", type=int, required=True, help="block row count")
    p.add_argument("--q", type=int, required=True, help="block column count")
    _add_common(p)
    p.set_defaults(func=_cmd_theorem1)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except ArithmeticError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except (OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
