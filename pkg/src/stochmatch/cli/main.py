"""Command-line interface for stochmatch."""

import argparse
import logging
import sys
from pathlib import Path
from typing import Any, Dict, List, Optional, Tuple

import numpy as np
import pandas as pd

from stochmatch.arrivals import ArrivalModel, FixedCountArrivals, PoissonArrivals, events_to_frame
from stochmatch.cli.output import (
    RunManifest,
    activation_document,
    format_json,
    manifest_path,
    write_report,
    write_table,
    write_text,
)
from stochmatch.config import Y_STAR, config, resolve_seed
from stochmatch.data import JsonInstanceFeed, load_activation_file, load_instance_file
from stochmatch.domain.activation import PiecewiseConstantF
from stochmatch.domain.instance import Instance, validate_instance
from stochmatch.domain.kernel import KernelInstance, classify_kernel
from stochmatch.domain.solution import FractionalSolution
from stochmatch.engines import ENGINE_NAMES, resolve_engine
from stochmatch.lp import build_jl_lp, check_feasibility, solve_jl_lp
from stochmatch.montecarlo import compare_with_bounds, estimate, ratio_report
from stochmatch.ratiocalc.bounds import bound_curve
from stochmatch.ratiocalc.certificate import check_all, ratio_curve
from stochmatch.search import SearchConfig, optimize

logger = logging.getLogger(__name__)


def positive_int(value: str) -> int:
    """Validate positive integer."""
    try:
        ivalue = int(value)
        if ivalue < 1:
            raise argparse.ArgumentTypeError(f"Must be >= 1, got {ivalue}")
        return ivalue
    except ValueError:
        raise argparse.ArgumentTypeError(f"Must be an integer, got {value}")


def non_negative_int(value: str) -> int:
    """Validate non-negative integer."""
    try:
        ivalue = int(value)
        if ivalue < 0:
            raise argparse.ArgumentTypeError(f"Must be >= 0, got {ivalue}")
        return ivalue
    except ValueError:
        raise argparse.ArgumentTypeError(f"Must be an integer, got {value}")


def positive_float(value: str) -> float:
    """Validate positive float."""
    try:
        fvalue = float(value)
        if fvalue <= 0:
            raise argparse.ArgumentTypeError(f"Must be > 0, got {fvalue}")
        return fvalue
    except ValueError:
        raise argparse.ArgumentTypeError(f"Must be a number, got {value}")


def unit_float(value: str) -> float:
    """Validate a number in [0, 1]."""
    try:
        fvalue = float(value)
    except ValueError:
        raise argparse.ArgumentTypeError(f"Must be a number, got {value}")
    if not 0.0 <= fvalue <= 1.0:
        raise argparse.ArgumentTypeError(f"Must lie in [0, 1], got {fvalue}")
    return fvalue


def grid_points(value: str) -> int:
    """Validate a grid size of at least 2 points."""
    ivalue = positive_int(value)
    if ivalue < 2:
        raise argparse.ArgumentTypeError(f"Must be >= 2, got {ivalue}")
    return ivalue


def build_parser() -> argparse.ArgumentParser:
    # Subcommands accept -v too; SUPPRESS keeps them from resetting a top-level -v.
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--verbose", "-v", action="store_true", default=argparse.SUPPRESS,
                        help="Enable verbose logging")

    parser = argparse.ArgumentParser(
        prog="stochmatch",
        description="Evolving Suggested Matching: LP, kernel checks, simulation and ratio certificates",
        formatter_class=argparse.RawDescriptionHelpFormatter,
        epilog="""
Examples:
  # Analytic certificate of an activation function
  stochmatch ratio eval --f data/activations/five_level.f.json

  # Monte Carlo on the twin fixture
  stochmatch simulate data/instances/twin.json --engine esm \\
    --f data/activations/five_level.f.json --trials 100000 --seed 1 \\
    --out-curves curves.csv --out-edges edges.csv

  # Search for a good 40-interval activation function
  stochmatch search --m 40 --restarts 10 --seed 7 --out best.f.json
        """,
    )
    parser.add_argument("--verbose", "-v", action="store_true", help="Enable verbose logging")
    commands = parser.add_subparsers(dest="command", required=True, metavar="COMMAND")

    # lp
    lp = commands.add_parser("lp", help="Solve or check the benchmark LP", parents=[common])
    lp_commands = lp.add_subparsers(dest="action", required=True, metavar="ACTION")
    lp_solve = lp_commands.add_parser("solve", help="Solve the LP for an instance", parents=[common])
    lp_solve.add_argument("instance", type=Path, help="Instance file")
    lp_solve.add_argument("--tol", type=positive_float, default=config.tolerances.lp,
                          help=f"Solver and check tolerance (default: {config.tolerances.lp})")
    lp_solve.add_argument("--out", type=Path, default=None, help="Write the JSON report here")
    lp_solve.set_defaults(handler=cmd_lp_solve)

    lp_check = lp_commands.add_parser("check", help="Residuals of the file's x against the LP", parents=[common])
    lp_check.add_argument("instance", type=Path, help="Instance file with an x section")
    lp_check.add_argument("--tol", type=positive_float, default=config.tolerances.lp,
                          help=f"Feasibility tolerance (default: {config.tolerances.lp})")
    lp_check.add_argument("--out", type=Path, default=None, help="Write the JSON report here")
    lp_check.set_defaults(handler=cmd_lp_check)

    # kernel
    kernel = commands.add_parser("kernel", help="Kernel-instance checks", parents=[common])
    kernel_commands = kernel.add_subparsers(dest="action", required=True, metavar="ACTION")
    kernel_check = kernel_commands.add_parser("check", help="Classify and verify a kernel instance",
                                              parents=[common])
    kernel_check.add_argument("instance", type=Path, help="Instance file with an x section")
    kernel_check.add_argument("--tol", type=positive_float, default=config.tolerances.kernel,
                              help=f"Equality tolerance (default: {config.tolerances.kernel})")
    kernel_check.add_argument("--allow-excess", action="store_true",
                              help="Accept y_j above 1 - ln 2")
    kernel_check.add_argument("--out", type=Path, default=None, help="Write the JSON report here")
    kernel_check.set_defaults(handler=cmd_kernel_check)

    # simulate
    sim = commands.add_parser("simulate", help="Monte Carlo estimates for an engine", parents=[common])
    sim.add_argument("instance", type=Path, help="Kernel instance file with an x section")
    sim.add_argument("--engine", choices=ENGINE_NAMES, default="esm", help="Algorithm (default: esm)")
    sim.add_argument("--f", dest="f", type=Path, default=None, help="Activation-function file (esm)")
    sim.add_argument("--trials", type=positive_int, default=config.simulation.trials,
                     help=f"Number of trials (default: {config.simulation.trials})")
    sim.add_argument("--seed", type=non_negative_int, default=None,
                     help=f"Seed (default: ${config.cli.seed_env_var} or {config.cli.seed})")
    sim.add_argument("--first-trial", type=non_negative_int, default=0,
                     help="Index of the first trial, for runs that are merged later")
    sim.add_argument("--grid", type=grid_points, default=config.simulation.grid_points,
                     help=f"Points of the time grid for unmatched curves (default: {config.simulation.grid_points})")
    sim.add_argument("--workers", type=positive_int, default=config.simulation.workers,
                     help=f"Worker processes (default: {config.simulation.workers})")
    sim.add_argument("--chunk-size", type=positive_int, default=config.simulation.chunk_size,
                     help=f"Trials per chunk (default: {config.simulation.chunk_size})")
    sim.add_argument("--arrivals", choices=("poisson", "fixed"), default="poisson",
                     help="Arrival model (default: poisson)")
    sim.add_argument("--fixed-n", type=positive_int, default=None,
                     help="Arrival count for --arrivals fixed (default: total rate)")
    sim.add_argument("--allow-excess", action="store_true", help="Accept y_j above 1 - ln 2")
    sim.add_argument("--out", type=Path, default=None, help="Write the JSON report here")
    sim.add_argument("--out-curves", type=Path, default=None, help="CSV of unmatched curves (t, j, p, se)")
    sim.add_argument("--out-edges", type=Path, default=None, help="CSV of edges (i, j, x_ij, p, se, ratio)")
    sim.add_argument("--out-joint", type=Path, default=None, help="CSV of joint unmatched curves")
    sim.add_argument("--dump-arrivals", type=Path, default=None, help="CSV event log of the first trials")
    sim.add_argument("--dump-trials", type=positive_int, default=1,
                     help="Trials included in --dump-arrivals (default: 1)")
    sim.set_defaults(handler=cmd_simulate)

    # ratio
    ratio = commands.add_parser("ratio", help="Analytic ratio certificate", parents=[common])
    ratio_commands = ratio.add_subparsers(dest="action", required=True, metavar="ACTION")
    ratio_eval = ratio_commands.add_parser("eval", help="Full RatioReport for f", parents=[common])
    ratio_eval.add_argument("--f", dest="f", type=Path, required=True, help="Activation-function file")
    ratio_eval.add_argument("--y-grid", type=grid_points, default=config.cli.y_grid_points,
                            help=f"Points of the y grid spot check (default: {config.cli.y_grid_points})")
    ratio_eval.add_argument("--out", type=Path, default=None, help="Write the JSON report here")
    ratio_eval.set_defaults(handler=cmd_ratio_eval)

    ratio_crv = ratio_commands.add_parser("curve", help="r1 and r2 over [0, 1 - ln 2] as CSV",
                                          parents=[common])
    ratio_crv.add_argument("--f", dest="f", type=Path, required=True, help="Activation-function file")
    ratio_crv.add_argument("--grid", type=grid_points, default=config.cli.y_grid_points,
                           help=f"Number of y points (default: {config.cli.y_grid_points})")
    ratio_crv.add_argument("--out", type=Path, default=None, help="Write the CSV here")
    ratio_crv.set_defaults(handler=cmd_ratio_curve)

    # search
    search = commands.add_parser("search", help="Coordinate ascent over activation functions",
                                 parents=[common])
    search.add_argument("--m", type=positive_int, default=config.search.m,
                        help=f"Number of intervals (default: {config.search.m})")
    search.add_argument("--step", type=positive_float, default=config.search.step,
                        help=f"Level spacing on [0, 2] (default: {config.search.step})")
    search.add_argument("--restarts", type=positive_int, default=config.search.restarts,
                        help=f"Random restarts (default: {config.search.restarts})")
    search.add_argument("--max-iterations", type=positive_int, default=config.search.max_iterations,
                        help=f"Accepted moves per restart (default: {config.search.max_iterations})")
    search.add_argument("--seed", type=non_negative_int, default=None,
                        help=f"Seed (default: ${config.cli.seed_env_var} or {config.cli.seed})")
    search.add_argument("--workers", type=positive_int, default=config.search.workers,
                        help=f"Worker processes for restarts (default: {config.search.workers})")
    search.add_argument("--initial", type=Path, default=None,
                        help="Activation-function file used as the first starting point")
    search.add_argument("--out", type=Path, default=None, help="Write the best f here")
    search.set_defaults(handler=cmd_search)

    # curve
    curve = commands.add_parser("curve", help="Analytic unmatched bounds over t as CSV", parents=[common])
    curve.add_argument("--f", dest="f", type=Path, required=True, help="Activation-function file")
    curve.add_argument("--y", type=unit_float, default=Y_STAR, help="First-class mass y (default: 1 - ln 2)")
    curve.add_argument("--grid", type=grid_points, default=config.simulation.grid_points,
                       help=f"Number of t points (default: {config.simulation.grid_points})")
    curve.add_argument("--out", type=Path, default=None, help="Write the CSV here")
    curve.set_defaults(handler=cmd_curve)

    return parser


def parse_args(args: Optional[List[str]] = None) -> argparse.Namespace:
    """Parse command-line arguments.

    Args:
        args: Optional list of arguments (defaults to sys.argv)

    Returns:
        Parsed arguments namespace
    """
    return build_parser().parse_args(args)


def command_name(args: argparse.Namespace) -> str:
    action = getattr(args, "action", None)
    return f"{args.command} {action}" if action else args.command


def manifest_arguments(args: argparse.Namespace) -> Dict[str, Any]:
    """Parsed arguments without the handler and the logging switch."""
    return {k: v for k, v in vars(args).items() if k not in ("handler", "verbose", "command", "action")}


def load_kernel_inputs(path: Path) -> Tuple[Instance, FractionalSolution]:
    feed = JsonInstanceFeed(path)
    return feed.get_instance(), feed.require_solution()


# Subcommand handlers: each returns an exit code.

def cmd_lp_solve(args: argparse.Namespace) -> int:
    manifest = RunManifest.create(command_name(args), manifest_arguments(args), [args.instance])
    inst, _ = load_instance_file(args.instance)
    validate_instance(inst).raise_if_invalid()
    solution = solve_jl_lp(build_jl_lp(inst), tol=args.tol)
    feasibility = check_feasibility(inst, solution.x, args.tol)
    payload = {
        "objective": solution.objective,
        "x": [{"i": i, "j": j, "x": v} for (i, j), v in solution.x.values.items()],
        "feasibility": feasibility.to_dict(),
        "message": solution.message,
    }
    write_report(payload, manifest, args.out)
    return 0


def cmd_lp_check(args: argparse.Namespace) -> int:
    manifest = RunManifest.create(command_name(args), manifest_arguments(args), [args.instance])
    inst, x = load_kernel_inputs(args.instance)
    validate_instance(inst).raise_if_invalid()
    report = check_feasibility(inst, x, args.tol)
    payload = report.to_dict()
    payload["objective"] = x.objective(inst)
    payload["violated"] = report.violated
    write_report(payload, manifest, args.out)
    return 0 if report.ok else 1


def kernel_summary(kernel: KernelInstance) -> Dict[str, Any]:
    return {
        "classes": {i: c.value for i, c in kernel.classes.items()},
        "y": dict(kernel.y),
        "competitors": {
            j: [{"k": k, "c": c} for k, c in kernel.competitors(j)]
            for j in kernel.instance.offline_vertices
        },
    }


def cmd_kernel_check(args: argparse.Namespace) -> int:
    manifest = RunManifest.create(command_name(args), manifest_arguments(args), [args.instance])
    inst, x = load_kernel_inputs(args.instance)
    kernel = classify_kernel(inst, x, tol=args.tol, enforce_excess=not args.allow_excess)
    payload = {"ok": True, **kernel_summary(kernel)}
    write_report(payload, manifest, args.out)
    return 0


def arrival_model(args: argparse.Namespace) -> ArrivalModel:
    if args.arrivals == "fixed":
        return FixedCountArrivals(args.fixed_n)
    if args.fixed_n is not None:
        raise ValueError("--fixed-n requires --arrivals fixed")
    return PoissonArrivals()


def cmd_simulate(args: argparse.Namespace) -> int:
    seed = resolve_seed(args.seed)
    inputs = [args.instance] + ([args.f] if args.f is not None else [])
    manifest = RunManifest.create(command_name(args), manifest_arguments(args), inputs, seed=seed)

    inst, x = load_kernel_inputs(args.instance)
    kernel = classify_kernel(inst, x, enforce_excess=not args.allow_excess)
    f: Optional[PiecewiseConstantF] = load_activation_file(args.f) if args.f is not None else None
    engine = resolve_engine(args.engine, f)
    model = arrival_model(args)

    report = estimate(
        kernel,
        engine,
        trials=args.trials,
        seed=seed,
        grid=np.linspace(0.0, 1.0, args.grid),
        arrivals=model,
        first_trial=args.first_trial,
        workers=args.workers,
        chunk_size=args.chunk_size,
    )

    payload: Dict[str, Any] = {
        "engine": engine.to_dict(),
        "arrivals": repr(model),
        "kernel": kernel_summary(kernel),
        "report": report.to_dict(),
    }
    if any(v > 0.0 for v in kernel.x.values.values()):
        certificate = ratio_report(kernel, report)
        payload["ratio"] = {**certificate.to_dict(), "lower_3se": certificate.lower(3.0)}
    if engine.activation is not None:
        payload["bounds"] = compare_with_bounds(kernel, report, engine.activation).to_dict("records")

    if args.out_curves is not None:
        write_table(report.curves_frame(), manifest, args.out_curves)
    if args.out_edges is not None:
        write_table(report.edges_frame(), manifest, args.out_edges)
    if args.out_joint is not None:
        write_table(report.joint_frame(), manifest, args.out_joint)
    if args.dump_arrivals is not None:
        frames = [
            events_to_frame(model.sample(inst, seed, trial), engine.activation, trial)
            for trial in range(args.first_trial, args.first_trial + args.dump_trials)
        ]
        write_table(pd.concat(frames, ignore_index=True), manifest, args.dump_arrivals)

    write_report(payload, manifest, args.out)
    return 0


def cmd_ratio_eval(args: argparse.Namespace) -> int:
    manifest = RunManifest.create(command_name(args), manifest_arguments(args), [args.f])
    f = load_activation_file(args.f)
    report = check_all(f, y_grid_points=args.y_grid)
    write_report(report.to_dict(), manifest, args.out)
    return 0


def cmd_ratio_curve(args: argparse.Namespace) -> int:
    manifest = RunManifest.create(command_name(args), manifest_arguments(args), [args.f])
    f = load_activation_file(args.f)
    write_table(ratio_curve(f, args.grid), manifest, args.out)
    return 0


def cmd_search(args: argparse.Namespace) -> int:
    seed = resolve_seed(args.seed)
    inputs = [args.initial] if args.initial is not None else []
    manifest = RunManifest.create(command_name(args), manifest_arguments(args), inputs, seed=seed)
    initial = load_activation_file(args.initial) if args.initial is not None else None

    cfg = SearchConfig(
        m=args.m,
        step=args.step,
        restarts=args.restarts,
        max_iterations=args.max_iterations,
        seed=seed,
        initial=initial,
        workers=args.workers,
    )
    result = optimize(cfg)

    payload: Dict[str, Any] = {
        "found": result.found_solution,
        "stats": result.stats,
        "restart_objectives": result.restart_objectives,
    }
    if not result.found_solution:
        payload["no_solution_reason"] = result.no_solution_reason
        payload["best_infeasible"] = activation_document(result.best_infeasible)
        write_report(payload, manifest)
        return 1

    payload["activation"] = activation_document(result.activation)
    payload["report"] = result.report.to_dict()
    if args.out is not None:
        write_text(format_json(activation_document(result.activation)), args.out)
        write_text(format_json({"manifest": manifest.finish().to_dict()}), manifest_path(args.out))
    write_report(payload, manifest)
    return 0


def cmd_curve(args: argparse.Namespace) -> int:
    manifest = RunManifest.create(command_name(args), manifest_arguments(args), [args.f])
    f = load_activation_file(args.f)
    frame = bound_curve(f, args.y, np.linspace(0.0, 1.0, args.grid))
    write_table(frame, manifest, args.out)
    return 0


def main(args: Optional[List[str]] = None) -> int:
    """Main CLI entry point.

    Args:
        args: Optional command-line arguments (defaults to sys.argv)

    Returns:
        Exit code (0 for success, 1 for validation failure, 2 for usage error)
    """
    parsed_args: Optional[argparse.Namespace] = None
    try:
        try:
            parsed_args = parse_args(args)
        except SystemExit as e:
            return e.code if isinstance(e.code, int) else 2

        log_level = logging.DEBUG if parsed_args.verbose else logging.INFO
        logging.basicConfig(
            level=log_level,
            format="%(asctime)s - %(name)s - %(levelname)s - %(message)s",
            stream=sys.stderr,
        )

        return parsed_args.handler(parsed_args)

    except ValueError as e:
        print(f"Error: {e}", file=sys.stderr)
        return 1
    except KeyboardInterrupt:
        print("\nInterrupted by user", file=sys.stderr)
        return 1
    except Exception as e:
        logger.exception("Unexpected error")
        print(f"Error: {e}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
