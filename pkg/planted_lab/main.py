import argparse
import logging
import sys
from typing import Dict, List, Optional

import pandas as pd

from planted_lab.cli import (
    LabConfig, OutputFormat, curve_frame, emit, parse_config, read_instance, table_frame, write_instance,
)
from planted_lab.coverage import build_coverage, verify_coverage
from planted_lab.estimators import solve
from planted_lab.experiments import (
    estimate_threshold, exponent_fit, ftg_check, ks_self_test, measure_failures, sweep,
)
from planted_lab.models import Family, sample_instance
from planted_lab.thresholds import finite_size_gamma_plus, table_rows, table_thresholds
from planted_lab.utils.errors import ExponentLowerBoundOnly, NoCrossing, PlantedLabError
from planted_lab.utils.logger import get_logger


def _overrides(args: argparse.Namespace, names: Dict[str, str]) -> List[str]:
    """サブコマンド固有のフラグを --set と同じ key=value 形式に変換する（フラグが後で優先）"""
    overrides = list(args.set or [])
    for attr, key in names.items():
        value = getattr(args, attr, None)
        if value is None:
            continue
        if isinstance(value, (list, tuple)):
            value = "[" + ",".join(str(v) for v in value) + "]"
        overrides.append(f"{key}={value}")
    return overrides


def _metadata(config: LabConfig, **extra) -> Dict[str, object]:
    from planted_lab import __version__
    metadata = {"version": __version__, "config_hash": config.config_hash(), "seed": config.seed}
    metadata.update(extra)
    metadata["config"] = config.model_dump_json(exclude_none=False)
    return metadata


def run_sample(args: argparse.Namespace) -> int:
    config = parse_config(args.config, _overrides(args, {"seed": "seed"}))
    config.require("seed")
    instance = sample_instance(config.model_spec(), config.seed)
    text = write_instance(instance, args.out, include_weights=not args.no_weights,
                          config_hash=config.config_hash())
    if args.out is None:
        sys.stdout.write(text + "\n")
    get_logger().info(f"sampled {instance.spec.family.value} instance seed={config.seed} planted={instance.planted}")
    return 0


def run_solve(args: argparse.Namespace) -> int:
    config = parse_config(args.config, _overrides(args, {"seed": "seed", "method": "method"}))
    if args.instance:
        instance = read_instance(args.instance)
    else:
        config.require("seed")
        instance = sample_instance(config.model_spec(), config.seed)
    estimate = solve(instance, config.method, config.enumeration_budget)
    frame = pd.DataFrame([{
        "subset": " ".join(str(v) for v in estimate.subset),
        "weight": estimate.weight,
        "explored": estimate.explored,
        "method": estimate.method.value,
        "recovered": estimate.recovers(instance),
    }])
    emit(frame, args.format, args.out, _metadata(config, instance_seed=instance.seed))
    return 0


def run_thresholds(args: argparse.Namespace) -> int:
    config = parse_config(args.config, _overrides(args, {"N": "N", "k": "k", "h": "h"}))
    N = config.N if config.N is not None else config.M
    if N is None:
        config.require("N")
    config.require("k")

    if args.per_overlap:
        h = config.edge_cardinality
        gamma, rows = finite_size_gamma_plus(N, config.k, h, config.alpha)
        frame = pd.DataFrame([row.model_dump() for row in rows])
        emit(frame, args.format, args.out, _metadata(config, finite_size_gamma_plus=gamma))
        return 0

    # ファミリーも h も無いときだけ全行の表（WSBM は h=2 の1行）
    if config.family is None and config.h is None:
        emit(table_frame(table_rows(N, config.k)), args.format, args.out, _metadata(config))
        return 0

    report = table_thresholds(N, config.k, config.edge_cardinality)
    record = {"model": report.model, "size": report.size, "k": report.k, "h": report.h,
              "gamma_minus": report.gamma_minus, "gamma_plus": report.gamma_plus,
              "selected_regime": report.selected_regime.value}
    for regime, value in report.gamma_plus_by_regime.items():
        record[f"gamma_plus_{regime.value}"] = value
    record.update({"gamma_conjectured": report.gamma_conjectured, "alpha": report.alpha, "c": report.c})
    emit(pd.DataFrame([record]), args.format, args.out, _metadata(config))
    return 0


def run_coverage(args: argparse.Namespace) -> int:
    config = parse_config(args.config, _overrides(args, {"N": "N", "k": "k", "h": "h", "m": "m"}))
    config.require("N", "k", "m")
    planted = list(range(config.k))
    if config.seed is not None and config.family is not None and config.family != Family.PREM:
        planted = list(sample_instance(config.model_spec(gamma=1.0), config.seed).planted)
    group = build_coverage(config.N, config.k, config.edge_cardinality, config.m, planted, planted[:config.m])
    report = verify_coverage(group, planted)
    frame = pd.DataFrame(
        [{"member": i, "nodes": " ".join(str(v) for v in member)} for i, member in enumerate(group.members)],
        columns=["member", "nodes"],
    )
    emit(frame, args.format, args.out, _metadata(
        config, planted=" ".join(map(str, planted)), intersection=" ".join(map(str, group.intersection)),
        reduced_ell=group.reduced_ell, verified=report.passed))
    return 0 if report.passed else 1


def run_sweep(args: argparse.Namespace) -> int:
    config = parse_config(args.config, _overrides(args, {
        "seed": "seed", "gamma_min": "gamma_min", "gamma_max": "gamma_max", "steps": "steps", "trials": "trials",
    }))
    experiment = config.experiment_config()
    curve = sweep(experiment, progress=not args.quiet and sys.stderr.isatty())
    extra = {}
    try:
        crossing = estimate_threshold(curve)
        extra = {"crossing": crossing.gamma, "bracket": f"{crossing.lower} {crossing.upper}"}
    except NoCrossing as e:
        get_logger().warning(str(e))
    metadata = _metadata(config, **extra)
    metadata["config_hash"] = curve.config_hash
    emit(curve_frame(curve), args.format, args.out, metadata)
    return 0


def run_exponent(args: argparse.Namespace) -> int:
    config = parse_config(args.config, _overrides(args, {
        "seed": "seed", "gamma": "gamma", "sizes": "sizes", "trials": "trials",
    }))
    config.require("gamma", "sizes", "seed")
    experiment = config.experiment_config(gamma_grid=[config.gamma])
    cells = measure_failures(experiment, config.gamma, config.sizes,
                             progress=not args.quiet and sys.stderr.isatty())
    frame = pd.DataFrame([cell.model_dump() for cell in cells])
    try:
        fit = exponent_fit(cells, config.gamma if config.gamma > 1 else None)
    except ExponentLowerBoundOnly as e:
        get_logger().warning(str(e))
        emit(frame, args.format, args.out, _metadata(config, exponent_lower_bound=e.bound))
        return e.exit_code
    emit(frame, args.format, args.out, _metadata(config, slope=fit.slope, expected=fit.expected))
    return 0


def run_ftg(args: argparse.Namespace) -> int:
    config = parse_config(args.config, _overrides(args, {"seed": "seed", "n": "n", "trials": "trials"}))
    config.require("seed")
    if args.self_test:
        report = ks_self_test(config.trials, config.seed)
    else:
        config.require("n")
        report = ftg_check(config.n, config.trials, config.seed)
    emit(pd.DataFrame([report.model_dump()]), args.format, args.out, _metadata(config))
    return 0


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", help="JSON config file (default: $PLANTED_LAB_CONFIG)")
    common.add_argument("--set", action="append", metavar="KEY=VALUE", help="Override a config key (repeatable)")
    common.add_argument("--out", help="Output path (default: stdout)")
    common.add_argument("--format", default=OutputFormat.TEXT.value, choices=[f.value for f in OutputFormat])
    common.add_argument("--verbose", "-v", action="store_true", help="Log INFO messages to stderr")
    common.add_argument("--quiet", "-q", action="store_true", help="Hide progress bars")

    parser = argparse.ArgumentParser(prog="planted-lab", description="Planted-solution recovery lab")
    subparsers = parser.add_subparsers(dest="command", required=True)

    sample = subparsers.add_parser("sample", parents=[common], help="Sample an instance")
    sample.add_argument("--seed", type=int)
    sample.add_argument("--no-weights", action="store_true", help="Write only (spec, seed, planted)")
    sample.set_defaults(handler=run_sample)

    solve_parser = subparsers.add_parser("solve", parents=[common], help="Run an ML estimator")
    solve_parser.add_argument("--seed", type=int)
    solve_parser.add_argument("--method", choices=["topk", "exhaustive", "bnb", "oracle"])
    solve_parser.add_argument("--instance", help="Instance JSON written by sample")
    solve_parser.set_defaults(handler=run_solve)

    thresholds = subparsers.add_parser("thresholds", parents=[common], help="Closed-form thresholds")
    thresholds.add_argument("--N", type=int, dest="N")
    thresholds.add_argument("--k", type=int)
    thresholds.add_argument("--h", type=int)
    thresholds.add_argument("--per-overlap", action="store_true", help="Finite-size rows per overlap m")
    thresholds.set_defaults(handler=run_thresholds)

    coverage = subparsers.add_parser("coverage", parents=[common], help="Build and verify a coverage group")
    coverage.add_argument("--N", type=int, dest="N")
    coverage.add_argument("--k", type=int)
    coverage.add_argument("--h", type=int)
    coverage.add_argument("--m", type=int)
    coverage.set_defaults(handler=run_coverage)

    sweep_parser = subparsers.add_parser("sweep", parents=[common], help="Recovery curve over a gamma grid")
    sweep_parser.add_argument("--seed", type=int)
    sweep_parser.add_argument("--gamma-min", type=float)
    sweep_parser.add_argument("--gamma-max", type=float)
    sweep_parser.add_argument("--steps", type=int)
    sweep_parser.add_argument("--trials", type=int)
    sweep_parser.set_defaults(handler=run_sweep)

    exponent = subparsers.add_parser("exponent", parents=[common], help="Failure exponent over sizes")
    exponent.add_argument("--seed", type=int)
    exponent.add_argument("--gamma", type=float)
    exponent.add_argument("--sizes", type=int, nargs="+")
    exponent.add_argument("--trials", type=int)
    exponent.set_defaults(handler=run_exponent)

    ftg = subparsers.add_parser("ftg", parents=[common], help="Gumbel limit of Gaussian maxima")
    ftg.add_argument("--seed", type=int)
    ftg.add_argument("--n", type=int)
    ftg.add_argument("--trials", type=int)
    ftg.add_argument("--self-test", action="store_true", help="KS self-test on direct Gumbel samples")
    ftg.set_defaults(handler=run_ftg)
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    """コマンドライン引数を処理するエントリポイント"""
    parser = build_parser()
    args = parser.parse_args(argv)

    logger = get_logger()
    try:
        logger.enable_console(logging.INFO if args.verbose else logging.WARNING)
        return args.handler(args)
    except PlantedLabError as e:
        logger.error(f"{type(e).__name__}: {e}")
        return e.exit_code
    except Exception as e:
        logger.error(f"unexpected error: {e!r}")
        return 1
    finally:
        logger.disable_console()
