"""
High-level experiment workflows and the qce-lab command line.

run_experiment executes one pipeline (Floquet operator, Heisenberg fields,
guarded traces, fit, oracle comparison) and writes the CSV trace, the JSON
manifest and an optional SVG chart into the configured output directory.
"""
import json
import logging
import sys
from concurrent.futures import ThreadPoolExecutor, as_completed
from dataclasses import dataclass, field
from enum import IntEnum
from pathlib import Path
from typing import Any, Dict, List, Optional, Sequence

from .artifacts import emit_chart, ensure_output_dir, write_manifest, write_trace_csv
from .config import (
    PRESETS,
    ExperimentConfig,
    get_log_level,
    load_config_file,
    print_config_status,
    resolve_config,
)
from .exceptions import (
    ArtifactWriteError,
    ChartDataError,
    ConfigValidationError,
    InvalidMatrixError,
    UnderdeterminedFitError,
)
from .grid import region_mask
from .heisenberg import HeisenbergRun
from .mappers import ManifestMapper
from .oracle import CatMatrix, exact_exponent, oracle_summary
from .qce import (
    STATUS_COMPLETED,
    STATUS_DEGENERATE,
    ExponentEstimate,
    TraceRecord,
    fit_records,
    growth_slope,
    halt_reason,
    loglog_scaled,
    relative_spread,
    run_traces,
)
from .telemetry import timed_event
from .utils import clean_tag, direction_tag, iso_now

logger = logging.getLogger(__name__)

_DEFAULT_MAX_WORKERS = 4

SWEEP_PARAMETERS = ("kick_strength", "time_step", "grid_size", "n_max")


class ExitStatus(IntEnum):
    COMPLETED = 0
    USAGE = 2
    HALTED = 3
    DEGENERATE = 4
    IO_ERROR = 5

    @property
    def label(self) -> str:
        return self.name.lower()


@dataclass
class ExperimentResult:
    """Everything one run produced."""

    config: ExperimentConfig
    traces: Dict[str, List[TraceRecord]]
    exit_status: ExitStatus
    estimate: Optional[ExponentEstimate] = None
    fit_error: Optional[str] = None
    slope: Optional[Dict[str, Any]] = None
    oracle: Optional[Dict[str, Any]] = None
    artifacts: Dict[str, str] = field(default_factory=dict)
    manifest: Dict[str, Any] = field(default_factory=dict)


def _run_parallel(
    tasks: List[tuple],
    max_workers: int = _DEFAULT_MAX_WORKERS,
) -> Dict[str, Any]:
    """
    Execute a list of (name, callable) pairs concurrently.

    Returns a dict mapping each name to either the callable's return value
    or an error dict ``{"status": "error", "error": str(e)}`` if it raised.

    Args:
        tasks: List of (task_name, callable) pairs. Callables take no args.
        max_workers: Thread-pool size.
    """
    results: Dict[str, Any] = {}
    if not tasks:
        return results
    with ThreadPoolExecutor(max_workers=min(max_workers, len(tasks))) as executor:
        future_to_name = {executor.submit(fn): name for name, fn in tasks}
        for future in as_completed(future_to_name):
            name = future_to_name[future]
            try:
                results[name] = future.result()
            except Exception as exc:
                logger.error("Parallel task %s failed: %s", name, exc)
                results[name] = {"status": "error", "error": str(exc)}
    return results


def _exit_status(traces: Dict[str, List[TraceRecord]]) -> ExitStatus:
    reasons = [halt_reason(records) for records in traces.values()]
    if STATUS_DEGENERATE in reasons:
        return ExitStatus.DEGENERATE
    if any(reason != STATUS_COMPLETED for reason in reasons):
        return ExitStatus.HALTED
    return ExitStatus.COMPLETED


def _covered_range(records: Sequence[TraceRecord], lo: int, hi: int) -> Optional[List[int]]:
    steps = [r.n for r in records if r.mean_Dn is not None and lo <= r.n <= hi]
    return [min(steps), max(steps)] if steps else None


def _slope_diagnostics(config: ExperimentConfig, records: Sequence[TraceRecord]) -> Optional[Dict[str, Any]]:
    """
    Rotor slope and spread diagnostics.

    Each window is reported as requested and as covered by the trace; a trace
    that stopped before the window's upper end sets ``<name>_truncated``.
    """
    if config.slope_window is None and config.spread_window is None:
        return None
    diagnostics: Dict[str, Any] = {}
    for name, window in (("slope", config.slope_window), ("spread", config.spread_window)):
        if window is None:
            continue
        lo, hi = window
        covered = _covered_range(records, lo, hi)
        diagnostics[f"{name}_window"] = [lo, hi]
        diagnostics[f"{name}_covered"] = covered
        diagnostics[f"{name}_truncated"] = covered is None or covered[1] < hi
        if diagnostics[f"{name}_truncated"]:
            logger.warning("%s window [%d, %d] only covered up to n=%s", name.capitalize(), lo, hi,
                           covered[1] if covered else None)
    if config.slope_window is not None:
        try:
            diagnostics["slope"] = growth_slope(records, tuple(config.slope_window))
        except UnderdeterminedFitError as e:
            diagnostics["slope_error"] = e.message
    if config.spread_window is not None:
        lo, hi = config.spread_window
        raw = [r.mean_Dn for r in records if r.mean_Dn is not None and lo <= r.n <= hi]
        scaled = [value for n, value in loglog_scaled(records) if lo <= n <= hi]
        try:
            diagnostics["raw_spread"] = relative_spread(raw)
            diagnostics["scaled_spread"] = relative_spread(scaled)
        except ValueError as e:
            diagnostics["spread_error"] = str(e)
    return diagnostics


def _oracle_comparison(config: ExperimentConfig, estimate: Optional[ExponentEstimate]) -> Dict[str, Any]:
    matrix = CatMatrix(config.matrix)
    exponents = {
        direction_tag(v): exact_exponent(matrix, v, config.observable)
        for v in config.directions
    }
    comparison: Dict[str, Any] = {
        "lambda_exact": matrix.log_mu1,
        "per_direction_exact": exponents,
        "lambda_fit": estimate.lambda_ if estimate else None,
    }
    if estimate is not None:
        comparison["difference"] = estimate.lambda_ - matrix.log_mu1
    return comparison


def run_experiment(config: ExperimentConfig, write: bool = True) -> ExperimentResult:
    """
    Run one experiment end to end.

    Args:
        config: Resolved configuration
        write: Write CSV, manifest and chart into config.output_dir

    Raises:
        ArtifactWriteError: if the output directory cannot be created or written
    """
    started = iso_now()
    output_dir = ensure_output_dir(config.output_dir) if write else None

    with timed_event("experiment_run", preset=config.preset, grid_size=config.grid_size,
                     n_max=config.n_max):
        spec = config.floquet_spec()
        run = HeisenbergRun(spec, config.observable_spec(), psi0=config.initial_state(),
                            n_max=config.n_max)
        region = region_mask(spec.grid, config.region) if config.region else None
        print(f"[Trace] {config.preset}: N={config.grid_size} per axis, n_max={config.n_max}, "
              f"{len(config.directions)} direction(s)")
        traces = run_traces(run, config.directions, config.n_max, config.guards(), region)
        for tag, records in traces.items():
            print(f"[Trace] {tag}: {len(records)} steps, {halt_reason(records)}")

    status = _exit_status(traces)

    estimate, fit_error = None, None
    try:
        estimate = fit_records(traces, n_min=config.fit_n_min, n_max=config.fit_n_max)
        print(f"[Fit] lambda = {estimate.lambda_:.6f} (residual {estimate.residual:.2e}, "
              f"n in {list(estimate.n_range_used)})")
    except UnderdeterminedFitError as e:
        fit_error = e.message
        print(f"[Fit] skipped: {fit_error}")

    first = next(iter(traces.values()))
    slope = _slope_diagnostics(config, first)
    if slope and "slope" in slope:
        print(f"[Fit] slope of <D_n> over n in {slope['slope_covered']}: {slope['slope']:.5f}"
              + (f" (window {slope['slope_window']} truncated)" if slope['slope_truncated'] else ""))

    oracle = None
    if config.matrix is not None:
        oracle = _oracle_comparison(config, estimate)
        print(f"[Oracle] exact exponent log mu1 = {oracle['lambda_exact']:.6f}")

    result = ExperimentResult(config, traces, status, estimate, fit_error, slope, oracle)
    if output_dir is None:
        return result

    csv_path = write_trace_csv(output_dir / "trace.csv", traces, include_loglog=config.dimension == 1)
    result.artifacts["trace"] = csv_path.name
    if config.chart:
        quantity = "mean_growth" if config.dimension == 2 else "mean_Dn"
        try:
            chart_path = emit_chart(csv_path, output_dir / "trace.svg", quantity=quantity,
                                    fit_n_min=config.fit_n_min, fit_n_max=config.fit_n_max,
                                    title=config.preset)
            result.artifacts["chart"] = chart_path.name
        except ChartDataError as e:
            logger.warning("Chart skipped: %s", e.message)

    result.manifest = ManifestMapper.map(
        config=config.to_dict(),
        traces=traces,
        started=started,
        finished=iso_now(),
        exit_status=status.label,
        estimate=estimate,
        fit_error=fit_error,
        slope=slope,
        oracle=oracle,
        artifacts=dict(result.artifacts),
    )
    manifest_path = write_manifest(output_dir / "manifest.json", result.manifest)
    result.artifacts["manifest"] = manifest_path.name
    print(f"[Output] {output_dir}: {', '.join(sorted(result.artifacts.values()))}")
    return result


def run_sweep(
    config: ExperimentConfig,
    parameter: str,
    values: Sequence[Any],
    max_workers: int = _DEFAULT_MAX_WORKERS,
) -> Dict[str, Any]:
    """
    Run one experiment per parameter value concurrently.

    Each run writes into <output_dir>/<parameter>_<value>.

    Returns:
        Mapping from run name to ExperimentResult (or an error dict)
    """
    if parameter not in SWEEP_PARAMETERS:
        raise ConfigValidationError(
            f"Cannot sweep {parameter!r}; expected one of: {', '.join(SWEEP_PARAMETERS)}",
            problems=[f"sweep parameter {parameter}"],
        )
    tasks = []
    for value in values:
        name = clean_tag(f"{parameter}_{value}")
        run_config = config.with_overrides(
            **{parameter: value, "output_dir": str(Path(config.output_dir) / name)}
        )
        tasks.append((name, lambda c=run_config: run_experiment(c)))

    with timed_event("sweep_run", parameter=parameter, runs=len(tasks)):
        results = _run_parallel(tasks, max_workers=max_workers)
    return results


# ── CLI entry point ────────────────────────────────────────────────────────────

def _configure_logging(verbose: bool) -> None:
    level = logging.DEBUG if verbose else getattr(logging, get_log_level(), logging.WARNING)
    logging.basicConfig(level=level, format="%(asctime)s %(levelname)s %(name)s: %(message)s")


def _parse_value(text: str) -> Any:
    try:
        return json.loads(text)
    except json.JSONDecodeError:
        return text


def _raw_config(target: str, overrides: Sequence[str]) -> Dict[str, Any]:
    if target in PRESETS:
        raw: Dict[str, Any] = {"preset": target}
    elif Path(target).is_file():
        raw = load_config_file(target)
    else:
        raise ConfigValidationError(
            f"{target!r} is neither a preset ({', '.join(PRESETS)}) nor a config file",
            problems=[f"unknown target {target}"],
        )
    for item in overrides:
        key, sep, value = item.partition("=")
        if not sep:
            raise ConfigValidationError(f"Override {item!r} must look like KEY=VALUE",
                                        problems=[item])
        raw[key.strip()] = _parse_value(value.strip())
    return raw


def _int_list(text: str) -> List[int]:
    return [int(part) for part in text.split(",") if part.strip()]


def _cli_run(args) -> ExitStatus:
    raw = _raw_config(args.target, args.set or [])
    if args.output_dir:
        raw["output_dir"] = args.output_dir
    if args.no_chart:
        raw["chart"] = False
    config = resolve_config(raw, paper_scale=args.paper_scale)
    return run_experiment(config).exit_status


def _cli_sweep(args) -> ExitStatus:
    raw = _raw_config(args.target, args.set or [])
    if args.output_dir:
        raw["output_dir"] = args.output_dir
    config = resolve_config(raw, paper_scale=args.paper_scale)
    values = [_parse_value(v.strip()) for v in args.values.split(",") if v.strip()]
    results = run_sweep(config, args.param, values, max_workers=args.workers)

    print(f"\n{'run':<28} {'status':<12} {'lambda':>12}")
    print("-" * 54)
    worst = ExitStatus.COMPLETED
    for name in sorted(results):
        result = results[name]
        if isinstance(result, ExperimentResult):
            lam = f"{result.estimate.lambda_:.6f}" if result.estimate else "-"
            print(f"{name:<28} {result.exit_status.label:<12} {lam:>12}")
            worst = max(worst, result.exit_status)
        else:
            print(f"{name:<28} {'error':<12} {'-':>12}  {result['error']}")
            worst = max(worst, ExitStatus.IO_ERROR)
    return worst


def _cli_oracle(args) -> ExitStatus:
    entries = _int_list(args.matrix)
    if len(entries) != 4:
        raise ConfigValidationError("--matrix needs four integers a,b,c,d", problems=[args.matrix])
    matrix = ((entries[0], entries[1]), (entries[2], entries[3]))
    l = _int_list(args.l)
    v = [float(c) for c in args.v.split(",")]
    try:
        summary = oracle_summary(matrix, l, v, n_max=args.n_max)
    except (ValueError, InvalidMatrixError) as e:
        raise ConfigValidationError(str(e), problems=[str(e)]) from e
    print(f"[Oracle] M = {summary['matrix']}, trace {summary['trace']}")
    print(f"[Oracle] mu1 = {summary['mu1']:.12f}, mu2 = {summary['mu2']:.12f}")
    print(f"[Oracle] log mu1 = {summary['log_mu1']:.6f}")
    print(f"[Oracle] exponent for v={v}, l={l}: {summary['exponent']:.6f}")
    print(f"[Oracle] orbit M^k l: {summary['orbit']}")
    if summary["finite_sequence_last"] is not None:
        print(f"[Oracle] (1/n) log|v.M^n l| at n={summary['n_max']}: "
              f"{summary['finite_sequence_last']:.6f}")
    return ExitStatus.COMPLETED


def _cli_chart(args) -> ExitStatus:
    path = emit_chart(args.csv, args.output, quantity=args.quantity, fit=not args.no_fit,
                      fit_n_min=args.fit_n_min, fit_n_max=args.fit_n_max)
    print(f"[Output] {path}")
    return ExitStatus.COMPLETED


def _cli_validate(args) -> ExitStatus:
    raw = _raw_config(args.target, args.set or [])
    result = print_config_status(raw, paper_scale=args.paper_scale)
    return ExitStatus.COMPLETED if result["valid"] else ExitStatus.USAGE


def build_parser():
    import argparse

    parser = argparse.ArgumentParser(
        prog="qce-lab",
        description="Quantum characteristic exponent laboratory",
    )
    parser.add_argument("-v", "--verbose", action="store_true", help="Debug logging")
    subparsers = parser.add_subparsers(dest="command")

    def _target_options(sub) -> None:
        sub.add_argument("target", help="Preset name or JSON config path")
        sub.add_argument("--set", action="append", metavar="KEY=VALUE",
                         help="Override one config key (value parsed as JSON)")
        sub.add_argument("--paper-scale", action="store_true",
                         help="Full published grid size for the cat preset")

    run_parser = subparsers.add_parser("run", help="Run one experiment")
    _target_options(run_parser)
    run_parser.add_argument("--output-dir", help="Output directory")
    run_parser.add_argument("--no-chart", action="store_true", help="Skip the SVG chart")

    sweep_parser = subparsers.add_parser("sweep", help="Run a preset over several parameter values")
    _target_options(sweep_parser)
    sweep_parser.add_argument("--param", required=True, choices=SWEEP_PARAMETERS)
    sweep_parser.add_argument("--values", required=True, help="Comma-separated values")
    sweep_parser.add_argument("--workers", type=int, default=_DEFAULT_MAX_WORKERS)
    sweep_parser.add_argument("--output-dir", help="Parent output directory")

    chart_parser = subparsers.add_parser("chart", help="Render a trace CSV as SVG")
    chart_parser.add_argument("csv", help="Trace CSV path")
    chart_parser.add_argument("--output", help="SVG path (default: next to the CSV)")
    chart_parser.add_argument("--quantity", default="mean_growth",
                              choices=("mean_growth", "mean_Dn", "loglog_scaled"))
    chart_parser.add_argument("--no-fit", action="store_true", help="Points only")
    chart_parser.add_argument("--fit-n-min", type=int, default=2, help="Smallest n in the fit")
    chart_parser.add_argument("--fit-n-max", type=int, help="Largest n in the fit")

    oracle_parser = subparsers.add_parser("oracle", help="Print exact cat results")
    oracle_parser.add_argument("--matrix", default="1,1,1,2", help="a,b,c,d")
    oracle_parser.add_argument("--l", default="1,0", help="Observable wavevector")
    oracle_parser.add_argument("--v", default="1,0", help="Direction")
    oracle_parser.add_argument("--n-max", type=int, default=30)

    validate_parser = subparsers.add_parser("validate", help="Validate a config without running")
    _target_options(validate_parser)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    """
    CLI entry point for qce-lab.

    Usage:
        qce-lab run cat                       # desk-scale cat
        qce-lab run cat --paper-scale         # N = 541
        qce-lab run config.json --set n_max=50
        qce-lab sweep rotor_cosine --param kick_strength --values 5,8,11
        qce-lab chart runs/cat/trace.csv
        qce-lab oracle --matrix 1,1,1,2 --l 1,0 --v 1,0
        qce-lab validate config.json

    Exit codes: 0 completed, 2 usage or config error, 3 guard halt,
    4 degenerate data, 5 I/O error.
    """
    parser = build_parser()
    args = parser.parse_args(argv)
    _configure_logging(args.verbose)

    handlers = {
        "run": _cli_run,
        "sweep": _cli_sweep,
        "chart": _cli_chart,
        "oracle": _cli_oracle,
        "validate": _cli_validate,
    }
    if args.command not in handlers:
        parser.print_help()
        return int(ExitStatus.USAGE)

    try:
        return int(handlers[args.command](args))
    except ConfigValidationError as e:
        print(f"ERROR: {e.message}", file=sys.stderr)
        return int(ExitStatus.USAGE)
    except ChartDataError as e:
        print(f"ERROR: {e.message}", file=sys.stderr)
        return int(ExitStatus.USAGE)
    except ArtifactWriteError as e:
        print(f"ERROR: {e.message}", file=sys.stderr)
        return int(ExitStatus.IO_ERROR)


if __name__ == "__main__":
    sys.exit(main())
