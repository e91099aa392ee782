"""
Command-line front end.

Exit codes: 0 success, 1 validation error, 2 runtime error. Diagnostics
go to standard error as JSON; reports go to standard output.
"""
import argparse
import json
import logging
import os
import sys
from pathlib import Path
from typing import Dict, List, Optional

from controllers import (
    ExperimentController,
    GraphController,
    MetricsController,
    ProfileController,
    ResultsController,
    SetpointController,
    SynthController,
)
from controllers.experiment_controller import OUT_DIR_ENV, ExperimentBundle
from models.errors import DepallocError
from models.profile import REFERENCE_MILLICORES
from models.simulation import RunResult, SimulationMode
from views import ReportView, SetpointView

logger = logging.getLogger("depalloc")

LOG_LEVEL_ENV = "DEPALLOC_LOG_LEVEL"
DEFAULT_SYNTH_DIR = "configs/generated"


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=None,
                        help="Master seed (run/compare) or generator seed (synth)")
    common.add_argument("--jobs", type=int, default=1,
                        help="Replications simulated concurrently (default: 1)")
    common.add_argument("--out", type=Path, default=None,
                        help=f"Output directory; overrides the experiment file and ${OUT_DIR_ENV}")
    common.add_argument("--format", choices=["table", "csv", "json"], default="table",
                        help="Report format on standard output (default: table)")
    common.add_argument("--log-level", default=os.getenv(LOG_LEVEL_ENV, "WARNING"),
                        help=f"Logging level on standard error (default: ${LOG_LEVEL_ENV} or WARNING)")

    parser = argparse.ArgumentParser(
        prog="depalloc",
        description="Dependency-aware CPU allocation for serverless function DAGs",
        formatter_class=argparse.RawDescriptionHelpFormatter,
        epilog="""
Examples:
  # Check an application file
  %(prog)s validate configs/apps/sockshop.json

  # Set points of the worked example
  %(prog)s setpoints configs/apps/five_functions.json --profile configs/profiles/five_functions.json

  # Both modes side by side, 4 replications at a time
  %(prog)s compare configs/experiments/sockshop_bottleneck.json --jobs 4

  # A 25-function app with 6 entrypoints
  %(prog)s synth 25 6 2 0.5 --seed 42 --out configs/generated
        """,
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", parents=[common], help="Validate an application file")
    p.add_argument("app", type=Path)

    p = sub.add_parser("setpoints", parents=[common], help="Compute the set-point table")
    p.add_argument("app", type=Path)
    p.add_argument("--profile", type=Path, default=None,
                   help="Profile file; profiled by simulation when omitted")
    p.add_argument("--alpha", type=float, default=0.5)

    p = sub.add_parser("profile", parents=[common], help="Profile an app's functions by simulation")
    p.add_argument("app", type=Path)
    p.add_argument("--warmup", type=int, default=0, help="Requests discarded before sampling")
    p.add_argument("--samples", type=int, default=100)
    p.add_argument("--millicores", type=int, default=REFERENCE_MILLICORES)

    for name, help_text in (("run", "Run all replications of an experiment"),
                            ("compare", "Run both modes and compare them")):
        p = sub.add_parser(name, parents=[common], help=help_text)
        p.add_argument("experiment", type=Path)
        p.add_argument("--skip-warmup-s", type=float, default=0.0,
                       help="Leave the first seconds out of the reported statistics")
        if name == "run":
            p.add_argument("--mode", choices=[m.value for m in SimulationMode], default=None)
            p.add_argument("--store", action="store_true", help="Store run summaries in the database")

    p = sub.add_parser("synth", parents=[common], help="Generate a random application")
    p.add_argument("n_functions", type=int)
    p.add_argument("n_entrypoints", type=int)
    p.add_argument("avg_out_degree", type=float)
    p.add_argument("parallel_fraction", type=float)
    p.add_argument("--name", default="complex")
    p.add_argument("--max-multiplier", type=int, default=1)
    p.add_argument("--nlrt-range", type=float, nargs=2, default=[1.0, 8.0], metavar=("LOW", "HIGH"))
    p.add_argument("--cores-max", type=int, default=16000,
                   help="cores_max_millicores of the generated experiment (default: 16000)")
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(
        stream=sys.stderr,
        level=str(args.log_level).upper(),
        format="%(asctime)s %(levelname)s %(name)s: %(message)s",
    )
    handler = COMMANDS[args.command]
    try:
        return handler(args)
    except DepallocError as e:
        print(json.dumps(e.to_dict(), default=str), file=sys.stderr)
        return e.exit_code
    except Exception as e:
        logger.exception("unexpected failure")
        print(json.dumps({"error": type(e).__name__, "message": str(e)}), file=sys.stderr)
        return 2


def cmd_validate(args) -> int:
    graph, _ = GraphController.load(args.app)
    report = {
        "valid": True,
        "app": graph.name,
        "functions": len(graph.functions),
        "edges": len(graph.edges),
        "entrypoints": graph.entrypoints(),
        "order": list(graph.order),
    }
    if args.format == "json":
        _emit_json(report)
    else:
        print(f"OK {graph.name}: {len(graph.functions)} functions, {len(graph.edges)} edges")
    return 0


def cmd_setpoints(args) -> int:
    graph, perf = GraphController.load(args.app)
    if args.profile:
        nlrt = ProfileController.load(args.profile)
    else:
        nlrt = ProfileController.profile_via_simulation(graph, perf)
    nominal = ProfileController.compose_nominal(graph, nlrt)
    table = SetpointController.propagate(graph, nominal, graph.entry_slas(), args.alpha)

    if args.format == "json":
        _emit_json(SetpointView.format_report(graph, table, nominal))
    elif args.format == "csv":
        sys.stdout.write(SetpointView.format_csv(graph, table, nominal))
    else:
        print(SetpointView.format_text(graph, table, nominal))
    return 0


def cmd_profile(args) -> int:
    graph, perf = GraphController.load(args.app)
    nlrt = ProfileController.profile_via_simulation(
        graph, perf, warmup_requests=args.warmup, sample_requests=args.samples, millicores=args.millicores,
    )
    document = ProfileController.to_document(nlrt)
    out_dir = args.out or _env_out_dir()
    if out_dir:
        path = Path(out_dir) / f"{graph.name}_profile.json"
        _write_json(document, path)
        logger.info("profile written to %s", path)
    else:
        _emit_json(document)
    return 0


def cmd_run(args) -> int:
    bundle = _load_bundle(args)
    if args.mode:
        bundle = bundle.with_mode(SimulationMode(args.mode))
    mode = bundle.simulation.mode
    results = _run_mode(bundle, args)
    rows = MetricsController.aggregate(results, bundle.graph.slas())
    ReportView.write_run(results, rows, bundle.output_dir / mode.value)

    if args.store:
        _store(results, bundle)

    _emit_rows(rows, args.format)
    return 0


def cmd_compare(args) -> int:
    bundle = _load_bundle(args)
    slas = bundle.graph.slas()
    results: Dict[SimulationMode, List[RunResult]] = {}
    rows = {}
    for mode in (SimulationMode.DEPENDENCY_AWARE, SimulationMode.BASELINE):
        results[mode] = _run_mode(bundle.with_mode(mode), args)
        rows[mode] = MetricsController.aggregate(results[mode], slas)
        ReportView.write_run(results[mode], rows[mode], bundle.output_dir / mode.value)

    report = MetricsController.compare(results[SimulationMode.DEPENDENCY_AWARE], results[SimulationMode.BASELINE])
    ReportView.write_comparison(report, bundle.output_dir / "comparison.csv")

    if args.format == "json":
        _emit_json({
            "table": {mode.value: [row.__dict__ for row in mode_rows] for mode, mode_rows in rows.items()},
            "comparison": ReportView.format_comparison_json(report),
        })
    elif args.format == "csv":
        sys.stdout.write(ReportView.comparison_frame(report).to_csv(index=False, lineterminator="\n"))
    else:
        print(ReportView.format_side_by_side(rows[SimulationMode.DEPENDENCY_AWARE], rows[SimulationMode.BASELINE]))
        print()
        print(ReportView.format_comparison(report))
    return 0


def cmd_synth(args) -> int:
    seed = args.seed if args.seed is not None else 0
    app = SynthController.synthesize(
        args.n_functions,
        args.n_entrypoints,
        args.avg_out_degree,
        args.parallel_fraction,
        seed,
        max_multiplier=args.max_multiplier,
        nlrt_range_ms=tuple(args.nlrt_range),
        name=args.name,
    )
    out_dir = Path(args.out or _env_out_dir() or DEFAULT_SYNTH_DIR)
    app_path = out_dir / f"{args.name}.json"
    profile_path = out_dir / f"{args.name}_profile.json"
    experiment_path = out_dir / f"{args.name}_experiment.json"

    _write_json(GraphController.to_document(app.graph, app.perf, description=(
        f"synthesized: {args.n_functions} functions, {args.n_entrypoints} entrypoints, "
        f"mean out-degree {args.avg_out_degree}, parallel fraction {args.parallel_fraction}, seed {seed}"
    )), app_path)
    _write_json(ProfileController.to_document(app.nlrt_ms), profile_path)
    _write_json(SynthController.experiment_document(
        app, app_path.name, profile_path.name, cores_max_millicores=args.cores_max,
    ), experiment_path)

    summary = {
        "app": str(app_path),
        "profile": str(profile_path),
        "experiment": str(experiment_path),
        "functions": len(app.graph.functions),
        "entrypoints": app.graph.entrypoints(),
        "edges": len(app.graph.edges),
        "mean_out_degree": app.mean_out_degree(),
    }
    if args.format == "json":
        _emit_json(summary)
    else:
        print(f"wrote {app_path}, {profile_path}, {experiment_path} "
              f"(mean out-degree {summary['mean_out_degree']:.2f})")
    return 0


COMMANDS = {
    "validate": cmd_validate,
    "setpoints": cmd_setpoints,
    "profile": cmd_profile,
    "run": cmd_run,
    "compare": cmd_compare,
    "synth": cmd_synth,
}


def _load_bundle(args) -> ExperimentBundle:
    bundle = ExperimentController.load(args.experiment, out_dir=args.out)
    if args.seed is not None:
        bundle = bundle.with_master_seed(args.seed)
    return bundle


def _run_mode(bundle: ExperimentBundle, args) -> List[RunResult]:
    logger.info("running %s in %s mode", bundle.name, bundle.simulation.mode.value)
    results = ExperimentController.run(bundle, jobs=args.jobs)
    if args.skip_warmup_s > 0:
        slas = bundle.graph.slas()
        for result in results:
            result.summary = MetricsController.summarize(result.series, slas, args.skip_warmup_s)
    return results


def _store(results: List[RunResult], bundle: ExperimentBundle) -> None:
    from db import session_scope

    slas = bundle.graph.slas()
    with session_scope() as db:
        for result in results:
            run_id = ResultsController.create(db, result, slas, bundle.simulation.duration_s)
            logger.info("stored replication %d as run %d", result.replication, run_id)


def _emit_rows(rows, fmt: str) -> None:
    if fmt == "json":
        _emit_json([row.__dict__ for row in rows])
    elif fmt == "csv":
        sys.stdout.write(ReportView.summary_frame(rows).to_csv(index=False, lineterminator="\n"))
    else:
        print(ReportView.format_table(rows))


def _emit_json(document) -> None:
    print(json.dumps(document, indent=2, default=str))


def _write_json(document, path: Path) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(json.dumps(document, indent=2) + "\n", encoding="utf-8")


def _env_out_dir() -> Optional[str]:
    return os.getenv(OUT_DIR_ENV)


if __name__ == "__main__":
    sys.exit(main())
