"""Command-line interface.

Subcommands:
  run       ingest a capture CSV, run the chosen normalization + PCA +
            clustering chain, and write all report artifacts
  simulate  generate a synthetic capture CSV from a scenario file
  render    rebuild pareto.svg and scatter.svg from saved artifacts

Exit codes: 0 success, 2 input/config error, 3 numeric failure.
"""

from __future__ import annotations

import argparse
import sys
from importlib import resources
from pathlib import Path

import numpy as np

from enosepca import report as _report
from enosepca import svgplot as _svgplot
from enosepca.datamodel import ReduceMethod, SamplingSpec, parse_dataset, serialize_dataset
from enosepca.errors import InputError, NumericError
from enosepca.normalize import NormalizationMethod
from enosepca.pca import ProjectedData
from enosepca.pipeline import PipelineConfig, run_pipeline, write_artifacts
from enosepca.synthgen import generate_dataset, load_scenario, scenario_from_dict

DEFAULT_SCENARIO = "scenario_drift.json"


def bundled_scenario_text(name: str = DEFAULT_SCENARIO) -> str:
    return (
        resources.files("enosepca").joinpath("data").joinpath(name).read_text(encoding="utf-8")
    )


def _parse_drop_sensors(raw: str) -> tuple[int, ...]:
    try:
        positions = tuple(int(part) for part in raw.split(",") if part.strip())
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a comma list of integers: {raw!r}") from None
    if any(p < 1 for p in positions):
        raise argparse.ArgumentTypeError("sensor positions are 1-based")
    return positions


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="enosepca",
        description="Electronic-nose quality classification pipeline",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    run = sub.add_parser("run", help="run the full pipeline on a capture CSV")
    run.add_argument("--input", required=True, type=Path, help="capture CSV file")
    run.add_argument("--out", required=True, type=Path, help="artifact output directory")
    run.add_argument(
        "--normalize",
        choices=[m.value for m in NormalizationMethod],
        default=NormalizationMethod.POWER_AVERAGE.value,
        help="normalization method (default: power-average)",
    )
    run.add_argument("--components", type=int, default=2, help="retained PCs (default: 2)")
    run.add_argument(
        "--no-center",
        action="store_true",
        help="skip column centering before the covariance step",
    )
    run.add_argument("--outlier-multiplier", type=float, default=2.0)
    run.add_argument("--prune-ratio", type=float, default=2.0)
    run.add_argument(
        "--reduce",
        choices=[m.value for m in ReduceMethod],
        default=ReduceMethod.BLOCK_MEAN.value,
        help="60-to-20 reduction method (default: block-mean)",
    )
    run.add_argument(
        "--drop-sensors",
        type=_parse_drop_sensors,
        default=(),
        metavar="LIST",
        help="1-based sensor positions to exclude, e.g. 6 or 1,6",
    )
    run.add_argument("--replication", type=int, default=1, help="which replication to analyze")
    run.add_argument("--sample-rate", type=float, default=3.0, help="Hz (default: 3)")
    run.add_argument("--raw-samples", type=int, default=60, help="per trial (default: 60)")
    run.add_argument("--reduced-samples", type=int, default=20, help="per trial (default: 20)")

    sim = sub.add_parser("simulate", help="generate a synthetic capture CSV")
    sim.add_argument(
        "--scenario",
        type=Path,
        default=None,
        help=f"scenario JSON (default: bundled {DEFAULT_SCENARIO})",
    )
    sim.add_argument("--out", required=True, type=Path, help="output CSV path")
    sim.add_argument("--trials", type=int, default=None, help="trials per class override")
    sim.add_argument("--seed", type=int, default=None, help="scenario seed override")
    sim.add_argument(
        "--drift", type=float, default=None, help="gain drift fraction override (0 disables)"
    )

    render = sub.add_parser("render", help="re-render SVG plots from saved artifacts")
    render.add_argument(
        "--artifacts", required=True, type=Path, help="directory holding eigen.json + scores.csv"
    )
    render.add_argument(
        "--out", type=Path, default=None, help="output directory (default: --artifacts)"
    )
    return parser


def _cmd_run(args: argparse.Namespace) -> int:
    config = PipelineConfig(
        normalization=NormalizationMethod(args.normalize),
        components_k=args.components,
        center=not args.no_center,
        outlier_multiplier=args.outlier_multiplier,
        prune_ratio=args.prune_ratio,
        reduce_method=ReduceMethod(args.reduce),
        drop_sensors=args.drop_sensors,
        replication=args.replication,
        sampling=SamplingSpec(args.sample_rate, args.raw_samples, args.reduced_samples),
        input_path=args.input,
        output_dir=args.out,
    )
    with open(args.input, "rb") as handle:
        trials = parse_dataset(handle, config.sampling)
    result = run_pipeline(trials, config)
    write_artifacts(result, args.out)
    print(f"wrote {len(result.assignments)} assignments to {args.out}")
    print(f"total misassigned: {result.report.total_misassigned_percent:.1f}%")
    return 0


def _cmd_simulate(args: argparse.Namespace) -> int:
    if args.scenario is None:
        import json

        scenario = scenario_from_dict(json.loads(bundled_scenario_text()))
    else:
        scenario = load_scenario(args.scenario)
    if args.seed is not None:
        from enosepca.synthgen import with_seed

        scenario = with_seed(scenario, args.seed)
    if args.drift is not None:
        from dataclasses import replace

        scenario = replace(scenario, gain_drift_fraction=args.drift)
    trials = generate_dataset(scenario, args.trials)
    text = serialize_dataset(trials)
    args.out.parent.mkdir(parents=True, exist_ok=True)
    args.out.write_text(text, encoding="utf-8")
    print(f"wrote {len(trials)} trials to {args.out}")
    return 0


def _cmd_render(args: argparse.Namespace) -> int:
    artifacts = args.artifacts
    out_dir = args.out if args.out is not None else artifacts
    eigen = _report.read_eigen_json((artifacts / "eigen.json").read_text(encoding="utf-8"))
    assignments, scores = _report.read_scores_csv(
        (artifacts / "scores.csv").read_text(encoding="utf-8")
    )
    projected = ProjectedData(
        scores=scores,
        variance_explained=np.asarray(eigen["variance_explained"], dtype=np.float64),
    )
    eigenvalues = np.asarray(eigen["eigenvalues"], dtype=np.float64)
    clamped = np.maximum(eigenvalues, 0.0)
    total = float(clamped.sum())
    fractions = clamped / total if total > 0 else np.zeros(len(eigenvalues))
    out_dir.mkdir(parents=True, exist_ok=True)
    (out_dir / "pareto.svg").write_text(_svgplot.render_pareto(fractions), encoding="utf-8")
    (out_dir / "scatter.svg").write_text(
        _svgplot.render_scatter(projected, assignments), encoding="utf-8"
    )
    print(f"re-rendered pareto.svg and scatter.svg in {out_dir}")
    return 0


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    handlers = {"run": _cmd_run, "simulate": _cmd_simulate, "render": _cmd_render}
    try:
        return handlers[args.command](args)
    except NumericError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except (InputError, OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
