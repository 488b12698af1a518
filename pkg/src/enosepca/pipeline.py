"""End-to-end orchestration: trials in, artifacts out.

One run is a strict chain: select replication -> optional sensor drop
-> pattern matrix -> normalize -> templates/deviations/prune decision
-> (optional) centering -> covariance -> eigendecomposition ->
projection -> centroid assignment -> distribution report. Every stage
output is serialized so each result table can be inspected afterwards;
nothing is written until the whole chain has succeeded.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from enosepca import cluster as _cluster
from enosepca import normalize as _normalize
from enosepca import pca as _pca
from enosepca import report as _report
from enosepca import svgplot as _svgplot
from enosepca.datamodel import (
    PatternMatrix,
    ReduceMethod,
    SamplingSpec,
    TrialCapture,
    build_pattern_matrix,
    select_replication,
)
from enosepca.normalize import NormalizationMethod

ARTIFACT_NAMES = (
    "templates.csv",
    "stddev.csv",
    "normalized.csv",
    "prune.json",
    "eigen.json",
    "scores.csv",
    "pareto.svg",
    "scatter.svg",
    "distribution.json",
    "distribution.txt",
)


@dataclass(frozen=True)
class PipelineConfig:
    """Everything one `run` invocation needs besides the data itself."""

    normalization: NormalizationMethod = NormalizationMethod.POWER_AVERAGE
    components_k: int = 2
    center: bool = True
    outlier_multiplier: float = 2.0
    prune_ratio: float = 2.0
    reduce_method: ReduceMethod = ReduceMethod.BLOCK_MEAN
    drop_sensors: tuple[int, ...] = ()
    replication: int = 1
    sampling: SamplingSpec = field(default_factory=SamplingSpec)
    input_path: Path | None = None
    output_dir: Path | None = None

    def __post_init__(self) -> None:
        if self.components_k < 1:
            raise ValueError("components_k must be >= 1")
        if self.outlier_multiplier <= 0:
            raise ValueError("outlier_multiplier must be > 0")
        if self.prune_ratio <= 1:
            raise ValueError("prune_ratio must be > 1")
        if self.replication < 1:
            raise ValueError("replication is 1-based")


@dataclass(frozen=True)
class PipelineResult:
    """All intermediate and final products of one pipeline run."""

    pattern: PatternMatrix
    normalized: _normalize.NormalizedMatrix
    templates: list[_normalize.ClassTemplate]
    stddevs: np.ndarray
    prune: _cluster.SensorPruneDecision
    covariance: _pca.CovarianceMatrix
    spectrum: _pca.EigenSpectrum
    projected: _pca.ProjectedData
    column_means: np.ndarray
    centroids: dict
    assignments: list[_cluster.ClusterAssignment]
    report: _cluster.DistributionReport


def full_variance_fractions(spectrum: _pca.EigenSpectrum) -> np.ndarray:
    """Every component's share of total variance (negatives clamped to 0)."""
    clamped = np.maximum(spectrum.eigenvalues, 0.0)
    total = float(clamped.sum())
    if total == 0.0:
        return np.zeros(spectrum.n)
    return clamped / total


def run_pipeline(trials: list[TrialCapture], config: PipelineConfig) -> PipelineResult:
    """Run the whole chain on an in-memory dataset."""
    picked = select_replication(trials, config.replication)
    if config.drop_sensors:
        picked = [t.drop_sensors(config.drop_sensors) for t in picked]
    pattern = build_pattern_matrix(
        picked, config.sampling, method=config.reduce_method, require_all_classes=True
    )

    if config.normalization is NormalizationMethod.POWER_AVERAGE:
        normalized = _normalize.power_average_normalize(pattern)
    else:
        normalized = _normalize.fft_normalize(pattern)

    templates = _normalize.class_templates(normalized)
    stddevs = _pca.per_sensor_stddev(normalized)
    prune = _cluster.prune_sensors(stddevs, config.prune_ratio)

    if config.center:
        centered, means = _pca.center_columns(normalized)
    else:
        centered = normalized.values
        means = np.zeros(normalized.values.shape[1])
    cov = _pca.covariance(centered)
    spectrum = _pca.eigen_symmetric(cov)
    projected = _pca.project(centered, spectrum, config.components_k)

    labels = list(pattern.row_labels)
    centroids = _cluster.class_centroids(projected, labels)
    assignments = _cluster.assign_clusters(
        projected, labels, centroids, config.outlier_multiplier
    )
    report = _cluster.distribution_report(assignments)

    return PipelineResult(
        pattern=pattern,
        normalized=normalized,
        templates=templates,
        stddevs=stddevs,
        prune=prune,
        covariance=cov,
        spectrum=spectrum,
        projected=projected,
        column_means=means,
        centroids=centroids,
        assignments=assignments,
        report=report,
    )


def artifact_documents(result: PipelineResult) -> dict[str, str]:
    """Render every artifact file as text, keyed by file name."""
    sensor_names = result.pattern.sensor_names
    return {
        "templates.csv": _report.templates_csv(result.templates, sensor_names),
        "stddev.csv": _report.stddev_csv(result.stddevs, sensor_names),
        "normalized.csv": _report.normalized_csv(result.normalized),
        "prune.json": _report.dump_json(result.prune.to_json_dict()),
        "eigen.json": _report.dump_json(
            _report.eigen_json_dict(result.spectrum, result.projected)
        ),
        "scores.csv": _report.scores_csv(result.assignments, result.projected),
        "pareto.svg": _svgplot.render_pareto(full_variance_fractions(result.spectrum)),
        "scatter.svg": _svgplot.render_scatter(result.projected, result.assignments),
        "distribution.json": _report.dump_json(result.report.to_json_dict()),
        "distribution.txt": result.report.to_text_table(),
    }


def write_artifacts(result: PipelineResult, output_dir: Path) -> list[Path]:
    """Write all artifacts; the directory is only touched on success."""
    documents = artifact_documents(result)
    output_dir.mkdir(parents=True, exist_ok=True)
    written = []
    for name in ARTIFACT_NAMES:
        path = output_dir / name
        path.write_text(documents[name], encoding="utf-8")
        written.append(path)
    return written
