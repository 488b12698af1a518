"""Electronic-nose quality classification pipeline.

Ingests multi-sensor ADC time series, normalizes them (power-average
or FFT), extracts principal components with a from-scratch symmetric
eigensolver, prunes noisy sensors by deviation, assigns quality
clusters, and emits machine-readable reports plus SVG plots.
"""

from enosepca._kernels import BACKEND
from enosepca.cluster import (
    AssignedCluster,
    ClusterAssignment,
    DistributionReport,
    SensorPruneDecision,
    assign_clusters,
    class_centroids,
    distribution_report,
    prune_sensors,
)
from enosepca.datamodel import (
    CANONICAL_SENSOR_MAP,
    PatternMatrix,
    QualityLabel,
    ReduceMethod,
    SamplingSpec,
    TrialCapture,
    build_pattern_matrix,
    downsample,
    parse_dataset,
    select_replication,
    serialize_dataset,
)
from enosepca.normalize import (
    ClassTemplate,
    FftAxis,
    NormalizationMethod,
    NormalizedMatrix,
    class_templates,
    dft_magnitude,
    fft_magnitude,
    fft_normalize,
    power_average_normalize,
)
from enosepca.pca import (
    CovarianceMatrix,
    EigenSpectrum,
    ProjectedData,
    center_columns,
    covariance,
    eigen_symmetric,
    per_sensor_stddev,
    project,
)
from enosepca.pipeline import PipelineConfig, PipelineResult, run_pipeline, write_artifacts
from enosepca.svgplot import render_pareto, render_scatter
from enosepca.synthgen import (
    ScenarioSpec,
    SensorModel,
    apply_gain_drift,
    generate_dataset,
    generate_trial,
    load_scenario,
    response_curve,
)

__version__ = "0.1.0"

__all__ = [
    "BACKEND",
    "CANONICAL_SENSOR_MAP",
    "AssignedCluster",
    "ClassTemplate",
    "ClusterAssignment",
    "CovarianceMatrix",
    "DistributionReport",
    "EigenSpectrum",
    "FftAxis",
    "NormalizationMethod",
    "NormalizedMatrix",
    "PatternMatrix",
    "PipelineConfig",
    "PipelineResult",
    "ProjectedData",
    "QualityLabel",
    "ReduceMethod",
    "SamplingSpec",
    "ScenarioSpec",
    "SensorModel",
    "SensorPruneDecision",
    "TrialCapture",
    "apply_gain_drift",
    "assign_clusters",
    "build_pattern_matrix",
    "center_columns",
    "class_centroids",
    "class_templates",
    "covariance",
    "dft_magnitude",
    "distribution_report",
    "downsample",
    "eigen_symmetric",
    "fft_magnitude",
    "fft_normalize",
    "generate_dataset",
    "generate_trial",
    "load_scenario",
    "parse_dataset",
    "per_sensor_stddev",
    "power_average_normalize",
    "project",
    "prune_sensors",
    "render_pareto",
    "render_scatter",
    "response_curve",
    "run_pipeline",
    "select_replication",
    "serialize_dataset",
    "write_artifacts",
]
