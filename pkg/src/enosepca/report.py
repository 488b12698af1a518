"""Artifact serialization: CSV grids, JSON documents, schema validation.

Every format here is deterministic: floats are written with repr()
(shortest round-trip form), dict keys keep insertion order, and line
endings are always "\\n". Re-serializing the same objects yields the
same bytes, which the end-to-end determinism tests rely on.
"""

from __future__ import annotations

import json
from importlib import resources

import jsonschema

from enosepca.cluster import ClusterAssignment, SensorPruneDecision
from enosepca.normalize import ClassTemplate, NormalizedMatrix
from enosepca.pca import EigenSpectrum, ProjectedData


def load_schema(name: str) -> dict:
    """Load one of the JSON schemas shipped with the package."""
    text = (
        resources.files("enosepca")
        .joinpath("schemas")
        .joinpath(f"{name}.schema.json")
        .read_text(encoding="utf-8")
    )
    return json.loads(text)


def validate_json(data, schema: dict, error_cls: type[Exception]) -> None:
    """Validate ``data`` against ``schema``, re-raising as ``error_cls``."""
    try:
        jsonschema.validate(data, schema)
    except jsonschema.ValidationError as exc:
        raise error_cls(f"schema violation at {list(exc.absolute_path)}: {exc.message}") from None


def dump_json(data: dict) -> str:
    return json.dumps(data, indent=2) + "\n"


def _fmt(value: float) -> str:
    return repr(float(value))


def templates_csv(templates: list[ClassTemplate], sensor_names: tuple[str, ...]) -> str:
    """Table-shaped grid: one row per quality class, one column per sensor."""
    lines = ["quality," + ",".join(sensor_names)]
    for t in templates:
        lines.append(t.label.value + "," + ",".join(_fmt(v) for v in t.vector))
    return "\n".join(lines) + "\n"


def stddev_csv(stddevs, sensor_names: tuple[str, ...]) -> str:
    """One-row grid of per-sensor standard deviations."""
    lines = [
        ",".join(sensor_names),
        ",".join(_fmt(v) for v in stddevs),
    ]
    return "\n".join(lines) + "\n"


def normalized_csv(N: NormalizedMatrix) -> str:
    """Normalized matrix in the input layout, plus a method comment line."""
    header = "label,row_id," + ",".join(N.sensor_names)
    lines = [f"# method={N.method.value}", header]
    for i in range(N.values.shape[0]):
        lines.append(
            N.row_labels[i].value
            + f",{N.source.row_ids[i]},"
            + ",".join(_fmt(v) for v in N.values[i])
        )
    return "\n".join(lines) + "\n"


def scores_csv(assignments: list[ClusterAssignment], P: ProjectedData) -> str:
    """Per-row PC coordinates with true label, assignment, and distance."""
    k = P.k
    header = "row_id,label,assigned,distance," + ",".join(f"pc{i + 1}" for i in range(k))
    lines = [header]
    for i, a in enumerate(assignments):
        lines.append(
            f"{a.row_id},{a.true_label.value},{a.assigned.value},{_fmt(a.distance)},"
            + ",".join(_fmt(v) for v in P.scores[i])
        )
    return "\n".join(lines) + "\n"


def eigen_json_dict(spectrum: EigenSpectrum, projected: ProjectedData) -> dict:
    """Eigenpairs (eigenvectors column-major) merged with projection output."""
    doc = spectrum.to_json_dict()
    doc.update(projected.to_json_dict())
    return doc


def prune_json_dict(decision: SensorPruneDecision) -> dict:
    return decision.to_json_dict()


# --- readers (the render subcommand rebuilds plots from these) ---------------

def read_eigen_json(text: str) -> dict:
    from enosepca.errors import MalformedCsv

    data = json.loads(text)
    validate_json(data, load_schema("eigen"), MalformedCsv)
    return data


def read_scores_csv(text: str):
    """Parse scores.csv back into (assignments, scores array)."""
    import numpy as np

    from enosepca.cluster import AssignedCluster
    from enosepca.datamodel import QualityLabel
    from enosepca.errors import MalformedCsv

    lines = [line for line in text.splitlines() if line]
    if not lines:
        raise MalformedCsv("scores.csv is empty")
    header = lines[0].split(",")
    if header[:4] != ["row_id", "label", "assigned", "distance"]:
        raise MalformedCsv(f"unexpected scores.csv header: {lines[0]!r}")
    k = len(header) - 4
    if k < 1:
        raise MalformedCsv("scores.csv has no pc columns")
    assignments = []
    rows = []
    for line in lines[1:]:
        cells = line.split(",")
        if len(cells) != len(header):
            raise MalformedCsv(f"bad scores.csv row: {line!r}")
        try:
            assignments.append(
                ClusterAssignment(
                    row_id=int(cells[0]),
                    true_label=QualityLabel(cells[1]),
                    assigned=AssignedCluster(cells[2]),
                    distance=float(cells[3]),
                )
            )
            rows.append([float(c) for c in cells[4:]])
        except ValueError as exc:
            raise MalformedCsv(f"bad scores.csv row {line!r}: {exc}") from None
    return assignments, np.asarray(rows, dtype=np.float64)
