"""Cluster assignment in PC space, distribution reporting, sensor pruning.

Rows are assigned to the nearest class centroid (Euclidean, in the
retained components). Rows whose nearest-centroid distance sticks out
beyond mean + multiplier * stddev of all such distances form the
"new cluster". The distribution report counts, per true class, how
many rows failed to land on their own label.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np

from enosepca.datamodel import LABEL_ORDER, QualityLabel
from enosepca.errors import DuplicateRow, EmptyClass, MissingCentroid
from enosepca.pca import ProjectedData


class AssignedCluster(enum.Enum):
    KW1 = "KW1"
    KW2 = "KW2"
    KW3 = "KW3"
    NEW_CLUSTER = "New Cluster"


_LABEL_TO_ASSIGNED = {
    QualityLabel.KW1: AssignedCluster.KW1,
    QualityLabel.KW2: AssignedCluster.KW2,
    QualityLabel.KW3: AssignedCluster.KW3,
}


@dataclass(frozen=True)
class ClusterAssignment:
    """Where one pattern vector landed and how far it had to travel."""

    row_id: int
    true_label: QualityLabel
    assigned: AssignedCluster
    distance: float

    def __post_init__(self) -> None:
        if self.distance < 0:
            raise ValueError("distance must be >= 0")


@dataclass(frozen=True)
class DistributionReport:
    """Per-class membership lists and misassignment percentages.

    ``total_misassigned_percent`` is the share of all rows that did
    not land on their own class, new-cluster rows included.
    """

    per_class: dict[QualityLabel, tuple[tuple[int, ...], float]]
    new_cluster_rows: tuple[int, ...]
    total_misassigned_percent: float

    def to_json_dict(self) -> dict:
        return {
            "per_class": {
                label.value: {
                    "member_row_ids": list(members),
                    "misassigned_percent": percent,
                }
                for label, (members, percent) in self.per_class.items()
            },
            "new_cluster_rows": list(self.new_cluster_rows),
            "total_misassigned_percent": self.total_misassigned_percent,
        }

    def to_text_table(self) -> str:
        """Quality | Rows grid, one line per class plus the new cluster."""
        lines = ["Quality     | Rows"]
        for label in LABEL_ORDER:
            if label not in self.per_class:
                continue
            members, _ = self.per_class[label]
            lines.append(f"{label.value:<11} | {','.join(str(r) for r in members)}")
        lines.append(
            f"{'New Cluster':<11} | {','.join(str(r) for r in self.new_cluster_rows)}"
        )
        return "\n".join(lines) + "\n"


@dataclass(frozen=True)
class SensorPruneDecision:
    """Which sensors the deviation rule discards, and why.

    ``removed_indices`` are 1-based sensor positions (s1..sN), the
    same numbering the CLI's --drop-sensors flag takes.
    """

    stddevs: tuple[float, ...]
    removed_indices: tuple[int, ...]
    rule: str

    def __post_init__(self) -> None:
        for idx in self.removed_indices:
            if idx < 1 or idx > len(self.stddevs):
                raise ValueError(f"sensor position {idx} out of range")

    def to_json_dict(self) -> dict:
        return {
            "stddevs": list(self.stddevs),
            "removed_indices": list(self.removed_indices),
            "rule": self.rule,
        }


def class_centroids(
    P: ProjectedData, labels: list[QualityLabel] | tuple[QualityLabel, ...]
) -> dict[QualityLabel, np.ndarray]:
    """Mean score row of each class present in ``labels``."""
    if len(labels) != P.scores.shape[0]:
        raise ValueError("one label per score row required")
    if not labels:
        raise EmptyClass("no rows to average")
    centroids: dict[QualityLabel, np.ndarray] = {}
    for label in LABEL_ORDER:
        rows = [i for i, l in enumerate(labels) if l is label]
        if rows:
            centroids[label] = P.scores[rows].mean(axis=0)
    return centroids


def assign_clusters(
    P: ProjectedData,
    labels,
    centroids: dict[QualityLabel, np.ndarray],
    outlier_multiplier: float = 2.0,
) -> list[ClusterAssignment]:
    """Nearest-centroid assignment with a global distance-outlier rule.

    Ties go to the lowest-index class (KW1 < KW2 < KW3). After all
    rows are placed, any row whose nearest-centroid distance exceeds
    mean + outlier_multiplier * stddev (population stddev over all
    nearest distances) moves to the new cluster instead.
    """
    if outlier_multiplier <= 0:
        raise ValueError("outlier_multiplier must be > 0")
    missing = [l.value for l in LABEL_ORDER if l not in centroids]
    if missing:
        raise MissingCentroid(f"no centroid for: {', '.join(missing)}")
    if len(labels) != P.scores.shape[0]:
        raise ValueError("one label per score row required")

    nearest: list[tuple[QualityLabel, float]] = []
    for i in range(P.scores.shape[0]):
        best_label = None
        best_dist = np.inf
        for label in LABEL_ORDER:
            d = float(np.linalg.norm(P.scores[i] - centroids[label]))
            if d < best_dist:
                best_dist = d
                best_label = label
        nearest.append((best_label, best_dist))

    dists = np.array([d for _, d in nearest])
    cutoff = float(dists.mean() + outlier_multiplier * dists.std())

    assignments = []
    for i, (label, dist) in enumerate(nearest):
        assigned = _LABEL_TO_ASSIGNED[label]
        if dist > cutoff:
            assigned = AssignedCluster.NEW_CLUSTER
        assignments.append(
            ClusterAssignment(
                row_id=i + 1,
                true_label=labels[i],
                assigned=assigned,
                distance=dist,
            )
        )
    return assignments


def distribution_report(assignments: list[ClusterAssignment]) -> DistributionReport:
    """Tally self-assigned members and misassignment percent per class."""
    seen: set[int] = set()
    for a in assignments:
        if a.row_id in seen:
            raise DuplicateRow(f"row {a.row_id} appears more than once")
        seen.add(a.row_id)

    per_class: dict[QualityLabel, tuple[tuple[int, ...], float]] = {}
    total_missed = 0
    for label in LABEL_ORDER:
        rows = [a for a in assignments if a.true_label is label]
        if not rows:
            continue
        members = tuple(
            sorted(a.row_id for a in rows if a.assigned is _LABEL_TO_ASSIGNED[label])
        )
        missed = len(rows) - len(members)
        total_missed += missed
        per_class[label] = (members, 100.0 * missed / len(rows))
    new_cluster = tuple(
        sorted(a.row_id for a in assignments if a.assigned is AssignedCluster.NEW_CLUSTER)
    )
    total = 100.0 * total_missed / len(assignments) if assignments else 0.0
    return DistributionReport(
        per_class=per_class,
        new_cluster_rows=new_cluster,
        total_misassigned_percent=total,
    )


def prune_sensors(stddevs, ratio_threshold: float = 2.0) -> SensorPruneDecision:
    """Drop sensors whose deviation dwarfs the rest.

    Greedy from the largest: a sensor is removed while its stddev
    exceeds ratio_threshold times the median stddev of the sensors
    still standing (candidate included). Equal stddevs remove nothing.
    """
    values = np.asarray(stddevs, dtype=np.float64)
    if values.ndim != 1 or values.shape[0] < 2:
        raise ValueError("need a 1-D vector of at least 2 stddevs")
    if ratio_threshold <= 1:
        raise ValueError("ratio_threshold must be > 1")

    remaining = list(range(values.shape[0]))
    removed: list[int] = []
    while len(remaining) > 1:
        sub = values[remaining]
        top = int(np.argmax(sub))  # first occurrence wins ties
        med = float(np.median(sub))
        if float(sub[top]) > ratio_threshold * med:
            removed.append(remaining.pop(top))
        else:
            break
    rule = (
        f"remove greedily from largest while stddev > {ratio_threshold} x "
        "median(stddevs of remaining sensors)"
    )
    return SensorPruneDecision(
        stddevs=tuple(float(v) for v in values),
        removed_indices=tuple(i + 1 for i in removed),
        rule=rule,
    )
