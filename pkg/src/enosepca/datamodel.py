"""Domain types, CSV ingestion, and sample-count reduction.

The on-disk format is one UTF-8 CSV with header
``label,trial,sample_index,s1,...,sN``: ``label`` is a quality class
(KW1/KW2/KW3), ``trial`` a 1-based capture number, ``sample_index``
the 0-based position within the capture, and the ``s*`` columns hold
raw ADC readings, one per sensor.

Column ids map to physical sensors via :data:`CANONICAL_SENSOR_MAP`
(s1=TGS825, s2=TGS826, s3=TGS822, s4=TGS813, s5=TGS2620, s6=TGS2611);
the pipeline itself only ever speaks in column ids.
"""

from __future__ import annotations

import csv
import enum
import io
from dataclasses import dataclass

import numpy as np

from enosepca.errors import (
    InconsistentSensorCount,
    IndivisibleBlockSize,
    MalformedCsv,
    MissingClass,
    UnknownLabel,
    WrongSampleCount,
)

CANONICAL_SENSOR_MAP = {
    "s1": "TGS825",
    "s2": "TGS826",
    "s3": "TGS822",
    "s4": "TGS813",
    "s5": "TGS2620",
    "s6": "TGS2611",
}

_FIXED_COLUMNS = ("label", "trial", "sample_index")


class QualityLabel(enum.Enum):
    """The three quality grades under classification."""

    KW1 = "KW1"
    KW2 = "KW2"
    KW3 = "KW3"

    def __lt__(self, other: "QualityLabel") -> bool:
        return self.value < other.value


LABEL_ORDER = (QualityLabel.KW1, QualityLabel.KW2, QualityLabel.KW3)


class ReduceMethod(enum.Enum):
    """How 60 raw samples become 20: averaged blocks or plain decimation."""

    BLOCK_MEAN = "block-mean"
    TAKE_EVERY_KTH = "take-every-kth"


@dataclass(frozen=True)
class SamplingSpec:
    """Acquisition geometry: rate plus raw and reduced samples per trial."""

    sample_rate_hz: float = 3.0
    raw_samples_per_trial: int = 60
    reduced_samples_per_trial: int = 20

    def __post_init__(self) -> None:
        if self.sample_rate_hz <= 0:
            raise ValueError("sample_rate_hz must be > 0")
        if self.raw_samples_per_trial < 1 or self.reduced_samples_per_trial < 1:
            raise ValueError("sample counts must be >= 1")
        if self.raw_samples_per_trial % self.reduced_samples_per_trial != 0:
            raise IndivisibleBlockSize(
                f"raw count {self.raw_samples_per_trial} is not a multiple of "
                f"reduced count {self.reduced_samples_per_trial}"
            )

    @property
    def block_size(self) -> int:
        return self.raw_samples_per_trial // self.reduced_samples_per_trial


@dataclass(frozen=True)
class TrialCapture:
    """One odorant exposure: raw ADC samples per sensor over time."""

    label: QualityLabel
    trial_index: int
    samples: np.ndarray
    sensor_names: tuple[str, ...]

    def __post_init__(self) -> None:
        arr = np.ascontiguousarray(self.samples, dtype=np.float64)
        if arr.ndim != 2:
            raise ValueError("samples must be a 2-D array (samples x sensors)")
        if arr.shape[1] != len(self.sensor_names):
            raise ValueError("sensor_names length must match sample columns")
        if not np.all(np.isfinite(arr)):
            raise ValueError("samples must be finite")
        if np.any(arr < 0):
            raise ValueError("ADC samples must be >= 0")
        if self.trial_index < 1:
            raise ValueError("trial_index is 1-based")
        arr.flags.writeable = False
        object.__setattr__(self, "samples", arr)
        object.__setattr__(self, "sensor_names", tuple(self.sensor_names))

    @property
    def sensor_count(self) -> int:
        return self.samples.shape[1]

    def drop_sensors(self, positions: tuple[int, ...]) -> "TrialCapture":
        """Return a copy without the given 1-based sensor positions."""
        bad = [p for p in positions if p < 1 or p > self.sensor_count]
        if bad:
            raise ValueError(f"sensor positions out of range: {bad}")
        keep = [i for i in range(self.sensor_count) if (i + 1) not in positions]
        return TrialCapture(
            label=self.label,
            trial_index=self.trial_index,
            samples=self.samples[:, keep],
            sensor_names=tuple(self.sensor_names[i] for i in keep),
        )


@dataclass(frozen=True)
class PatternMatrix:
    """Stacked pattern vectors: one row per reduced time instant.

    Rows are grouped into class blocks in KW1, KW2, KW3 order and
    numbered 1-based, so a full three-class build with 20 reduced
    samples has rows 1-20 = KW1, 21-40 = KW2, 41-60 = KW3.
    """

    values: np.ndarray
    row_labels: tuple[QualityLabel, ...]
    row_ids: tuple[int, ...]
    sensor_names: tuple[str, ...]

    def __post_init__(self) -> None:
        arr = np.ascontiguousarray(self.values, dtype=np.float64)
        if arr.ndim != 2:
            raise ValueError("values must be 2-D")
        if not np.all(np.isfinite(arr)):
            raise ValueError("pattern matrix entries must be finite")
        if len(self.row_labels) != arr.shape[0] or len(self.row_ids) != arr.shape[0]:
            raise ValueError("row metadata must match row count")
        if arr.shape[1] != len(self.sensor_names):
            raise ValueError("sensor_names length must match columns")
        arr.flags.writeable = False
        object.__setattr__(self, "values", arr)
        object.__setattr__(self, "row_labels", tuple(self.row_labels))
        object.__setattr__(self, "row_ids", tuple(self.row_ids))
        object.__setattr__(self, "sensor_names", tuple(self.sensor_names))

    @property
    def complete(self) -> bool:
        """True when all three quality classes contribute rows."""
        return set(self.row_labels) == set(LABEL_ORDER)

    def class_blocks(self) -> list[tuple[QualityLabel, int, int]]:
        """Consecutive (label, start, stop) row runs, stop exclusive."""
        blocks: list[tuple[QualityLabel, int, int]] = []
        start = 0
        for i in range(1, len(self.row_labels) + 1):
            if i == len(self.row_labels) or self.row_labels[i] != self.row_labels[start]:
                blocks.append((self.row_labels[start], start, i))
                start = i
        return blocks


def _parse_label(raw: str) -> QualityLabel:
    try:
        return QualityLabel(raw)
    except ValueError:
        raise UnknownLabel(f"unknown quality label {raw!r}") from None


def _parse_float(raw: str, line_no: int) -> float:
    try:
        value = float(raw)
    except ValueError:
        raise MalformedCsv(f"line {line_no}: non-numeric cell {raw!r}") from None
    if not np.isfinite(value):
        raise MalformedCsv(f"line {line_no}: non-finite cell {raw!r}")
    if value < 0:
        raise MalformedCsv(f"line {line_no}: negative ADC value {raw!r}")
    return value


def _parse_int(raw: str, line_no: int, what: str) -> int:
    try:
        return int(raw)
    except ValueError:
        raise MalformedCsv(f"line {line_no}: {what} must be an integer, got {raw!r}") from None


def parse_dataset(source, spec: SamplingSpec) -> list[TrialCapture]:
    """Parse a capture CSV into TrialCaptures, one per (label, trial) group.

    ``source`` may be a binary file-like object, ``bytes``, or ``str``
    CSV content. Groups are returned sorted by (label, trial index);
    rows within a group are ordered by sample_index, which must cover
    exactly 0..raw_samples_per_trial-1.
    """
    if hasattr(source, "read"):
        source = source.read()
    if isinstance(source, bytes):
        text = source.decode("utf-8")
    elif isinstance(source, str):
        text = source
    else:
        raise TypeError("source must be bytes, str, or a binary file-like object")

    reader = csv.reader(io.StringIO(text))
    try:
        header = next(reader)
    except StopIteration:
        raise MalformedCsv("empty file") from None
    header = [h.strip() for h in header]
    if tuple(header[:3]) != _FIXED_COLUMNS or len(header) < 4:
        raise MalformedCsv(
            f"header must be label,trial,sample_index,s1,... got {','.join(header)!r}"
        )
    sensor_names = tuple(header[3:])

    groups: dict[tuple[QualityLabel, int], list[tuple[int, list[float]]]] = {}
    for line_no, row in enumerate(reader, start=2):
        if not row:
            continue
        if len(row) != len(header):
            raise MalformedCsv(f"line {line_no}: expected {len(header)} cells, got {len(row)}")
        label = _parse_label(row[0].strip())
        trial = _parse_int(row[1], line_no, "trial")
        if trial < 1:
            raise MalformedCsv(f"line {line_no}: trial must be >= 1, got {trial}")
        sample_index = _parse_int(row[2], line_no, "sample_index")
        if sample_index < 0:
            raise MalformedCsv(f"line {line_no}: sample_index must be >= 0")
        values = [_parse_float(cell, line_no) for cell in row[3:]]
        groups.setdefault((label, trial), []).append((sample_index, values))

    captures = []
    for (label, trial), rows in sorted(groups.items()):
        if len(rows) != spec.raw_samples_per_trial:
            raise WrongSampleCount(
                f"{label.value} trial {trial}: expected {spec.raw_samples_per_trial} "
                f"samples, got {len(rows)}"
            )
        rows.sort(key=lambda r: r[0])
        indices = [r[0] for r in rows]
        if indices != list(range(spec.raw_samples_per_trial)):
            raise MalformedCsv(
                f"{label.value} trial {trial}: sample_index values must cover "
                f"0..{spec.raw_samples_per_trial - 1} exactly once"
            )
        samples = np.array([r[1] for r in rows], dtype=np.float64)
        captures.append(
            TrialCapture(label=label, trial_index=trial, samples=samples, sensor_names=sensor_names)
        )
    return captures


def serialize_dataset(trials: list[TrialCapture]) -> str:
    """Inverse of :func:`parse_dataset`; floats keep full precision."""
    if not trials:
        raise ValueError("nothing to serialize")
    sensor_names = trials[0].sensor_names
    out = io.StringIO()
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(list(_FIXED_COLUMNS) + list(sensor_names))
    for trial in trials:
        if trial.sensor_names != sensor_names:
            raise InconsistentSensorCount("trials disagree on sensor columns")
        for j in range(trial.samples.shape[0]):
            writer.writerow(
                [trial.label.value, trial.trial_index, j]
                + [repr(float(v)) for v in trial.samples[j]]
            )
    return out.getvalue()


def downsample(
    trial: TrialCapture,
    spec: SamplingSpec,
    method: ReduceMethod = ReduceMethod.BLOCK_MEAN,
) -> np.ndarray:
    """Reduce a trial's raw samples to ``reduced_samples_per_trial`` rows.

    Block-mean averages each run of k consecutive raw rows (k = raw /
    reduced) per sensor column; take-every-kth keeps the first row of
    each block instead.
    """
    raw = trial.samples
    if raw.shape[0] % spec.reduced_samples_per_trial != 0:
        raise IndivisibleBlockSize(
            f"{raw.shape[0]} raw rows cannot be split into "
            f"{spec.reduced_samples_per_trial} equal blocks"
        )
    k = raw.shape[0] // spec.reduced_samples_per_trial
    if method is ReduceMethod.BLOCK_MEAN:
        return raw.reshape(spec.reduced_samples_per_trial, k, raw.shape[1]).mean(axis=1)
    return raw[::k].copy()


def build_pattern_matrix(
    trials: list[TrialCapture],
    spec: SamplingSpec,
    method: ReduceMethod = ReduceMethod.BLOCK_MEAN,
    require_all_classes: bool = False,
) -> PatternMatrix:
    """Downsample one replication and stack it into class blocks.

    ``trials`` must hold at most one capture per quality class; use
    :func:`select_replication` to slice multi-replication datasets.
    """
    if not trials:
        raise ValueError("trials must be non-empty")
    sensor_names = trials[0].sensor_names
    for t in trials[1:]:
        if t.sensor_count != trials[0].sensor_count or t.sensor_names != sensor_names:
            raise InconsistentSensorCount(
                f"trial {t.label.value}/{t.trial_index} has sensors {t.sensor_names}, "
                f"expected {sensor_names}"
            )
    by_label: dict[QualityLabel, TrialCapture] = {}
    for t in trials:
        if t.label in by_label:
            raise ValueError(
                f"two trials for {t.label.value}: one replication per matrix "
                "(use select_replication)"
            )
        by_label[t.label] = t
    if require_all_classes:
        missing = [l.value for l in LABEL_ORDER if l not in by_label]
        if missing:
            raise MissingClass(f"classes absent from dataset: {', '.join(missing)}")

    blocks = []
    labels: list[QualityLabel] = []
    for label in LABEL_ORDER:
        if label not in by_label:
            continue
        reduced = downsample(by_label[label], spec, method)
        blocks.append(reduced)
        labels.extend([label] * reduced.shape[0])
    values = np.vstack(blocks)
    return PatternMatrix(
        values=values,
        row_labels=tuple(labels),
        row_ids=tuple(range(1, values.shape[0] + 1)),
        sensor_names=sensor_names,
    )


def replication_count(trials: list[TrialCapture]) -> int:
    """Largest number of captures any one class has."""
    counts: dict[QualityLabel, int] = {}
    for t in trials:
        counts[t.label] = counts.get(t.label, 0) + 1
    return max(counts.values(), default=0)


def select_replication(trials: list[TrialCapture], replication: int) -> list[TrialCapture]:
    """Pick the r-th capture (1-based, by trial index) of each class."""
    if replication < 1:
        raise ValueError("replication is 1-based")
    picked = []
    for label in LABEL_ORDER:
        candidates = sorted(
            (t for t in trials if t.label is label), key=lambda t: t.trial_index
        )
        if len(candidates) >= replication:
            picked.append(candidates[replication - 1])
    return picked
