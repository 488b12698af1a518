"""Parametric sensor-response generator for desk-scale datasets.

Each sensor follows an exponental rise to a peak and a slow decay
back toward baseline, which mimics how an odorant floods the chamber
and is then absorbed away. Noise is Gaussian per sample. Everything
is keyed off a scenario seed: the PRNG is numpy's PCG64, seeded from
(seed, class, trial, sensor), so identical inputs give bit-identical
captures and independent trials never share a stream.
"""

from __future__ import annotations

import json
import logging
import math
from dataclasses import dataclass, field, replace
from pathlib import Path

import numpy as np

from enosepca.datamodel import LABEL_ORDER, QualityLabel, SamplingSpec, TrialCapture
from enosepca.errors import ScenarioError, UnknownLabel

log = logging.getLogger(__name__)

_DRIFT_SALT = 0x5EED_D21F  # keeps drift draws off the noise streams


@dataclass(frozen=True)
class SensorModel:
    """Rise/decay response of one sensor to one odorant class."""

    baseline: float
    amplitude: float
    rise_tau: float
    decay_tau: float
    peak_time: float
    noise_sigma: float

    def __post_init__(self) -> None:
        if self.rise_tau <= 0 or self.decay_tau <= 0:
            raise ValueError("rise_tau and decay_tau must be > 0")
        if self.noise_sigma < 0:
            raise ValueError("noise_sigma must be >= 0")
        if self.baseline < 0:
            raise ValueError("baseline must be >= 0")
        if self.peak_time < 0:
            raise ValueError("peak_time must be >= 0")


@dataclass(frozen=True)
class ScenarioSpec:
    """Full description of a synthetic experiment.

    ``models`` maps (quality label, 1-based sensor position) to a
    SensorModel; every class must define the same contiguous sensor
    set s1..sN. ``gain_drift_fraction`` f > 0 makes generated trials
    pick a per-(trial, sensor) gain ramp from 1 at the first sample
    to 1 +/- f at the last.
    """

    models: dict[tuple[QualityLabel, int], SensorModel]
    seed: int
    sampling: SamplingSpec = field(default_factory=SamplingSpec)
    gain_drift_fraction: float = 0.0
    trials_per_class: int = 1

    def __post_init__(self) -> None:
        sensor_sets = {}
        for label in LABEL_ORDER:
            sensors = sorted(i for (l, i) in self.models if l is label)
            sensor_sets[label] = sensors
            if not sensors:
                raise ScenarioError(f"class {label.value} defines no sensors")
            if sensors != list(range(1, len(sensors) + 1)):
                raise ScenarioError(
                    f"class {label.value} must define contiguous sensors s1..sN"
                )
        if len({tuple(v) for v in sensor_sets.values()}) != 1:
            raise ScenarioError("all classes must define the same sensor set")
        if not 0.0 <= self.gain_drift_fraction < 1.0:
            raise ScenarioError("gain_drift_fraction must be in [0, 1)")
        if self.trials_per_class < 1:
            raise ScenarioError("trials_per_class must be >= 1")

    @property
    def sensor_count(self) -> int:
        return sum(1 for (l, _) in self.models if l is QualityLabel.KW1)

    @property
    def sensor_names(self) -> tuple[str, ...]:
        return tuple(f"s{i}" for i in range(1, self.sensor_count + 1))


def response_curve(m: SensorModel, t: float) -> float:
    """Noiseless sensor value at time t (seconds).

    Exponential approach to baseline + amplitude until peak_time,
    then exponential decay of the reached height back to baseline.
    Both branches agree at t = peak_time.
    """
    if t < 0:
        raise ValueError("t must be >= 0")
    if t <= m.peak_time:
        return m.baseline + m.amplitude * (1.0 - math.exp(-t / m.rise_tau))
    rise_height = m.amplitude * (1.0 - math.exp(-m.peak_time / m.rise_tau))
    return m.baseline + rise_height * math.exp(-(t - m.peak_time) / m.decay_tau)


def _rng(*key: int) -> np.random.Generator:
    return np.random.Generator(np.random.PCG64(np.random.SeedSequence(list(key))))


def generate_trial(
    s: ScenarioSpec, label: QualityLabel, trial_index: int
) -> TrialCapture:
    """Simulate one capture: response curves plus per-sensor noise.

    Negative samples are clamped to zero to respect ADC semantics;
    clamp counts are logged because heavy clamping distorts the noise
    statistics.
    """
    if not isinstance(label, QualityLabel):
        raise UnknownLabel(f"not a quality label: {label!r}")
    class_index = LABEL_ORDER.index(label)
    spec = s.sampling
    times = np.arange(spec.raw_samples_per_trial) / spec.sample_rate_hz
    columns = []
    clamped = 0
    for sensor in range(1, s.sensor_count + 1):
        model = s.models[(label, sensor)]
        curve = np.array([response_curve(model, float(t)) for t in times])
        if model.noise_sigma > 0:
            rng = _rng(s.seed, class_index, trial_index, sensor)
            curve = curve + rng.normal(0.0, model.noise_sigma, curve.shape[0])
        negative = curve < 0
        clamped += int(negative.sum())
        curve[negative] = 0.0
        columns.append(curve)
    if clamped:
        log.warning(
            "%s trial %d: clamped %d negative samples to 0",
            label.value, trial_index, clamped,
        )
    return TrialCapture(
        label=label,
        trial_index=trial_index,
        samples=np.column_stack(columns),
        sensor_names=s.sensor_names,
    )


def apply_gain_drift(
    trial: TrialCapture, max_fraction: float, seed: int
) -> TrialCapture:
    """Multiply each sensor's samples by a random linear gain ramp.

    The ramp runs from gain 1 at the first sample to 1 + slope at the
    last, slope drawn uniformly from [-max_fraction, +max_fraction]
    per (trial, sensor). Models sensor sensitivity drifting during a
    capture.
    """
    if not 0.0 <= max_fraction < 1.0:
        raise ValueError("max_fraction must be in [0, 1)")
    if max_fraction == 0.0:
        return trial
    class_index = LABEL_ORDER.index(trial.label)
    n = trial.samples.shape[0]
    ramp = np.arange(n) / (n - 1) if n > 1 else np.zeros(1)
    drifted = np.empty_like(trial.samples)
    for col in range(trial.sensor_count):
        rng = _rng(seed, class_index, trial.trial_index, col + 1, _DRIFT_SALT)
        slope = rng.uniform(-max_fraction, max_fraction)
        drifted[:, col] = trial.samples[:, col] * (1.0 + slope * ramp)
    return TrialCapture(
        label=trial.label,
        trial_index=trial.trial_index,
        samples=drifted,
        sensor_names=trial.sensor_names,
    )


def generate_dataset(s: ScenarioSpec, trials_per_class: int | None = None) -> list[TrialCapture]:
    """All trials of all classes, drift applied when the scenario asks."""
    count = s.trials_per_class if trials_per_class is None else trials_per_class
    if count < 1:
        raise ValueError("trials_per_class must be >= 1")
    trials = []
    for label in LABEL_ORDER:
        for trial_index in range(1, count + 1):
            trial = generate_trial(s, label, trial_index)
            if s.gain_drift_fraction > 0:
                trial = apply_gain_drift(trial, s.gain_drift_fraction, s.seed)
            trials.append(trial)
    return trials


# --- scenario (de)serialization ----------------------------------------------

_MODEL_FIELDS = ("baseline", "amplitude", "rise_tau", "decay_tau", "peak_time", "noise_sigma")


def scenario_from_dict(data: dict) -> ScenarioSpec:
    """Build a ScenarioSpec from parsed JSON, validating against the schema."""
    from enosepca.report import load_schema, validate_json  # local: avoids cycle

    validate_json(data, load_schema("scenario"), ScenarioError)
    sampling = SamplingSpec(**data["sampling"]) if "sampling" in data else SamplingSpec()
    models = {}
    for label_name, sensors in data["classes"].items():
        label = QualityLabel(label_name)
        for sensor_name, fields in sensors.items():
            position = int(sensor_name[1:])
            models[(label, position)] = SensorModel(**fields)
    return ScenarioSpec(
        models=models,
        seed=int(data["seed"]),
        sampling=sampling,
        gain_drift_fraction=float(data.get("gain_drift_fraction", 0.0)),
        trials_per_class=int(data.get("trials_per_class", 1)),
    )


def load_scenario(path: str | Path) -> ScenarioSpec:
    """Read and validate a scenario JSON file."""
    try:
        data = json.loads(Path(path).read_text(encoding="utf-8"))
    except json.JSONDecodeError as exc:
        raise ScenarioError(f"{path}: not valid JSON ({exc})") from None
    return scenario_from_dict(data)


def with_seed(s: ScenarioSpec, seed: int) -> ScenarioSpec:
    """Same scenario, different seed."""
    return replace(s, seed=seed)
