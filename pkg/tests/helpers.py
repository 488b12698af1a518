"""Shared builders for the test suite."""

import json

import numpy as np

from enosepca.cli import bundled_scenario_text
from enosepca.datamodel import QualityLabel, SamplingSpec, TrialCapture
from enosepca.synthgen import scenario_from_dict

LABELS = (QualityLabel.KW1, QualityLabel.KW2, QualityLabel.KW3)


def trial_from_array(samples, label=QualityLabel.KW1, trial_index=1):
    samples = np.asarray(samples, dtype=np.float64)
    names = tuple(f"s{i + 1}" for i in range(samples.shape[1]))
    return TrialCapture(
        label=label, trial_index=trial_index, samples=samples, sensor_names=names
    )


def random_trial(rng, label=QualityLabel.KW1, trial_index=1, rows=60, cols=6, scale=100.0):
    return trial_from_array(
        rng.uniform(0.0, scale, size=(rows, cols)), label=label, trial_index=trial_index
    )


def three_class_trials(rng, rows=60, cols=6):
    return [
        random_trial(rng, label=label, trial_index=1, rows=rows, cols=cols)
        for label in LABELS
    ]


def csv_text(rows, header="label,trial,sample_index,s1,s2,s3,s4,s5,s6"):
    return header + "\n" + "\n".join(rows) + "\n"


def minimal_csv(spec=None, value=5.0, label="KW1", sensors=6):
    """One trial with constant samples, raw_samples_per_trial rows."""
    spec = spec or SamplingSpec()
    header = "label,trial,sample_index," + ",".join(f"s{i+1}" for i in range(sensors))
    rows = [
        f"{label},1,{j}," + ",".join(str(value) for _ in range(sensors))
        for j in range(spec.raw_samples_per_trial)
    ]
    return csv_text(rows, header)


def bundled_scenario(name):
    return scenario_from_dict(json.loads(bundled_scenario_text(name)))
