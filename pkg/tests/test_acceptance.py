"""Acceptance gate: every criterion at its stated tolerance.

Each test prints one `ACCEPTANCE <n> <name>: PASS/FAIL` line (run
pytest with -s to see them live). Numeric tolerances are pinned here,
not configurable: eigensolver 1e-9/1e-8, transforms 1e-9, row-max
1e-12, and the wall-clock budgets 1 s / 5 s / 10 s.
"""

import json
import subprocess
import sys
import time

import numpy as np
import pytest

from enosepca.cluster import distribution_report, prune_sensors
from enosepca.datamodel import QualityLabel
from enosepca.normalize import NormalizationMethod, dft_magnitude, fft_magnitude
from enosepca.pca import eigen_symmetric
from enosepca.pipeline import ARTIFACT_NAMES, PipelineConfig, run_pipeline
from enosepca.synthgen import generate_dataset, with_seed
from helpers import bundled_scenario
from test_cluster import TABLE2, TABLE4, paper_distribution_assignments

KW1, KW2, KW3 = QualityLabel.KW1, QualityLabel.KW2, QualityLabel.KW3


def check(number, name, ok, detail=""):
    status = "PASS" if ok else "FAIL"
    suffix = f" ({detail})" if detail else ""
    print(f"ACCEPTANCE {number} {name}: {status}{suffix}")
    assert ok, f"criterion {number} {name}{suffix}"


def test_criterion_1_eigensolver_suite():
    rng = np.random.default_rng(2024)
    start = time.perf_counter()
    worst_ortho = worst_recon = worst_trace = 0.0
    for i in range(100):
        n = 2 + i % 7
        a = rng.normal(0.0, 5.0, size=(n, n))
        S = (a + a.T) / 2.0
        E = eigen_symmetric(S)
        U, lam = E.eigenvectors, E.eigenvalues
        frob = float(np.linalg.norm(S))
        worst_ortho = max(worst_ortho, float(np.max(np.abs(U.T @ U - np.eye(n)))))
        worst_recon = max(
            worst_recon, float(np.linalg.norm(U @ np.diag(lam) @ U.T - S)) / max(frob, 1e-300)
        )
        trace = float(np.trace(S))
        worst_trace = max(worst_trace, abs(lam.sum() - trace) / max(abs(trace), frob, 1e-300))
    elapsed = time.perf_counter() - start
    ok = worst_ortho <= 1e-9 and worst_recon <= 1e-8 and worst_trace <= 1e-9 and elapsed < 1.0
    check(
        1, "eigensolver suite", ok,
        f"ortho {worst_ortho:.2e}, recon {worst_recon:.2e}, trace {worst_trace:.2e}, {elapsed:.2f}s",
    )


def test_criterion_2_fft_vs_dft_oracle():
    rng = np.random.default_rng(4096)
    start = time.perf_counter()
    worst_rel = worst_parseval = 0.0
    for L in range(1, 65):
        for _ in range(100):
            v = rng.normal(0.0, 1.0, size=L)
            d = dft_magnitude(v)
            f = fft_magnitude(v)
            denom = max(float(np.linalg.norm(d)), 1e-300)
            worst_rel = max(worst_rel, float(np.linalg.norm(f - d)) / denom)
            time_energy = float(np.sum(v * v))
            freq_energy = float(np.sum(d * d)) / L
            worst_parseval = max(
                worst_parseval, abs(freq_energy - time_energy) / max(time_energy, 1e-300)
            )
    elapsed = time.perf_counter() - start
    ok = worst_rel <= 1e-9 and worst_parseval <= 1e-9 and elapsed < 5.0
    check(
        2, "fft-vs-dft oracle", ok,
        f"rel {worst_rel:.2e}, parseval {worst_parseval:.2e}, {elapsed:.2f}s",
    )


def test_criterion_3_normalization_properties():
    from enosepca.datamodel import PatternMatrix
    from enosepca.normalize import power_average_normalize

    rng = np.random.default_rng(1000)
    rows = rng.uniform(0.0, 1e4, size=(1000, 6))
    rows[::97] = 0.0  # sprinkle all-zero rows
    scales = rng.uniform(1e-3, 1e3, size=1000)

    def as_pattern(values):
        return PatternMatrix(
            values=values,
            row_labels=(KW1,) * values.shape[0],
            row_ids=tuple(range(1, values.shape[0] + 1)),
            sensor_names=tuple(f"s{i+1}" for i in range(values.shape[1])),
        )

    once = power_average_normalize(as_pattern(rows))
    twice = power_average_normalize(as_pattern(once.values))
    scaled = power_average_normalize(as_pattern(rows * scales[:, None]))

    nonzero = [i for i in range(1000) if i not in once.zero_rows]
    max_dev = float(np.max(np.abs(once.values[nonzero].max(axis=1) - 1.0)))
    idem = float(np.max(np.abs(twice.values - once.values)))
    scale_dev = float(np.max(np.abs(scaled.values - once.values)))
    ok = max_dev <= 1e-12 and idem <= 1e-12 and scale_dev <= 1e-12
    check(
        3, "normalization properties", ok,
        f"row-max dev {max_dev:.2e}, idempotence {idem:.2e}, scale {scale_dev:.2e}",
    )


def test_criterion_4_power_average_deviation_fixture():
    decision = prune_sensors(TABLE2, 2.0)
    v = np.asarray(TABLE2)
    ok = (
        decision.removed_indices == ()
        and int(np.argmax(v)) + 1 == 1
        and int(np.argmin(v)) + 1 == 5
    )
    check(4, "power-average deviation fixture", ok,
          f"removed {list(decision.removed_indices)}, max s{int(np.argmax(v))+1}, min s{int(np.argmin(v))+1}")


def test_criterion_5_fft_deviation_fixture():
    decision = prune_sensors(TABLE4, 2.0)
    ok = decision.removed_indices == (6,)
    check(5, "fft deviation fixture", ok, f"removed {list(decision.removed_indices)}")


def test_criterion_6_distribution_fixture():
    report = distribution_report(paper_distribution_assignments())
    ok = (
        report.per_class[KW1][1] == 0.0
        and report.per_class[KW2][1] == 20.0
        and report.per_class[KW3][1] == 20.0
        and list(report.new_cluster_rows) == [24, 30, 32, 38, 42, 47, 55, 60]
    )
    check(
        6, "distribution fixture", ok,
        f"KW1 {report.per_class[KW1][1]}%, KW2 {report.per_class[KW2][1]}%, "
        f"KW3 {report.per_class[KW3][1]}%, new {list(report.new_cluster_rows)}",
    )


def test_criterion_7_fft_beats_power_average_under_drift():
    scenario = bundled_scenario("scenario_drift.json")
    assert scenario.gain_drift_fraction == 0.3
    assert all(m.noise_sigma > 0 for m in scenario.models.values())
    start = time.perf_counter()
    gaps = []
    strict = True
    for seed in range(10):
        trials = generate_dataset(with_seed(scenario, seed))
        pa = run_pipeline(trials, PipelineConfig(normalization=NormalizationMethod.POWER_AVERAGE))
        ff = run_pipeline(trials, PipelineConfig(normalization=NormalizationMethod.FFT))
        p = pa.report.total_misassigned_percent
        f = ff.report.total_misassigned_percent
        gaps.append(p - f)
        strict = strict and (f < p)
    elapsed = time.perf_counter() - start
    ok = strict and elapsed < 10.0
    check(
        7, "fft beats power-average under drift", ok,
        f"min gap {min(gaps):.1f}pp over 10 seeds, {elapsed:.2f}s",
    )


def test_criterion_8_separation_sanity():
    scenario = bundled_scenario("scenario_separated.json")
    # scenario-level separation: class amplitude vectors vs noise sigma
    amp = {
        label: np.array([scenario.models[(label, s)].amplitude for s in range(1, 7)])
        for label in (KW1, KW2, KW3)
    }
    min_sep = min(
        float(np.linalg.norm(amp[a] - amp[b]))
        for a, b in ((KW1, KW2), (KW1, KW3), (KW2, KW3))
    )
    max_sigma = max(m.noise_sigma for m in scenario.models.values())
    trials = generate_dataset(scenario)
    result = run_pipeline(trials, PipelineConfig(normalization=NormalizationMethod.FFT))
    ve = float(result.projected.variance_explained.sum())
    ok = (
        min_sep >= 50.0 * max_sigma
        and result.report.total_misassigned_percent == 0.0
        and result.report.new_cluster_rows == ()
        and ve >= 0.90
    )
    check(
        8, "separation sanity", ok,
        f"sep {min_sep / max_sigma:.0f} sigma, mis {result.report.total_misassigned_percent}%, "
        f"new {list(result.report.new_cluster_rows)}, pc1+pc2 {100 * ve:.1f}%",
    )


def test_criterion_9_end_to_end_determinism(tmp_path):
    csv_path = tmp_path / "input.csv"
    code = subprocess.run(
        [sys.executable, "-m", "enosepca", "simulate", "--out", str(csv_path)],
        capture_output=True,
    ).returncode
    assert code == 0
    digests = []
    for run in (1, 2):
        out = tmp_path / f"run{run}"
        code = subprocess.run(
            [sys.executable, "-m", "enosepca", "run",
             "--input", str(csv_path), "--out", str(out), "--normalize", "fft"],
            capture_output=True,
        ).returncode
        assert code == 0
        digests.append({name: (out / name).read_bytes() for name in ARTIFACT_NAMES})
    ok = digests[0] == digests[1]
    check(9, "end-to-end determinism", ok, f"{len(ARTIFACT_NAMES)} artifacts compared")
