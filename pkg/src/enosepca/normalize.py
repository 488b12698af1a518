"""The two normalization routes: power-average (amplitude) and FFT (frequency).

Power-average rescales each pattern vector by its own peak, so the
row shape survives and the largest entry becomes 1. The FFT route
replaces each sensor's time series (per class block) with its
magnitude spectrum, trading the time axis for frequency content.
Templates are per-class column means of whichever normalized matrix.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np

from enosepca import _kernels
from enosepca.datamodel import LABEL_ORDER, PatternMatrix, QualityLabel
from enosepca.errors import EmptyClass


class NormalizationMethod(enum.Enum):
    POWER_AVERAGE = "power-average"
    FFT = "fft"


class FftAxis(enum.Enum):
    """Spectrum orientation; only the per-sensor-column transform exists."""

    PER_SENSOR_COLUMN = "per-sensor-column"


@dataclass(frozen=True)
class NormalizedMatrix:
    """A pattern matrix after one of the two normalizations.

    ``zero_rows`` records 0-based rows the power-average step passed
    through untouched because they were all zero (a dead sensor must
    not abort a batch).
    """

    values: np.ndarray
    method: NormalizationMethod
    source: PatternMatrix
    zero_rows: tuple[int, ...] = ()

    def __post_init__(self) -> None:
        arr = np.ascontiguousarray(self.values, dtype=np.float64)
        arr.flags.writeable = False
        object.__setattr__(self, "values", arr)
        object.__setattr__(self, "zero_rows", tuple(self.zero_rows))

    @property
    def row_labels(self) -> tuple[QualityLabel, ...]:
        return self.source.row_labels

    @property
    def sensor_names(self) -> tuple[str, ...]:
        return self.source.sensor_names


@dataclass(frozen=True)
class ClassTemplate:
    """Per-class reference pattern: column mean of normalized vectors."""

    label: QualityLabel
    vector: np.ndarray

    def __post_init__(self) -> None:
        arr = np.ascontiguousarray(self.vector, dtype=np.float64)
        if arr.ndim != 1:
            raise ValueError("template vector must be 1-D")
        arr.flags.writeable = False
        object.__setattr__(self, "vector", arr)


def power_average_normalize(A: PatternMatrix) -> NormalizedMatrix:
    """Divide every row by its own maximum absolute value.

    All-zero rows pass through unchanged and are flagged instead of
    raising. For non-negative input each output row peaks at exactly 1.
    """
    values = A.values.copy()
    zero_rows = []
    for i in range(values.shape[0]):
        peak = np.max(np.abs(values[i]))
        if peak == 0.0:
            zero_rows.append(i)
        else:
            values[i] /= peak
    return NormalizedMatrix(
        values=values,
        method=NormalizationMethod.POWER_AVERAGE,
        source=A,
        zero_rows=tuple(zero_rows),
    )


def dft_magnitude(v) -> np.ndarray:
    """Magnitude spectrum |X_k| by direct O(L^2) summation.

    This is the oracle transform: X_k = sum_j v_j exp(-2i*pi*j*k/L),
    evaluated literally. Kept separate from fft_magnitude so the fast
    path always has an independent reference.
    """
    arr = np.ascontiguousarray(v, dtype=np.float64)
    if arr.ndim != 1 or arr.shape[0] < 1:
        raise ValueError("input must be a 1-D vector of length >= 1")
    return _kernels.dft_magnitude(arr)


def _is_pow2(n: int) -> bool:
    return n > 0 and (n & (n - 1)) == 0


def fft_magnitude(v) -> np.ndarray:
    """Magnitude spectrum, radix-2 fast path when the length allows.

    Non-power-of-two lengths fall back to :func:`dft_magnitude`
    (bit-for-bit, same code path); the pipeline's 20-sample blocks
    take that route and O(L^2) at L <= 64 costs nothing.
    """
    arr = np.ascontiguousarray(v, dtype=np.float64)
    if arr.ndim != 1 or arr.shape[0] < 1:
        raise ValueError("input must be a 1-D vector of length >= 1")
    if _is_pow2(arr.shape[0]):
        return _kernels.fft_pow2_magnitude(arr)
    return _kernels.dft_magnitude(arr)


def fft_normalize(
    A: PatternMatrix, axis: FftAxis = FftAxis.PER_SENSOR_COLUMN
) -> NormalizedMatrix:
    """Replace each class block's per-sensor time series with its spectrum.

    Within every class block, each sensor column of length L becomes
    the L magnitudes |X_0|..|X_{L-1}| of its discrete Fourier
    transform, so row k of a block reads "energy of each sensor at
    frequency bin k".
    """
    if axis is not FftAxis.PER_SENSOR_COLUMN:
        raise ValueError(f"unsupported axis {axis!r}")
    values = np.empty_like(A.values)
    for _, start, stop in A.class_blocks():
        for col in range(A.values.shape[1]):
            values[start:stop, col] = fft_magnitude(A.values[start:stop, col])
    return NormalizedMatrix(values=values, method=NormalizationMethod.FFT, source=A)


def class_templates(N: NormalizedMatrix) -> list[ClassTemplate]:
    """Column-wise mean of each class's normalized rows, in KW order."""
    labels = N.row_labels
    templates = []
    for label in LABEL_ORDER:
        rows = [i for i, l in enumerate(labels) if l is label]
        if not rows:
            continue
        templates.append(ClassTemplate(label=label, vector=N.values[rows].mean(axis=0)))
    if not templates:
        raise EmptyClass("no class has any rows")
    return templates
