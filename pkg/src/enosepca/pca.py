"""Principal component analysis built from first principles.

Centering, sample covariance, a cyclic Jacobi eigensolver for the
symmetric covariance matrix, projection onto the leading eigenvectors,
and the per-sensor standard deviation used for pruning decisions. The
feature count here is tiny (six sensors), which is exactly the regime
where Jacobi is unbeatable: unconditionally stable, dependency-free,
and easy to cross-check.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np

from enosepca import _kernels
from enosepca.errors import (
    BadComponentCount,
    NoConvergence,
    NotSymmetric,
    TooFewRows,
)
from enosepca.normalize import NormalizedMatrix

JACOBI_OFF_TOL = 1e-12   # relative to ||S||_F
JACOBI_MAX_SWEEPS = 100


class CovDivisor(enum.Enum):
    M_MINUS_1 = "m-1"


def _as_matrix(data) -> np.ndarray:
    if isinstance(data, NormalizedMatrix):
        return data.values
    return np.ascontiguousarray(data, dtype=np.float64)


@dataclass(frozen=True)
class CovarianceMatrix:
    """Sample covariance of the (usually centered) feature columns."""

    values: np.ndarray
    centered: bool
    divisor: CovDivisor = CovDivisor.M_MINUS_1

    def __post_init__(self) -> None:
        arr = np.ascontiguousarray(self.values, dtype=np.float64)
        if arr.ndim != 2 or arr.shape[0] != arr.shape[1]:
            raise ValueError("covariance must be square")
        asym = float(np.max(np.abs(arr - arr.T))) if arr.size else 0.0
        if asym > 1e-12:
            raise NotSymmetric(f"asymmetry {asym:.3e} exceeds 1e-12")
        if np.any(np.diag(arr) < -1e-12):
            raise ValueError("variance diagonal must be non-negative")
        arr.flags.writeable = False
        object.__setattr__(self, "values", arr)

    @property
    def n(self) -> int:
        return self.values.shape[0]


@dataclass(frozen=True)
class EigenSpectrum:
    """Ordered eigenpairs of a symmetric matrix.

    Eigenvalues descend; eigenvector columns are orthonormal and
    sign-fixed so each column's largest-magnitude entry is positive
    (first such entry wins on ties). Equal eigenvalues keep the order
    the solver produced, which makes the whole decomposition
    deterministic.
    """

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray

    def __post_init__(self) -> None:
        vals = np.ascontiguousarray(self.eigenvalues, dtype=np.float64)
        vecs = np.ascontiguousarray(self.eigenvectors, dtype=np.float64)
        if vals.ndim != 1 or vecs.ndim != 2 or vecs.shape[0] != vecs.shape[1]:
            raise ValueError("need n eigenvalues and an n x n eigenvector matrix")
        if vals.shape[0] != vecs.shape[0]:
            raise ValueError("eigenvalue/eigenvector count mismatch")
        if np.any(np.diff(vals) > 0):
            raise ValueError("eigenvalues must be non-increasing")
        gram_err = float(np.max(np.abs(vecs.T @ vecs - np.eye(vals.shape[0]))))
        if gram_err > 1e-9:
            raise ValueError(f"eigenvector columns not orthonormal ({gram_err:.3e})")
        vals.flags.writeable = False
        vecs.flags.writeable = False
        object.__setattr__(self, "eigenvalues", vals)
        object.__setattr__(self, "eigenvectors", vecs)

    @property
    def n(self) -> int:
        return self.eigenvalues.shape[0]

    def to_json_dict(self) -> dict:
        return {
            "eigenvalues": [float(v) for v in self.eigenvalues],
            "eigenvectors": [
                [float(v) for v in self.eigenvectors[:, j]] for j in range(self.n)
            ],
        }


@dataclass(frozen=True)
class ProjectedData:
    """Scores in the retained principal components plus their weight."""

    scores: np.ndarray
    variance_explained: np.ndarray

    def __post_init__(self) -> None:
        scores = np.ascontiguousarray(self.scores, dtype=np.float64)
        frac = np.ascontiguousarray(self.variance_explained, dtype=np.float64)
        if scores.ndim != 2 or frac.ndim != 1 or scores.shape[1] != frac.shape[0]:
            raise ValueError("scores must be m x k with k variance fractions")
        if np.any(frac < 0) or np.any(frac > 1 + 1e-12):
            raise ValueError("variance fractions must lie in [0, 1]")
        if np.any(np.diff(frac) > 1e-12):
            raise ValueError("variance fractions must be non-increasing")
        scores.flags.writeable = False
        frac.flags.writeable = False
        object.__setattr__(self, "scores", scores)
        object.__setattr__(self, "variance_explained", frac)

    @property
    def k(self) -> int:
        return self.scores.shape[1]

    def to_json_dict(self) -> dict:
        return {
            "scores": [[float(v) for v in row] for row in self.scores],
            "variance_explained": [float(v) for v in self.variance_explained],
        }


def center_columns(N) -> tuple[np.ndarray, np.ndarray]:
    """Subtract each column's mean; returns (centered, means)."""
    matrix = _as_matrix(N)
    if matrix.shape[0] < 2:
        raise TooFewRows("centering needs at least 2 rows")
    means = matrix.mean(axis=0)
    return matrix - means, means


def covariance(centered) -> CovarianceMatrix:
    """Sample covariance (divisor m-1) of the given rows.

    Var on the diagonal, pairwise covariances off it. The caller is
    expected to have centered the columns; passing uncentered data
    reproduces the no-centering variant behind the CLI's --no-center.
    """
    matrix = _as_matrix(centered)
    m = matrix.shape[0]
    if m < 2:
        raise TooFewRows("covariance needs at least 2 rows")
    values = matrix.T @ matrix / (m - 1)
    values = (values + values.T) / 2.0  # kill rounding asymmetry
    return CovarianceMatrix(values=values, centered=True)


def eigen_symmetric(S) -> EigenSpectrum:
    """Eigendecompose a symmetric matrix with cyclic Jacobi rotations.

    Sweeps run until every off-diagonal magnitude drops below
    1e-12 * ||S||_F, then eigenpairs are sorted by descending
    eigenvalue (stable on ties) and sign-normalized.
    """
    if isinstance(S, CovarianceMatrix):
        matrix = np.array(S.values, dtype=np.float64)
    else:
        matrix = np.array(S, dtype=np.float64)
    if matrix.ndim != 2 or matrix.shape[0] != matrix.shape[1] or matrix.shape[0] < 1:
        raise ValueError("input must be square, n >= 1")
    n = matrix.shape[0]
    scale = float(np.max(np.abs(matrix))) if matrix.size else 0.0
    asym = float(np.max(np.abs(matrix - matrix.T)))
    if asym > 1e-9 * max(scale, 1.0):
        raise NotSymmetric(f"asymmetry {asym:.3e} exceeds tolerance")
    work = (matrix + matrix.T) / 2.0
    frob = float(np.sqrt(np.sum(work * work)))
    u = np.eye(n, dtype=np.float64)
    sweeps, max_off = _kernels.jacobi_sweeps(
        work, u, JACOBI_OFF_TOL * frob, JACOBI_MAX_SWEEPS
    )
    if max_off > JACOBI_OFF_TOL * frob:
        raise NoConvergence(
            f"Jacobi did not converge in {sweeps} sweeps "
            f"(max off-diagonal {max_off:.3e}, limit {JACOBI_OFF_TOL * frob:.3e})",
            residual=max_off,
        )
    vals = np.diag(work).copy()
    order = np.argsort(-vals, kind="stable")
    vals = vals[order]
    vecs = u[:, order].copy()
    for j in range(n):
        lead = int(np.argmax(np.abs(vecs[:, j])))
        if vecs[lead, j] < 0:
            vecs[:, j] = -vecs[:, j]
    return EigenSpectrum(eigenvalues=vals, eigenvectors=vecs)


def project(centered, E: EigenSpectrum, k: int) -> ProjectedData:
    """Scores in the first k components plus per-component variance share."""
    matrix = _as_matrix(centered)
    if k < 1 or k > E.n:
        raise BadComponentCount(f"k must be in 1..{E.n}, got {k}")
    if matrix.shape[1] != E.n:
        raise ValueError("column count must match eigenvector dimension")
    scores = matrix @ E.eigenvectors[:, :k]
    clamped = np.maximum(E.eigenvalues, 0.0)
    total = float(clamped.sum())
    if total > 0.0:
        fractions = clamped[:k] / total
    else:
        fractions = np.zeros(k)
    return ProjectedData(scores=scores, variance_explained=fractions)


def per_sensor_stddev(N) -> np.ndarray:
    """Sample standard deviation (divisor m-1) of each sensor column."""
    matrix = _as_matrix(N)
    if matrix.shape[0] < 2:
        raise TooFewRows("standard deviation needs at least 2 rows")
    return matrix.std(axis=0, ddof=1)
