import math

import numpy as np
import pytest

from enosepca.errors import BadComponentCount, NotSymmetric, TooFewRows
from enosepca.pca import (
    CovarianceMatrix,
    EigenSpectrum,
    center_columns,
    covariance,
    eigen_symmetric,
    per_sensor_stddev,
    project,
)

TABLE2_STDDEVS = [869.4426, 710.0997, 675.6139, 646.1813, 580.0782, 626.4368]


def random_symmetric(rng, n, scale=10.0):
    a = rng.normal(0.0, scale, size=(n, n))
    return (a + a.T) / 2.0


class TestCenterColumns:
    def test_simple_column(self):
        centered, means = center_columns(np.array([[1.0], [2.0], [3.0]]))
        assert centered[:, 0].tolist() == [-1.0, 0.0, 1.0]
        assert means.tolist() == [2.0]

    def test_idempotent_on_centered(self):
        base = np.array([[-1.0, 2.0], [1.0, -2.0]])
        centered, means = center_columns(base)
        assert np.array_equal(centered, base)
        assert means.tolist() == [0.0, 0.0]

    def test_column_sums_vanish(self):
        rng = np.random.default_rng(31)
        centered, _ = center_columns(rng.uniform(0, 100, size=(60, 6)))
        assert np.all(np.abs(centered.sum(axis=0)) < 1e-10)

    def test_too_few_rows(self):
        with pytest.raises(TooFewRows):
            center_columns(np.ones((1, 3)))


class TestCovariance:
    def test_identical_rows_zero(self):
        S = covariance(np.zeros((2, 3)))
        assert np.all(S.values == 0.0)

    def test_hand_evaluated(self):
        S = covariance(np.array([[-1.0, -1.0], [1.0, 1.0]]))
        assert S.values.tolist() == [[2.0, 2.0], [2.0, 2.0]]

    def test_matches_double_loop_oracle(self):
        rng = np.random.default_rng(33)
        centered, _ = center_columns(rng.normal(size=(40, 5)))
        S = covariance(centered)
        m, n = centered.shape
        for i in range(n):
            for j in range(n):
                acc = 0.0
                for r in range(m):
                    acc += centered[r, i] * centered[r, j]
                assert S.values[i, j] == pytest.approx(acc / (m - 1), rel=1e-12, abs=1e-15)

    def test_asymmetry_rejected_by_type(self):
        with pytest.raises(NotSymmetric):
            CovarianceMatrix(values=np.array([[1.0, 2.0], [1.0, 1.0]]), centered=True)


class TestEigenSymmetric:
    def test_identity(self):
        E = eigen_symmetric(np.eye(4))
        assert E.eigenvalues.tolist() == [1.0, 1.0, 1.0, 1.0]
        assert np.array_equal(E.eigenvectors, np.eye(4))

    def test_already_diagonal(self):
        E = eigen_symmetric(np.diag([3.0, 1.0]))
        assert E.eigenvalues.tolist() == [3.0, 1.0]
        assert np.array_equal(E.eigenvectors, np.eye(2))

    def test_two_by_two_characteristic_polynomial(self):
        # [[2,1],[1,2]]: lambda^2 - 4 lambda + 3 = 0 -> 3, 1
        E = eigen_symmetric(np.array([[2.0, 1.0], [1.0, 2.0]]))
        assert E.eigenvalues == pytest.approx([3.0, 1.0], abs=1e-12)
        r = 1.0 / math.sqrt(2.0)
        assert E.eigenvectors[:, 0] == pytest.approx([r, r], abs=1e-12)
        assert E.eigenvectors[:, 1] == pytest.approx([r, -r], abs=1e-12)

    def test_three_by_three_against_characteristic_roots(self):
        rng = np.random.default_rng(35)
        for _ in range(20):
            S = random_symmetric(rng, 3)
            # coefficients of det(S - x I) = -x^3 + c2 x^2 + c1 x + c0
            c2 = np.trace(S)
            c1 = -0.5 * (np.trace(S) ** 2 - np.trace(S @ S))
            c0 = np.linalg.det(S)
            roots = np.roots([-1.0, c2, c1, c0])
            expected = np.sort(np.real(roots))[::-1]
            E = eigen_symmetric(S)
            assert E.eigenvalues == pytest.approx(expected, rel=1e-8, abs=1e-8)

    def test_not_symmetric(self):
        with pytest.raises(NotSymmetric):
            eigen_symmetric(np.array([[1.0, 5.0], [0.0, 1.0]]))

    def test_zero_matrix(self):
        E = eigen_symmetric(np.zeros((3, 3)))
        assert E.eigenvalues.tolist() == [0.0, 0.0, 0.0]

    def test_one_by_one(self):
        E = eigen_symmetric(np.array([[-4.0]]))
        assert E.eigenvalues.tolist() == [-4.0]
        assert E.eigenvectors.tolist() == [[1.0]]

    def test_sign_convention(self):
        rng = np.random.default_rng(36)
        for _ in range(25):
            E = eigen_symmetric(random_symmetric(rng, 5))
            for j in range(5):
                col = E.eigenvectors[:, j]
                assert col[int(np.argmax(np.abs(col)))] > 0

    def test_reconstruction_orthonormality_trace(self):
        rng = np.random.default_rng(37)
        for n in range(2, 9):
            for _ in range(12):
                S = random_symmetric(rng, n)
                E = eigen_symmetric(S)
                U, lam = E.eigenvectors, E.eigenvalues
                assert np.max(np.abs(U.T @ U - np.eye(n))) <= 1e-9
                recon = U @ np.diag(lam) @ U.T
                frob = np.linalg.norm(S)
                assert np.linalg.norm(recon - S) <= 1e-8 * frob
                assert abs(lam.sum() - np.trace(S)) <= 1e-9 * max(abs(np.trace(S)), frob)

    def test_deterministic(self):
        rng = np.random.default_rng(38)
        S = random_symmetric(rng, 6)
        E1 = eigen_symmetric(S)
        E2 = eigen_symmetric(S)
        assert np.array_equal(E1.eigenvalues, E2.eigenvalues)
        assert np.array_equal(E1.eigenvectors, E2.eigenvectors)

    def test_covariance_psd(self):
        rng = np.random.default_rng(39)
        for _ in range(20):
            centered, _ = center_columns(rng.normal(size=(30, 6)))
            S = covariance(centered)
            E = eigen_symmetric(S)
            assert E.eigenvalues.min() >= -1e-9 * np.trace(S.values)


class TestProject:
    def test_full_rank_isometry(self):
        rng = np.random.default_rng(41)
        centered, _ = center_columns(rng.normal(size=(25, 4)))
        E = eigen_symmetric(covariance(centered))
        P = project(centered, E, 4)
        assert np.allclose(
            np.linalg.norm(P.scores, axis=1),
            np.linalg.norm(centered, axis=1),
            rtol=1e-9,
        )
        assert P.variance_explained.sum() == pytest.approx(1.0, abs=1e-9)

    def test_variance_fractions(self):
        E = EigenSpectrum(
            eigenvalues=np.array([3.0, 1.0]),
            eigenvectors=np.eye(2),
        )
        P = project(np.zeros((3, 2)), E, 2)
        assert P.variance_explained.tolist() == [0.75, 0.25]

    def test_score_covariance_is_eigenvalues(self):
        rng = np.random.default_rng(43)
        centered, _ = center_columns(rng.normal(size=(200, 6)))
        E = eigen_symmetric(covariance(centered))
        P = project(centered, E, 6)
        score_cov = covariance(P.scores).values
        scale = max(E.eigenvalues.max(), 1.0)
        assert np.allclose(score_cov, np.diag(E.eigenvalues), atol=1e-8 * scale)

    def test_bad_component_count(self):
        E = EigenSpectrum(eigenvalues=np.array([1.0]), eigenvectors=np.eye(1))
        with pytest.raises(BadComponentCount):
            project(np.zeros((2, 1)), E, 2)
        with pytest.raises(BadComponentCount):
            project(np.zeros((2, 1)), E, 0)


class TestPerSensorStddev:
    def test_constant_column(self):
        assert per_sensor_stddev(np.ones((5, 2)))[0] == 0.0

    def test_hand_formula(self):
        assert per_sensor_stddev(np.array([[0.0], [2.0]]))[0] == pytest.approx(
            math.sqrt(2.0), rel=1e-15
        )

    def test_reference_deviation_vector_extremes(self):
        # max deviation must sit on sensor 1, min on sensor 5
        v = np.asarray(TABLE2_STDDEVS)
        assert int(np.argmax(v)) == 0
        assert int(np.argmin(v)) == 4

    def test_too_few_rows(self):
        with pytest.raises(TooFewRows):
            per_sensor_stddev(np.ones((1, 3)))
