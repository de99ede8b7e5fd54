import numpy as np
import pytest

from tauspectra.datagen import Marginal, generate_samples
from tauspectra.rankcorr import tau_matrix
from tauspectra.spectra import (
    SpectralDistribution,
    eigenvalues_symmetric,
    esd_cdf,
    histogram,
    symmetric_eigendecomposition,
)


def _random_symmetric(p, seed):
    rng = np.random.default_rng(seed)
    a = rng.standard_normal((p, p))
    return (a + a.T) / 2.0


def test_eigenvalues_identity():
    dist = eigenvalues_symmetric(np.eye(4))
    np.testing.assert_allclose(dist.eigenvalues, np.ones(4), atol=1e-14)


def test_eigenvalues_diagonal_sorted():
    dist = eigenvalues_symmetric(np.diag([3.0, 1.0, 2.0]))
    np.testing.assert_allclose(dist.eigenvalues, [1.0, 2.0, 3.0], atol=1e-13)


def test_eigenvalues_two_by_two():
    # [[2, 1], [1, 2]] has eigenvalues 1 and 3
    dist = eigenvalues_symmetric(np.array([[2.0, 1.0], [1.0, 2.0]]))
    np.testing.assert_allclose(dist.eigenvalues, [1.0, 3.0], atol=1e-13)


def test_matches_lapack_oracle():
    for p in (2, 5, 17, 60):
        m = _random_symmetric(p, seed=p)
        ours = eigenvalues_symmetric(m, method="ql").eigenvalues
        ref = np.linalg.eigvalsh(m)
        scale = max(1.0, float(np.abs(ref).max()))
        np.testing.assert_allclose(ours, ref, atol=1e-11 * scale)


def test_lapack_method_available():
    m = _random_symmetric(8, seed=99)
    ours = eigenvalues_symmetric(m, method="lapack").eigenvalues
    np.testing.assert_allclose(ours, np.linalg.eigvalsh(m), atol=1e-13)
    with pytest.raises(ValueError):
        eigenvalues_symmetric(m, method="qr")


def test_trace_and_frobenius_preserved():
    for seed in range(5):
        m = _random_symmetric(30, seed=seed)
        w = eigenvalues_symmetric(m).eigenvalues
        assert np.sum(w) == pytest.approx(np.trace(m), rel=1e-10, abs=1e-10)
        assert np.sum(w**2) == pytest.approx(np.sum(m**2), rel=1e-10)


def test_eigendecomposition_reconstructs():
    m = _random_symmetric(25, seed=7)
    w, q = symmetric_eigendecomposition(m)
    np.testing.assert_allclose(q @ np.diag(w) @ q.T, m, atol=1e-11)
    np.testing.assert_allclose(q.T @ q, np.eye(25), atol=1e-11)
    assert np.all(np.diff(w) >= 0.0)


def test_eigendecomposition_matches_eigenvalues():
    m = _random_symmetric(12, seed=3)
    w, _ = symmetric_eigendecomposition(m)
    np.testing.assert_allclose(w, eigenvalues_symmetric(m).eigenvalues, atol=1e-12)


def test_rejects_asymmetric_matrix():
    m = np.array([[1.0, 2.0], [2.1, 1.0]])
    with pytest.raises(ValueError):
        eigenvalues_symmetric(m)


def test_symmetry_tolerance_scales_with_magnitude():
    # asymmetry below 1e-12 * max|M| is accepted
    m = np.array([[1e6, 5.0], [5.0 + 1e-8, 1e6]])
    eigenvalues_symmetric(m)
    with pytest.raises(ValueError):
        eigenvalues_symmetric(np.array([[1.0, 0.0], [1e-10, 1.0]]))


def test_rejects_nonsquare_and_nonfinite():
    with pytest.raises(ValueError):
        eigenvalues_symmetric(np.zeros((2, 3)))
    with pytest.raises(ValueError):
        eigenvalues_symmetric(np.array([[np.nan, 0.0], [0.0, 1.0]]))
    with pytest.raises(ValueError):
        eigenvalues_symmetric(np.array([1.0, 2.0]))


def test_tau_matrix_spectrum_sums_to_p():
    # unit diagonal forces trace p, eigenvalues inherit it
    data = generate_samples(60, 10, Marginal.UNIFORM01, seed=19)
    corr = tau_matrix(data)
    w = eigenvalues_symmetric(corr.entries).eigenvalues
    assert np.sum(w) == pytest.approx(10.0, abs=1e-10)


def test_esd_cdf_examples():
    dist = SpectralDistribution.from_values(np.array([1.0, 2.0, 3.0, 4.0]))
    assert esd_cdf(dist, 0.5) == 0.0
    assert esd_cdf(dist, 1.0) == 0.25
    assert esd_cdf(dist, 2.5) == 0.5
    assert esd_cdf(dist, 4.0) == 1.0
    np.testing.assert_array_equal(esd_cdf(dist, np.array([1.5, 3.0])), [0.25, 0.75])


def test_histogram_examples():
    dist = SpectralDistribution.from_values(np.array([0.5, 1.5, 1.5, 3.5]))
    rows = histogram(dist, bins=2, value_range=(0.0, 4.0))
    # widths 2.0: densities count / (4 * 2)
    assert rows == [(1.0, 3 / 8), (3.0, 1 / 8)]
    area = sum(d * 2.0 for _, d in rows)
    assert area == pytest.approx(1.0, abs=0)


def test_histogram_out_of_range_values_drop_mass():
    dist = SpectralDistribution.from_values(np.array([-1.0, 0.5, 9.0]))
    rows = histogram(dist, bins=1, value_range=(0.0, 1.0))
    assert rows == [(0.5, 1 / 3)]


def test_histogram_rejects_bad_arguments():
    dist = SpectralDistribution.from_values(np.array([1.0]))
    with pytest.raises(ValueError):
        histogram(dist, bins=0, value_range=(0.0, 1.0))
    with pytest.raises(ValueError):
        histogram(dist, bins=3, value_range=(1.0, 1.0))
    with pytest.raises(ValueError):
        histogram(dist, bins=3, value_range=(2.0, 1.0))
    with pytest.raises(ValueError):
        histogram(dist, bins=3, value_range=(0.0, np.inf))


def test_spectral_distribution_validation():
    with pytest.raises(ValueError):
        SpectralDistribution(eigenvalues=np.array([2.0, 1.0]), p=2)
    with pytest.raises(ValueError):
        SpectralDistribution(eigenvalues=np.array([1.0, np.inf]), p=2)
    with pytest.raises(ValueError):
        SpectralDistribution(eigenvalues=np.array([1.0]), p=2)
    dist = SpectralDistribution.from_values(np.array([3.0, 1.0, 2.0]))
    np.testing.assert_array_equal(dist.eigenvalues, [1.0, 2.0, 3.0])
    with pytest.raises(ValueError):
        dist.eigenvalues[0] = 0.0


def test_repeated_eigenvalue_cluster():
    # rank-one perturbation of identity: eigenvalues (1, 1, 1, 5)
    v = np.full(4, 0.5)
    m = np.eye(4) + 4.0 * np.outer(v, v)
    w = eigenvalues_symmetric(m).eigenvalues
    np.testing.assert_allclose(w, [1.0, 1.0, 1.0, 5.0], atol=1e-12)
