import numpy as np
import pydantic
import pytest
from numpy.testing import assert_allclose, assert_array_equal

from src.array.geometry import steering_matrix
from src.stats.covariance import (SampleCovariance, SubspaceDecomposition, sample_covariance,
                                  signal_weight, subspace_decomposition)
from src.stats.simulation import Scenario, simulate_snapshots, true_covariance
from src.errors import DimensionError, ValidationError


def scenario(**overrides):
    fields = dict(m=6, r=2, angles=[-0.4, 0.7], noise_power=0.1, n_snapshots=50, seed=11)
    fields.update(overrides)
    return Scenario(**fields)


def test_true_covariance_examples():
    print("\n--- Model covariance ---")
    R = true_covariance(Scenario(m=2, r=1, angles=[0.0], noise_power=0.0))
    assert_allclose(R.matrix, np.ones((2, 2)))
    assert R.is_exact

    R = true_covariance(Scenario(m=3, r=1, angles=[0.0], source_cov=[[0]], noise_power=1.0))
    assert_allclose(R.matrix, np.eye(3))

    R = true_covariance(Scenario(m=3, r=1, angles=[0.0], noise_power=0.5))
    assert_allclose(np.linalg.eigvalsh(R.matrix), [0.5, 0.5, 3.5], atol=1e-12)


def test_scenario_validation():
    with pytest.raises(pydantic.ValidationError):
        scenario(source_cov=[[1, 0], [0, -1]])
    with pytest.raises(pydantic.ValidationError):
        scenario(angles=[0.7, -0.4])
    with pytest.raises(pydantic.ValidationError):
        scenario(angles=[0.1])
    with pytest.raises(pydantic.ValidationError):
        scenario(m=2)
    with pytest.raises(pydantic.ValidationError):
        scenario(noise_power=-1.0)


def test_scenario_accepts_complex_strings():
    s = scenario(source_cov=[[1, "0.5+0.5j"], ["0.5-0.5j", 1]])
    assert s.source_cov[0, 1] == 0.5 + 0.5j


def test_snr_conversion():
    s = scenario(source_cov=[[2, 0], [0, 2]])
    assert_allclose(s.with_snr(10.0).noise_power, 0.2)
    assert_allclose(s.with_snr(10.0).snr_db, 10.0)
    assert s.with_snr(np.inf).noise_power == 0.0
    assert s.with_snr(np.inf).snr_db == np.inf


def test_simulation_is_deterministic():
    s = scenario()
    a = simulate_snapshots(s).snapshots
    b = simulate_snapshots(s).snapshots
    assert_array_equal(a, b)
    assert a.shape == (6, 50)
    assert not np.array_equal(a, simulate_snapshots(s.with_seed(12)).snapshots)


def test_snapshot_prefix_does_not_depend_on_length():
    s = scenario()
    short = simulate_snapshots(s.with_snapshots(10)).snapshots
    assert_array_equal(short, simulate_snapshots(s).snapshots[:, :10])


def test_zero_power_gives_zero_snapshots():
    s = scenario(source_cov=[[0, 0], [0, 0]], noise_power=0.0)
    assert_array_equal(simulate_snapshots(s).snapshots, 0)


def test_sample_covariance_converges_to_model():
    s = scenario(n_snapshots=20000)
    R_hat = sample_covariance(simulate_snapshots(s))
    assert R_hat.n_snapshots == 20000
    assert np.abs(R_hat.matrix - true_covariance(s).matrix).max() < 0.1


def test_sample_covariance_error_shrinks_like_inverse_root_t():
    base = scenario(noise_power=0.5)
    R = true_covariance(base).matrix

    def mean_error(T):
        errors = [np.linalg.norm(sample_covariance(simulate_snapshots(
            base.with_snapshots(T).with_seed(seed))).matrix - R) for seed in range(50)]
        return np.mean(errors)

    ratio = mean_error(50) / mean_error(800)
    print(f"\nerror ratio T=50 vs T=800: {ratio:.3f}")
    assert 2.5 <= ratio <= 6.5


def test_sample_covariance_matches_direct_sum():
    rng = np.random.default_rng(8)
    Y = rng.standard_normal((5, 30)) + 1j * rng.standard_normal((5, 30))
    direct = np.zeros((5, 5), dtype=complex)
    for t in range(Y.shape[1]):
        direct += np.outer(Y[:, t], Y[:, t].conj())
    direct /= Y.shape[1]
    assert_allclose(sample_covariance(Y).matrix, direct, rtol=0, atol=1e-14 * np.abs(direct).max())


def test_sample_covariance_examples():
    R = sample_covariance(np.array([[1], [1j]]))
    assert_allclose(R.matrix, [[1, -1j], [1j, 1]])
    assert_allclose(sample_covariance(np.zeros((3, 4))).matrix, np.zeros((3, 3)))
    with pytest.raises(ValidationError):
        sample_covariance(np.zeros((3, 0)))


def test_sample_covariance_type_checks():
    with pytest.raises(ValidationError):
        SampleCovariance(np.array([[1, 1j], [1j, 1]]))
    with pytest.raises(ValidationError):
        SampleCovariance(np.diag([1.0, -1.0]))
    with pytest.raises(DimensionError):
        SampleCovariance(np.ones((2, 3)))


def test_subspace_decomposition_examples():
    print("\n--- Eigendecomposition ---")
    d = subspace_decomposition(np.diag([3.0, 1.0, 1.0]), 1)
    assert_allclose(d.lambdas, [3.0])
    assert_allclose(d.sigma2, 1.0)
    assert_allclose(d.u_signal[:, 0], [1, 0, 0], atol=1e-15)
    assert d.well_posed

    d = subspace_decomposition(np.eye(4), 1)
    assert_allclose(d.sigma2, 1.0)
    assert_allclose(d.lambdas, [1.0])
    assert not d.well_posed

    with pytest.raises(DimensionError):
        subspace_decomposition(np.eye(3), 3)


def test_subspace_decomposition_spans_steering_space():
    s = scenario(noise_power=0.0)
    d = subspace_decomposition(true_covariance(s), 2)
    assert_allclose(d.u_signal.conj().T @ d.u_signal, np.eye(2), atol=1e-12)
    assert np.all(np.diff(d.lambdas) <= 0)
    assert d.sigma2 < 1e-12


def test_signal_weight_examples():
    def g(lambdas, sigma2):
        U = np.eye(len(lambdas) + 1)[:, :len(lambdas)]
        return signal_weight(SubspaceDecomposition(U, lambdas, sigma2)).g

    assert_allclose(g([2.0], 0.0), [2.0])
    assert_allclose(g([3.0], 1.0), [4 / 3])
    assert_allclose(g([1.5], 1.5), [0.0])
    with pytest.raises(ValidationError):
        g([0.0], 0.0)


def test_decomposition_of_model_covariance_with_noise():
    s = scenario(source_cov=[[1.0, 0.3], [0.3, 2.0]], noise_power=0.25)
    R = true_covariance(s).matrix
    d = subspace_decomposition(true_covariance(s), 2)
    A = steering_matrix(s.angle_set, s.m)
    signal = np.linalg.eigvalsh(A @ s.source_cov @ A.conj().T)[::-1][:2]
    assert_allclose(d.sigma2, 0.25, rtol=0, atol=1e-10)
    assert_allclose(d.lambdas, signal + 0.25, rtol=0, atol=1e-10)

    U = d.u_signal
    rebuilt = U @ np.diag(d.lambdas) @ U.conj().T + d.sigma2 * (np.eye(s.m) - U @ U.conj().T)
    assert_allclose(rebuilt, R, rtol=0, atol=1e-10)
