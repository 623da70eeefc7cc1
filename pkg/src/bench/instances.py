"""Random instances for the property suites."""
import numpy as np

from src.array.geometry import AngleSet, CoefVector
from src.errors import ValidationError
from src.stats.covariance import SignalWeight, SubspaceDecomposition


def complex_normal(rng, shape):
    return (rng.standard_normal(shape) + 1j * rng.standard_normal(shape)) / np.sqrt(2)


def random_angle_set(rng, r, min_separation=0.05):
    """Uniform angles on (-pi, pi] whose circular gaps are all >= min_separation."""
    if r * min_separation >= 2 * np.pi:
        raise ValidationError(f"cannot place {r} angles {min_separation} rad apart")
    while True:
        phi = np.sort(rng.uniform(-np.pi, np.pi, r))
        gaps = np.diff(np.concatenate((phi, [phi[0] + 2 * np.pi])))
        if r == 1 or gaps.min() >= min_separation:
            return AngleSet.from_unsorted(phi)


def random_coefs(rng, q):
    c = complex_normal(rng, q + 1)
    while np.abs(c[0]) < 1e-3:
        c[0] = complex_normal(rng, 1)[0]
    return CoefVector(c)


def random_orthonormal(rng, m, r):
    Q, _ = np.linalg.qr(complex_normal(rng, (m, r)))
    return Q


def random_decomposition(rng, m, r):
    lambdas = np.sort(rng.uniform(1.0, 10.0, r))[::-1]
    return SubspaceDecomposition(random_orthonormal(rng, m, r), lambdas, sigma2=0.5)


def random_weight(rng, r):
    return SignalWeight(rng.uniform(0.1, 5.0, r))


def random_hermitian_psd(rng, m):
    B = complex_normal(rng, (m, m))
    return B @ B.conj().T / m


def random_scale(rng):
    """Nonzero complex gauge factor with modulus in [0.1, 10]."""
    return 10 ** rng.uniform(-1, 1) * np.exp(1j * rng.uniform(-np.pi, np.pi))
