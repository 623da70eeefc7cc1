"""Scenario description, exact model covariance and snapshot simulation.

Snapshot t is drawn from its own Philox substream keyed by the scenario seed
with counter block t, so a SnapshotSet depends only on (scenario, t) and not
on how the snapshots are scheduled.
"""
from dataclasses import dataclass
from typing import List, Optional

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator
from scipy import linalg

from src.array.geometry import AngleSet, steering_matrix
from src.config import HERMITIAN_TOL, PSD_TOL
from src.stats.covariance import SampleCovariance


def parse_complex_matrix(value):
    """Builds a complex matrix from nested lists of numbers or "re+imj" strings."""
    if isinstance(value, np.ndarray):
        return value.astype(complex)
    rows = [[complex(str(x).replace(" ", "")) if isinstance(x, str) else complex(x)
             for x in np.atleast_1d(row)] for row in np.atleast_1d(value)]
    return np.atleast_2d(np.array(rows, dtype=complex))


class Scenario(BaseModel):
    """A simulated experiment: m sensors, r sources at ``angles`` with source
    covariance P, noise power sigma^2 and T = ``n_snapshots``."""
    model_config = ConfigDict(frozen=True, extra="forbid", arbitrary_types_allowed=True)

    m: int = Field(gt=0)
    r: int = Field(gt=0)
    angles: List[float]
    source_cov: Optional[np.ndarray] = None   # defaults to I_r
    noise_power: float = Field(default=1.0, ge=0)
    n_snapshots: int = Field(default=100, ge=1)
    seed: int = Field(default=0, ge=0, lt=2 ** 64)

    @field_validator("source_cov", mode="before")
    @classmethod
    def _parse_source_cov(cls, v):
        return None if v is None else parse_complex_matrix(v)

    @model_validator(mode="after")
    def _check_consistency(self):
        if self.r >= self.m:
            raise ValueError(f"need r < m (r={self.r}, m={self.m})")
        if len(self.angles) != self.r:
            raise ValueError(f"expected {self.r} angles, got {len(self.angles)}")
        AngleSet(self.angles)
        if self.source_cov is None:
            object.__setattr__(self, "source_cov", np.eye(self.r, dtype=complex))
        P = self.source_cov
        if P.shape != (self.r, self.r):
            raise ValueError(f"source_cov must be {self.r}x{self.r}, got {P.shape}")
        scale = max(1.0, np.abs(P).max())
        if np.abs(P - P.conj().T).max() > HERMITIAN_TOL * scale:
            raise ValueError("source_cov must be Hermitian")
        w = linalg.eigvalsh(P)
        if w[0] < -PSD_TOL * max(w[-1], 0.0):
            raise ValueError(f"source_cov must be PSD (smallest eigenvalue {w[0]:.3g})")
        return self

    @property
    def angle_set(self):
        return AngleSet(self.angles)

    @property
    def snr_db(self):
        """10 log10(tr(P) / (r sigma^2)); +inf for a noiseless scenario."""
        power = np.trace(self.source_cov).real / self.r
        if self.noise_power == 0:
            return np.inf
        return 10 * np.log10(power / self.noise_power)

    def with_snr(self, snr_db):
        if np.isposinf(snr_db):
            return self.model_copy(update={"noise_power": 0.0})
        power = np.trace(self.source_cov).real / self.r
        return self.model_copy(update={"noise_power": float(power / 10 ** (snr_db / 10))})

    def with_snapshots(self, n_snapshots):
        return self.model_copy(update={"n_snapshots": int(n_snapshots)})

    def with_seed(self, seed):
        return self.model_copy(update={"seed": int(seed)})


@dataclass(frozen=True, eq=False)
class SnapshotSet:
    snapshots: np.ndarray             # m x T, column t is y(t)
    scenario: Optional[Scenario] = None

    @property
    def m(self):
        return self.snapshots.shape[0]

    @property
    def n_snapshots(self):
        return self.snapshots.shape[1]


def hermitian_sqrt(P):
    w, V = linalg.eigh(P)
    return (V * np.sqrt(np.clip(w, 0.0, None))) @ V.conj().T


def true_covariance(scenario):
    """R = A P A* + sigma^2 I_m, with no sampling."""
    A = steering_matrix(scenario.angle_set, scenario.m)
    R = A @ scenario.source_cov @ A.conj().T + scenario.noise_power * np.eye(scenario.m)
    return SampleCovariance(0.5 * (R + R.conj().T), n_snapshots=None)


def snapshot_rng(seed, t):
    # counter word 1 selects the substream, so streams never overlap
    return np.random.Generator(np.random.Philox(key=seed, counter=[0, t, 0, 0]))


def _circular_gaussian(rng, n):
    z = rng.standard_normal((2, n))
    return (z[0] + 1j * z[1]) / np.sqrt(2)


def simulate_snapshots(scenario):
    """y(t) = A s(t) + n(t), s ~ CN(0, P), n ~ CN(0, sigma^2 I), independent over t."""
    m, r, T = scenario.m, scenario.r, scenario.n_snapshots
    A = steering_matrix(scenario.angle_set, m)
    mix = A @ hermitian_sqrt(scenario.source_cov)
    scale = np.sqrt(scenario.noise_power)
    Y = np.empty((m, T), dtype=complex)
    # one fixed-size product per column: y(t) is the same for every T
    for t in range(T):
        d = _circular_gaussian(snapshot_rng(scenario.seed, t), r + m)
        Y[:, t] = mix @ d[:r] + scale * d[r:]
    return SnapshotSet(Y, scenario)
