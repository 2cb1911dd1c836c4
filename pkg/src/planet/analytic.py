"""Closed-form beta-shaped degree distribution of the growth model.

For ``t`` languages, ``N`` consonants, mean inventory size ``mu`` and
smoothing ``epsilon``::

    p_k ~ A * (k/t)**(eps - 1) * (1 - k/t)**(N*eps/mu - eps - 1),  k = 1..t-1

``A`` is fixed by normalizing over the integer degrees ``1..t-1``. Both ends
are left out because the expression is singular or zero there.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .core import CumulativeDistribution, DegreeDistribution, PlanetError, cumulate


@dataclass(frozen=True)
class ModelParams:
    t: int
    registry_size: int
    mu: float
    epsilon: float

    def __post_init__(self):
        if self.t < 2:
            raise PlanetError(f"need at least 2 languages, got t={self.t}", "E_PARAMS")
        if self.registry_size < 1:
            raise PlanetError("registry size must be >= 1", "E_PARAMS")
        if not 0 < self.mu <= self.registry_size:
            raise PlanetError(f"mu={self.mu} must lie in (0, N={self.registry_size}]", "E_PARAMS")
        if not self.epsilon > 0:
            raise PlanetError(f"epsilon must be positive, got {self.epsilon}", "E_PARAMS")
        a, b = self.exponents
        if not (np.isfinite(a) and np.isfinite(b)):
            raise PlanetError("non-finite mass: beta exponents overflow", "E_NONFINITE")

    @property
    def exponents(self) -> tuple[float, float]:
        eps = self.epsilon
        return eps - 1.0, self.registry_size * eps / self.mu - eps - 1.0


def log_unnormalized_mass(t: int, registry_size: int, mu: float, epsilon) -> np.ndarray:
    """Log of the beta kernel at k = 1..t-1.

    ``epsilon`` may be an array of shape (m,), giving an (m, t-1) result.
    """
    eps = np.asarray(epsilon, dtype=float)
    x = np.arange(1, t) / t
    a = eps - 1.0
    b = registry_size * eps / mu - eps - 1.0
    return a[..., None] * np.log(x) + b[..., None] * np.log1p(-x)


def normalized_mass(log_mass: np.ndarray) -> np.ndarray:
    """Row-wise softmax-style normalization of log masses."""
    shifted = log_mass - log_mass.max(axis=-1, keepdims=True)
    mass = np.exp(shifted)
    return mass / mass.sum(axis=-1, keepdims=True)


def beta_mass(params: ModelParams) -> DegreeDistribution:
    mass = normalized_mass(
        log_unnormalized_mass(params.t, params.registry_size, params.mu, params.epsilon)
    )
    if not np.all(np.isfinite(mass)) or not np.all(mass > 0):
        raise PlanetError(
            f"non-finite mass for t={params.t}, N={params.registry_size}, "
            f"mu={params.mu}, epsilon={params.epsilon}",
            "E_NONFINITE",
        )
    return DegreeDistribution(tuple(range(1, params.t)), tuple(mass))


def model_cumulative(params: ModelParams) -> CumulativeDistribution:
    return cumulate(beta_mass(params))
