"""Grid-search fit of epsilon by least logarithmic standard error (LSE).

LSE between two curves is the sum, over degrees present in both, of the
squared difference of their natural-log ordinates. By default the fit
compares cumulative curves, which have no zero ordinates on their support.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from typing import Union

import numpy as np

from .analytic import ModelParams, log_unnormalized_mass, model_cumulative, beta_mass, normalized_mass
from .core import (
    BipartiteNetwork,
    CumulativeDistribution,
    DegreeDistribution,
    FamilyDataset,
    PlanetError,
    consonant_degrees,
    cumulate,
    empirical_distribution,
)

Curve = Union[CumulativeDistribution, DegreeDistribution]
TARGETS = ("cdf", "pdf")


class ClampWarning(UserWarning):
    """An empirical degree equal to t was folded onto t-1."""


@dataclass(frozen=True)
class GridSpec:
    eps_min: float = 0.005
    eps_max: float = 1.0
    step: float = 0.005

    def __post_init__(self):
        if not (self.eps_min > 0 and self.step > 0):
            raise PlanetError("grid bounds and step must be positive", "E_GRID")
        if self.eps_min > self.eps_max:
            raise PlanetError(f"grid minimum {self.eps_min} exceeds maximum {self.eps_max}", "E_GRID")

    @classmethod
    def parse(cls, text: str) -> GridSpec:
        try:
            lo, hi, step = (float(x) for x in text.split(":"))
        except ValueError:
            raise PlanetError(f"grid must be MIN:MAX:STEP, got {text!r}", "E_GRID") from None
        return cls(lo, hi, step)

    def points(self) -> np.ndarray:
        # Tolerance keeps eps_max on the grid despite float division error.
        n = int(math.floor((self.eps_max - self.eps_min) / self.step + 1e-9)) + 1
        return np.round(self.eps_min + np.arange(n) * self.step, 12)

    def __str__(self):
        return f"{self.eps_min:g}:{self.eps_max:g}:{self.step:g}"


@dataclass(frozen=True)
class FitResult:
    epsilon_star: float
    lse_star: float
    curve: Curve
    trace: tuple[tuple[float, float], ...]
    empirical: Curve | None = None


def lse(empirical: Curve, model: Curve) -> float:
    """Sum of squared natural-log differences at the abscissas both curves share."""
    a = empirical.as_dict()
    b = model.as_dict()
    shared = sorted(a.keys() & b.keys())
    if not shared:
        raise PlanetError("incomparable curves: no shared abscissa", "E_INCOMPARABLE")
    return float(sum((math.log(a[k]) - math.log(b[k])) ** 2 for k in shared))


def clamp_to_model_support(curve: Curve, t: int) -> Curve:
    """Fold an empirical degree of exactly ``t`` onto ``t-1``.

    The model has no mass at ``k = t``. For a cumulative curve the value at
    ``t-1`` already counts those nodes, so the ``t`` point is dropped (or
    relabelled if ``t-1`` is absent); for a mass function it is added to ``t-1``.
    """
    if curve.support[-1] > t:
        raise PlanetError(f"empirical degree {curve.support[-1]} exceeds t={t}", "E_SUPPORT")
    if curve.support[-1] < t or t < 2:
        return curve
    warnings.warn(
        f"empirical degree k={t} equals the language count; clamped to k={t - 1}",
        ClampWarning,
        stacklevel=3,
    )
    values = dict(zip(curve.support, curve.values))
    top = values.pop(t)
    if isinstance(curve, DegreeDistribution):
        values[t - 1] = values.get(t - 1, 0.0) + top
        support = sorted(values)
        return DegreeDistribution(tuple(support), tuple(values[k] for k in support))
    values.setdefault(t - 1, top)
    support = sorted(values)
    return CumulativeDistribution(tuple(support), tuple(values[k] for k in support))


def model_curve(params: ModelParams, target: str = "cdf") -> Curve:
    if target == "cdf":
        return model_cumulative(params)
    if target == "pdf":
        return beta_mass(params)
    raise PlanetError(f"unknown fit target {target!r}", "E_TARGET")


def _target_of(curve: Curve) -> str:
    return "pdf" if isinstance(curve, DegreeDistribution) else "cdf"


def grid_lse(empirical: Curve, t: int, registry_size: int, mu: float, eps: np.ndarray) -> np.ndarray:
    """LSE of the model against ``empirical`` at each epsilon in ``eps``.

    Grid points whose model curve under- or overflows get ``inf``.
    """
    eps = np.asarray(eps, dtype=float)
    mass = normalized_mass(log_unnormalized_mass(t, registry_size, mu, eps))
    if _target_of(empirical) == "cdf":
        tail = np.cumsum(mass[:, ::-1], axis=1)[:, ::-1]
        model = tail / tail[:, :1]
    else:
        model = mass
    cols = np.array([k - 1 for k in empirical.support if 1 <= k <= t - 1], dtype=int)
    if cols.size == 0:
        raise PlanetError("incomparable curves: no empirical degree within 1..t-1", "E_INCOMPARABLE")
    y = np.log(np.array([v for k, v in zip(empirical.support, empirical.values) if 1 <= k <= t - 1]))
    with np.errstate(divide="ignore", invalid="ignore", over="ignore"):
        diff = np.log(model[:, cols]) - y
        out = np.sum(diff * diff, axis=1)
    out[~np.isfinite(out)] = np.inf
    return out


def fit_epsilon(
    empirical: Curve,
    t: int,
    registry_size: int,
    mu: float,
    grid: GridSpec | None = None,
) -> FitResult:
    """Pick the grid epsilon whose model curve has the least LSE.

    A ``CumulativeDistribution`` is fitted against the model's cumulative
    curve, a ``DegreeDistribution`` against its mass function. Ties go to
    the smallest epsilon.
    """
    grid = grid or GridSpec()
    ModelParams(t, registry_size, mu, grid.eps_min)
    empirical = clamp_to_model_support(empirical, t)
    eps = grid.points()
    values = grid_lse(empirical, t, registry_size, mu, eps)
    if not np.any(np.isfinite(values)):
        raise PlanetError("incomparable curves at every grid point", "E_INCOMPARABLE")
    best = int(np.argmin(values))  # first minimum = smallest epsilon
    eps_star = float(eps[best])
    curve = model_curve(ModelParams(t, registry_size, mu, eps_star), _target_of(empirical))
    return FitResult(
        epsilon_star=eps_star,
        lse_star=float(values[best]),
        curve=curve,
        trace=tuple(zip(eps.tolist(), values.tolist())),
        empirical=empirical,
    )


def network_curve(net: BipartiteNetwork, target: str = "cdf") -> Curve:
    dist = empirical_distribution(consonant_degrees(net))
    if target == "cdf":
        return cumulate(dist)
    if target == "pdf":
        return dist
    raise PlanetError(f"unknown fit target {target!r}", "E_TARGET")


def fit_network(
    net: BipartiteNetwork,
    grid: GridSpec | None = None,
    registry_size: int = 541,
    target: str = "cdf",
) -> FitResult:
    """Fit with t = language count and mu = edges / languages of ``net``."""
    t = len(net.language_degrees)
    mu = net.edge_count / t
    return fit_epsilon(network_curve(net, target), t, registry_size, mu, grid)


def fit_dataset(
    ds: FamilyDataset,
    grid: GridSpec | None = None,
    registry_size: int = 541,
    target: str = "cdf",
) -> FitResult:
    return fit_network(BipartiteNetwork.from_dataset(ds), grid, registry_size, target)
