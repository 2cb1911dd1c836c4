"""Cross-family comparisons: consonant frequency correlations, random
pseudo-family controls and fits of merged families."""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple, Sequence

import numpy as np

from .core import ConsonantRegistry, FamilyDataset, PlanetError
from .fit import FitResult, GridSpec, fit_dataset
from .ingest import merge_families


@dataclass(frozen=True)
class FrequencyVector:
    family: str
    counts: np.ndarray
    registry: ConsonantRegistry

    def __post_init__(self):
        counts = np.asarray(self.counts)
        counts.setflags(write=False)
        object.__setattr__(self, "counts", counts)
        if counts.shape != (self.registry.size,):
            raise PlanetError("frequency vector must span the whole registry", "E_REGISTRY")


def consonant_frequencies(ds: FamilyDataset) -> FrequencyVector:
    """Number of languages in ``ds`` using each registry consonant (0 if none)."""
    if not ds.inventories:
        raise PlanetError(f"dataset {ds.name!r} is empty", "E_EMPTY")
    counts = np.zeros(ds.registry.size, dtype=np.int64)
    for inv in ds.inventories:
        counts[list(inv.consonants)] += 1
    return FrequencyVector(ds.name, counts, ds.registry)


def pearson(a: FrequencyVector, b: FrequencyVector) -> float:
    if a.registry != b.registry:
        raise PlanetError("frequency vectors come from different registries", "E_REGISTRY")
    return pearson_arrays(a.counts, b.counts)


def pearson_arrays(x, y) -> float:
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    dx = x - x.mean()
    dy = y - y.mean()
    sx = np.sqrt(np.dot(dx, dx))
    sy = np.sqrt(np.dot(dy, dy))
    if sx == 0 or sy == 0:
        raise PlanetError("degenerate frequency vector: zero variance", "E_DEGENERATE")
    r = float(np.dot(dx / sx, dy / sy))
    return min(1.0, max(-1.0, r))


def correlation_matrix(datasets: Sequence[FamilyDataset]) -> np.ndarray:
    """Symmetric matrix of pairwise Pearson correlations, unit diagonal."""
    if len(datasets) < 2:
        raise PlanetError("need at least two datasets to correlate", "E_EMPTY")
    freqs = [consonant_frequencies(ds) for ds in datasets]
    n = len(freqs)
    m = np.eye(n)
    for i in range(n):
        for j in range(i + 1, n):
            m[i, j] = m[j, i] = pearson(freqs[i], freqs[j])
    return m


@dataclass(frozen=True)
class ControlTrial:
    trial: int
    size: int
    epsilon_star: float
    lse_star: float
    language_ids: tuple[str, ...]


class ControlResult(NamedTuple):
    mean_epsilon: float
    trials: list[ControlTrial]


def sample_without_replacement(rng: np.random.Generator, population: int, size: int) -> list[int]:
    """Uniform sample of ``size`` distinct indices (partial Fisher-Yates)."""
    pool = list(range(population))
    for i in range(size):
        j = i + int(rng.random() * (population - i))
        pool[i], pool[j] = pool[j], pool[i]
    return pool[:size]


def control_experiment(
    pool: FamilyDataset,
    family_sizes: Sequence[int],
    trials: int,
    grid: GridSpec | None = None,
    seed: int = 0,
    registry_size: int = 541,
    target: str = "cdf",
) -> ControlResult:
    """Fit epsilon to pseudo-families drawn uniformly from ``pool``.

    Every trial draws one pseudo-family per entry of ``family_sizes``
    (without replacement within a pseudo-family) and fits it like a real
    family. Trial ``i`` uses its own stream spawned from ``seed``, so trials
    can be computed in any order.
    """
    if trials < 1:
        raise PlanetError("trials must be >= 1", "E_CONFIG")
    for size in family_sizes:
        if size > len(pool):
            raise PlanetError(
                f"family size {size} exceeds the pool of {len(pool)} languages", "E_SIZE"
            )
        if size < 2:
            raise PlanetError("family size must be >= 2", "E_SIZE")
    streams = np.random.SeedSequence(seed).spawn(trials)
    results = []
    for trial, ss in enumerate(streams):
        rng = np.random.Generator(np.random.PCG64(ss))
        for size in family_sizes:
            picks = sample_without_replacement(rng, len(pool), size)
            sample = FamilyDataset(
                f"{pool.name}-control-{trial}",
                tuple(pool.inventories[i] for i in picks),
                pool.registry,
            )
            fit = fit_dataset(sample, grid, registry_size, target)
            results.append(
                ControlTrial(trial, size, fit.epsilon_star, fit.lse_star, tuple(sample.language_ids))
            )
    mean = float(np.mean([r.epsilon_star for r in results]))
    return ControlResult(mean, results)


def combined_fit(
    datasets: Sequence[FamilyDataset],
    grid: GridSpec | None = None,
    registry_size: int = 541,
    target: str = "cdf",
    name: str | None = None,
) -> FitResult:
    merged = merge_families(datasets, name or "+".join(ds.name for ds in datasets))
    return fit_dataset(merged, grid, registry_size, target)
