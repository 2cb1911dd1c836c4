"""Preferential-attachment growth of a phoneme-language network.

Languages are added one at a time in ascending order of inventory size.
Each language picks its ``d`` distinct consonants one after another; at
every pick consonant ``c`` is chosen with probability proportional to
``k_c + epsilon`` among the consonants the language does not have yet.

Randomness comes from numpy's PCG64 bit generator seeded with the config
seed. Only ``Generator.random()`` doubles are consumed (inverse-CDF over the
cumulative weights), so a given ``(seed, config)`` yields the same network
on every platform and numpy release that keeps PCG64 stable.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, replace
from typing import Mapping, Sequence

import numpy as np

from .core import (
    BipartiteNetwork,
    DegreeDistribution,
    PlanetError,
    consonant_degrees,
    empirical_distribution,
)

UPDATE_MODES = ("per_edge", "per_language")


@dataclass(frozen=True)
class GrowthConfig:
    epsilon: float
    degree_sequence: tuple[int, ...]
    registry_size: int = 541
    seed: int = 0
    language_ids: tuple[str, ...] | None = None
    # "per_edge" bumps a consonant's degree as soon as it is picked;
    # "per_language" applies a language's picks after its turn.
    update: str = "per_edge"

    def __post_init__(self):
        if self.update not in UPDATE_MODES:
            raise PlanetError(f"update must be one of {UPDATE_MODES}, got {self.update!r}", "E_CONFIG")
        object.__setattr__(self, "degree_sequence", tuple(int(d) for d in self.degree_sequence))
        if self.language_ids is not None:
            object.__setattr__(self, "language_ids", tuple(self.language_ids))
            if len(self.language_ids) != len(self.degree_sequence):
                raise PlanetError("language_ids and degree_sequence differ in length", "E_CONFIG")
        if not (self.epsilon > 0 and np.isfinite(self.epsilon)):
            raise PlanetError(f"epsilon must be a finite positive number, got {self.epsilon}", "E_CONFIG")
        if self.registry_size < 1:
            raise PlanetError("registry size must be >= 1", "E_CONFIG")
        if not self.degree_sequence:
            raise PlanetError("degree sequence is empty", "E_CONFIG")
        for d in self.degree_sequence:
            if d < 1:
                raise PlanetError(f"inventory size {d} < 1", "E_CONFIG")
            if d > self.registry_size:
                raise PlanetError(
                    f"degree exceeds registry: inventory size {d} > N={self.registry_size}",
                    "E_DEGREE",
                )
        if not 0 <= self.seed < 2**64:
            raise PlanetError("seed must fit in an unsigned 64-bit integer", "E_CONFIG")

    def with_seed(self, seed: int) -> GrowthConfig:
        return replace(self, seed=seed)


def attachment_probabilities(
    current_degrees: Mapping[int, int],
    excluded,
    epsilon: float,
    registry_size: int,
) -> tuple[np.ndarray, np.ndarray]:
    """Attachment probabilities over the consonants not in ``excluded``.

    Returns ``(eligible, probs)``: the eligible registry indices in ascending
    order and ``(k + eps) / sum(k' + eps)`` for each of them. Consonants
    missing from ``current_degrees`` have degree 0.
    """
    if epsilon <= 0:
        raise PlanetError("epsilon must be positive", "E_CONFIG")
    excluded = set(excluded)
    mask = np.ones(registry_size, dtype=bool)
    for c in excluded:
        if not 0 <= c < registry_size:
            raise PlanetError(f"excluded index {c} outside the registry", "E_REGISTRY")
        mask[c] = False
    eligible = np.flatnonzero(mask)
    if eligible.size == 0:
        raise PlanetError("degree exceeds registry: no eligible consonant left", "E_DEGREE")
    k = np.zeros(registry_size)
    for c, deg in current_degrees.items():
        k[c] = deg
    weights = k[eligible] + epsilon
    return eligible, weights / weights.sum()


def _draw(weights: np.ndarray, u: float) -> int:
    """Index drawn by inverse CDF; zero-weight (excluded) slots are never returned."""
    cdf = np.cumsum(weights)
    idx = int(np.searchsorted(cdf, u * cdf[-1], side="right"))
    if idx >= weights.size:
        idx = weights.size - 1
    while weights[idx] == 0.0 and idx > 0:
        # An excluded slot shares its predecessor's cdf value; step back past it.
        idx -= 1
    return idx


def processing_order(degree_sequence: Sequence[int]) -> list[int]:
    """Languages sorted by ascending inventory size, ties in input order."""
    return sorted(range(len(degree_sequence)), key=lambda i: degree_sequence[i])


def simulate(config: GrowthConfig) -> BipartiteNetwork:
    """Grow one network; languages are reported in input order."""
    rng = np.random.Generator(np.random.PCG64(config.seed))
    n = config.registry_size
    eps = config.epsilon
    weights = np.full(n, eps)  # k_c + eps for every consonant
    adjacency: list[frozenset[int]] = [frozenset()] * len(config.degree_sequence)

    for lang in processing_order(config.degree_sequence):
        d = config.degree_sequence[lang]
        picked = []
        if d == n:
            picked = list(range(n))
            weights += 1.0
        elif config.update == "per_edge":
            for _ in range(d):
                w = weights.copy()
                w[picked] = 0.0
                c = _draw(w, rng.random())
                weights[c] += 1.0
                picked.append(c)
        else:
            w = weights.copy()
            for _ in range(d):
                c = _draw(w, rng.random())
                w[c] = 0.0
                picked.append(c)
            weights[picked] += 1.0
        adjacency[lang] = frozenset(picked)

    ids = config.language_ids or tuple(f"L{i}" for i in range(len(config.degree_sequence)))
    return BipartiteNetwork(
        language_degrees=tuple(zip(ids, config.degree_sequence)),
        adjacency=tuple(adjacency),
        registry_size=n,
    )


def ensemble_distribution(config: GrowthConfig, runs: int) -> DegreeDistribution:
    """Average empirical degree distribution over runs seeded seed, seed+1, ..."""
    if runs < 1:
        raise PlanetError("runs must be >= 1", "E_CONFIG")
    totals: Counter[int] = Counter()
    for i in range(runs):
        dist = empirical_distribution(consonant_degrees(simulate(config.with_seed(config.seed + i))))
        for k, p in zip(dist.support, dist.mass):
            totals[k] += p
    support = sorted(totals)
    mass = np.array([totals[k] for k in support]) / runs
    return DegreeDistribution(tuple(support), tuple(mass / mass.sum()))


def poisson_degree_sequence(rng: np.random.Generator, t: int, mu: float, registry_size: int = 541) -> list[int]:
    """``t`` inventory sizes drawn from Poisson(mu), nudged to sum to ``round(t * mu)``.

    Sampling is by inverse CDF on ``rng.random()`` doubles; sizes stay in
    ``1..registry_size``.
    """
    target = int(round(t * mu))
    if not t <= target <= t * registry_size:
        raise PlanetError(f"cannot reach mean {mu} with sizes in 1..{registry_size}", "E_CONFIG")
    d = []
    for _ in range(t):
        u = rng.random()
        k, p = 0, np.exp(-mu)
        cdf = p
        while u > cdf and k < registry_size:
            k += 1
            p *= mu / k
            cdf += p
        d.append(min(max(k, 1), registry_size))
    total = sum(d)
    while total != target:
        i = int(rng.random() * t)
        if total < target and d[i] < registry_size:
            d[i] += 1
            total += 1
        elif total > target and d[i] > 1:
            d[i] -= 1
            total -= 1
    return d
