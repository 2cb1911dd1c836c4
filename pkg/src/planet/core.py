"""Domain types for phoneme-language networks and their degree distributions."""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence

import numpy as np

NORMALIZATION_TOL = 1e-9


class PlanetError(ValueError):
    """Base error; ``code`` is a stable identifier used in CLI diagnostics."""

    code = "E_PLANET"

    def __init__(self, message: str, code: str | None = None):
        super().__init__(message)
        if code is not None:
            self.code = code


@dataclass(frozen=True)
class ConsonantRegistry:
    """Ordered set of consonant labels; a label's index never changes."""

    symbols: tuple[str, ...]
    _index: dict[str, int] = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        symbols = tuple(self.symbols)
        object.__setattr__(self, "symbols", symbols)
        if not symbols:
            raise PlanetError("registry must contain at least one consonant", "E_REGISTRY")
        index = {s: i for i, s in enumerate(symbols)}
        if len(index) != len(symbols):
            dupes = sorted(s for s, c in Counter(symbols).items() if c > 1)
            raise PlanetError(f"duplicate consonant labels: {dupes}", "E_REGISTRY")
        object.__setattr__(self, "_index", index)

    @property
    def size(self) -> int:
        return len(self.symbols)

    def __len__(self):
        return len(self.symbols)

    def index(self, label: str) -> int:
        try:
            return self._index[label]
        except KeyError:
            raise PlanetError(f"unknown consonant label {label!r}", "E_REGISTRY") from None

    def indices(self, labels: Iterable[str]) -> frozenset[int]:
        return frozenset(self.index(s) for s in labels)


@dataclass(frozen=True)
class LanguageInventory:
    language_id: str
    family: str
    consonants: frozenset[int]

    def __post_init__(self):
        object.__setattr__(self, "consonants", frozenset(self.consonants))
        if not self.consonants:
            raise PlanetError(
                f"language {self.language_id!r} has an empty consonant inventory", "E_INVENTORY"
            )
        if min(self.consonants) < 0:
            raise PlanetError(f"negative consonant index in {self.language_id!r}", "E_INVENTORY")

    @property
    def degree(self) -> int:
        return len(self.consonants)


@dataclass(frozen=True)
class FamilyDataset:
    name: str
    inventories: tuple[LanguageInventory, ...]
    registry: ConsonantRegistry

    def __post_init__(self):
        inventories = tuple(self.inventories)
        object.__setattr__(self, "inventories", inventories)
        seen = set()
        for inv in inventories:
            if inv.language_id in seen:
                raise PlanetError(
                    f"duplicate language id {inv.language_id!r} in dataset {self.name!r}",
                    "E_DUPLICATE_ID",
                )
            seen.add(inv.language_id)
            if max(inv.consonants) >= self.registry.size:
                raise PlanetError(
                    f"language {inv.language_id!r} references a consonant outside the registry",
                    "E_INVENTORY",
                )

    def __len__(self):
        return len(self.inventories)

    @property
    def language_ids(self) -> list[str]:
        return [inv.language_id for inv in self.inventories]

    @property
    def degree_sequence(self) -> list[int]:
        return [inv.degree for inv in self.inventories]

    @property
    def edge_count(self) -> int:
        return sum(inv.degree for inv in self.inventories)

    @property
    def mean_inventory_size(self) -> float:
        """Average language degree (edges per language)."""
        if not self.inventories:
            raise PlanetError(f"dataset {self.name!r} is empty", "E_EMPTY")
        return self.edge_count / len(self.inventories)


@dataclass(frozen=True)
class BipartiteNetwork:
    """Languages on one side, registry indices ``0..N-1`` on the other.

    ``adjacency[i]`` is the consonant set of the language in
    ``language_degrees[i]``; sets make duplicate edges impossible.
    """

    language_degrees: tuple[tuple[str, int], ...]
    adjacency: tuple[frozenset[int], ...]
    registry_size: int

    def __post_init__(self):
        object.__setattr__(self, "language_degrees", tuple(tuple(x) for x in self.language_degrees))
        object.__setattr__(self, "adjacency", tuple(frozenset(a) for a in self.adjacency))
        if self.registry_size < 1:
            raise PlanetError("registry size must be >= 1", "E_REGISTRY")
        if len(self.adjacency) != len(self.language_degrees):
            raise PlanetError("adjacency and language list differ in length", "E_NETWORK")
        for (lang, d), adj in zip(self.language_degrees, self.adjacency):
            if d != len(adj):
                raise PlanetError(f"degree of {lang!r} is {d} but it has {len(adj)} edges", "E_NETWORK")
            if adj and (min(adj) < 0 or max(adj) >= self.registry_size):
                raise PlanetError(f"language {lang!r} links outside the registry", "E_NETWORK")

    @classmethod
    def from_dataset(cls, ds: FamilyDataset, registry_size: int | None = None) -> BipartiteNetwork:
        n = ds.registry.size if registry_size is None else registry_size
        return cls(
            language_degrees=tuple((inv.language_id, inv.degree) for inv in ds.inventories),
            adjacency=tuple(inv.consonants for inv in ds.inventories),
            registry_size=n,
        )

    @property
    def edge_count(self) -> int:
        return sum(d for _, d in self.language_degrees)

    def edges(self) -> list[tuple[str, int]]:
        """(language_id, consonant index) pairs, languages in stored order."""
        return [
            (lang, c)
            for (lang, _), adj in zip(self.language_degrees, self.adjacency)
            for c in sorted(adj)
        ]


def _check_support(support: Sequence[int]) -> None:
    if len(support) == 0:
        raise PlanetError("distribution support is empty", "E_DISTRIBUTION")
    if support[0] < 1:
        raise PlanetError("degrees in a distribution must be >= 1", "E_DISTRIBUTION")
    if any(b <= a for a, b in zip(support, support[1:])):
        raise PlanetError("distribution support must be strictly ascending", "E_DISTRIBUTION")


@dataclass(frozen=True)
class DegreeDistribution:
    """Sparse degree distribution p_k over an ascending support."""

    support: tuple[int, ...]
    mass: tuple[float, ...]

    def __post_init__(self):
        object.__setattr__(self, "support", tuple(int(k) for k in self.support))
        object.__setattr__(self, "mass", tuple(float(p) for p in self.mass))
        _check_support(self.support)
        if len(self.mass) != len(self.support):
            raise PlanetError("support and mass differ in length", "E_DISTRIBUTION")
        if not all(p > 0 and np.isfinite(p) for p in self.mass):
            raise PlanetError("all masses must be finite and positive", "E_DISTRIBUTION")
        if abs(sum(self.mass) - 1.0) > NORMALIZATION_TOL:
            raise PlanetError(f"masses sum to {sum(self.mass)!r}, not 1", "E_DISTRIBUTION")

    @property
    def values(self) -> tuple[float, ...]:
        return self.mass

    def as_dict(self) -> dict[int, float]:
        return dict(zip(self.support, self.mass))


@dataclass(frozen=True)
class CumulativeDistribution:
    """Tail P_k = fraction of nodes with degree >= k, at each support degree."""

    support: tuple[int, ...]
    tail: tuple[float, ...]

    def __post_init__(self):
        object.__setattr__(self, "support", tuple(int(k) for k in self.support))
        object.__setattr__(self, "tail", tuple(float(p) for p in self.tail))
        _check_support(self.support)
        if len(self.tail) != len(self.support):
            raise PlanetError("support and tail differ in length", "E_DISTRIBUTION")
        if abs(self.tail[0] - 1.0) > NORMALIZATION_TOL:
            raise PlanetError(f"tail starts at {self.tail[0]!r}, not 1", "E_DISTRIBUTION")
        if not all(0 < p <= 1 + NORMALIZATION_TOL for p in self.tail):
            raise PlanetError("tail values must lie in (0, 1]", "E_DISTRIBUTION")
        if any(b > a for a, b in zip(self.tail, self.tail[1:])):
            raise PlanetError("tail must be non-increasing", "E_DISTRIBUTION")

    @property
    def values(self) -> tuple[float, ...]:
        return self.tail

    def as_dict(self) -> dict[int, float]:
        return dict(zip(self.support, self.tail))


def consonant_degrees(net: BipartiteNetwork) -> dict[int, int]:
    """Number of languages attached to each consonant; degree-0 consonants are left out."""
    counts: Counter[int] = Counter()
    for adj in net.adjacency:
        counts.update(adj)
    return dict(sorted(counts.items()))


def empirical_distribution(degrees: Mapping[int, int]) -> DegreeDistribution:
    if not degrees:
        raise PlanetError("no attested consonants", "E_EMPTY")
    if min(degrees.values()) < 1:
        raise PlanetError("consonant degrees must be >= 1", "E_DISTRIBUTION")
    tally = Counter(degrees.values())
    total = len(degrees)
    support = sorted(tally)
    return DegreeDistribution(tuple(support), tuple(tally[k] / total for k in support))


def cumulate(d: DegreeDistribution) -> CumulativeDistribution:
    mass = np.asarray(d.mass)
    # Reverse cumulative sum, then rescale so the head is exactly 1.
    tail = np.cumsum(mass[::-1])[::-1]
    tail = tail / tail[0]
    return CumulativeDistribution(d.support, tuple(np.minimum(tail, 1.0)))
