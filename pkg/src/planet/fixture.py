"""Synthetic inventory fixture shaped like five real language families.

Each family has the same language count, consonant count and edge count
as the corresponding real network it stands in for. Language names are
real; their inventories are not. Inventories are grown with the growth
model and then repaired edge by edge until the attested consonant count
is exact, so every language keeps its drawn inventory size.

Only ``Generator.random()`` is consumed, so regenerating with the same
seed reproduces the bundled file byte for byte.
"""

from __future__ import annotations

from dataclasses import dataclass
from importlib import resources
from pathlib import Path

import numpy as np

from .core import ConsonantRegistry, FamilyDataset, LanguageInventory
from .growth import GrowthConfig, simulate
from .ingest import format_inventories, parse_inventories, parse_text, write_atomic

FIXTURE_SEED = 20080101
FIXTURE_NAME = "fixture.tsv"


@dataclass(frozen=True)
class FamilySpec:
    code: str
    name: str
    n_consonants: int
    n_edges: int
    growth_epsilon: float
    age_years: str
    languages: tuple[str, ...]

    @property
    def n_languages(self) -> int:
        return len(self.languages)


FAMILIES = (
    FamilySpec(
        "IE", "Indo-European", 148, 534, 0.055, "4000 (or 8000)",
        ("Albanian", "Lithuanian", "Breton", "Irish", "German", "Norwegian", "Greek",
         "Bengali", "Hindi-Urdu", "Kashmiri", "Sinhalese", "Farsi", "Kurdish", "Pashto",
         "French", "Romanian", "Spanish", "Russian", "Bulgarian"),
    ),
    FamilySpec(
        "AA", "Afro-Asiatic", 123, 453, 0.040, "6000",
        ("Shilha", "Margi", "Angas", "Dera", "Hausa", "Kanakuru", "Ngizim", "Awiya",
         "Somali", "Iraqw", "Dizi", "Kefa", "Kullo", "Hamer", "Arabic", "Amharic", "Socotri"),
    ),
    FamilySpec(
        "NC", "Niger-Congo", 135, 692, 0.035, "5000",
        ("Diola", "Temne", "Wolof", "Akan", "Amo", "Bariba", "Beembe", "Birom", "Cham",
         "Dagbani", "Doayo", "Efik", "Ga", "Gbeya", "Igbo", "Ik", "Koma", "Lelemi", "Senadi",
         "Tampulma", "Tarok", "Teke", "Zande", "Zulu", "Kadugli", "Moro", "Bisa", "Dan",
         "Bambara", "Kpelle"),
    ),
    FamilySpec(
        "AN", "Austronesian", 82, 221, 0.030, "4000",
        ("Rukai", "Tsou", "Hawaiian", "Iai", "Adzera", "Kaliai", "Roro", "Malagasy",
         "Chamorro", "Tagalog", "Batak", "Javanese"),
    ),
    FamilySpec(
        "ST", "Sino-Tibetan", 71, 201, 0.035, "6000",
        ("Hakka", "Mandarin", "Taishan", "Jingpho", "Ao", "Karen", "Burmese", "Lahu", "Dafla"),
    ),
)

FAMILY_AGES = {f.code: f.age_years for f in FAMILIES}

# Rough cross-linguistic frequency order; earlier symbols are more common.
_BASES = (
    "m k j p w n t ŋ s b h g d ɲ f l ʔ r ʃ z v tʃ ts x ɾ dʒ ʒ c ɟ ɣ β θ ð ɸ q ɬ ɮ ç ʝ χ ʁ "
    "ħ ʕ ɦ ʈ ɖ ɳ ɭ ɽ ʂ ʐ ɕ ʑ ʎ ʋ ɹ ɻ ʟ ɰ dz"
).split()
_MODIFIERS = ("", "ʰ", "ʷ", "ʲ", "ː", "ʼ", "ˤ", "ʱ", "ˠ", "ʰʷ", "ʷʼ")
GLOBAL_SIZE = 541


def global_labels(size: int = GLOBAL_SIZE) -> tuple[str, ...]:
    labels = [b + m for m in _MODIFIERS for b in _BASES]
    if size > len(labels):
        raise ValueError(f"cannot build more than {len(labels)} labels")
    return tuple(labels[:size])


def _degree_sequence(rng: np.random.Generator, fam: FamilySpec) -> list[int]:
    t = fam.n_languages
    mu = fam.n_edges / t
    lo, hi = 3, fam.n_consonants
    d = [min(hi, max(lo, int(round(mu * (0.6 + 0.8 * rng.random()))))) for _ in range(t)]
    while sum(d) != fam.n_edges:
        i = int(rng.random() * t)
        if sum(d) < fam.n_edges and d[i] < hi:
            d[i] += 1
        elif sum(d) > fam.n_edges and d[i] > lo:
            d[i] -= 1
    return d


def _repair(rng: np.random.Generator, adjacency: list[set[int]], target: int, n: int) -> None:
    """Move edges until exactly ``target`` consonants are attested."""
    while True:
        deg = np.zeros(n, dtype=int)
        for adj in adjacency:
            for c in adj:
                deg[c] += 1
        attested = int(np.count_nonzero(deg))
        if attested == target:
            return
        if attested < target:
            # Move one edge off a shared consonant onto a fresh one.
            edges = [(i, c) for i, adj in enumerate(adjacency) for c in sorted(adj) if deg[c] >= 2]
            i, c = edges[int(rng.random() * len(edges))]
            fresh = int(np.flatnonzero(deg == 0)[0])
            adjacency[i].remove(c)
            adjacency[i].add(fresh)
        else:
            # Fold a singleton consonant into a popular one the language lacks.
            singles = [(i, c) for i, adj in enumerate(adjacency) for c in sorted(adj) if deg[c] == 1]
            i, c = singles[int(rng.random() * len(singles))]
            options = np.array([x for x in np.flatnonzero(deg >= 2) if x not in adjacency[i]])
            if options.size == 0:
                continue
            w = np.cumsum(deg[options].astype(float))
            j = int(np.searchsorted(w, rng.random() * w[-1], side="right"))
            adjacency[i].remove(c)
            adjacency[i].add(int(options[min(j, options.size - 1)]))


def _popular_labels(rng: np.random.Generator, count: int, size: int) -> list[int]:
    """Weighted sample without replacement (exponential keys), Zipf weights by rank."""
    weights = 1.0 / np.arange(1, size + 1)
    u = np.array([rng.random() for _ in range(size)])
    keys = np.log(np.maximum(u, 1e-300)) / weights
    return [int(i) for i in np.argsort(-keys, kind="stable")[:count]]


def generate_fixture(seed: int = FIXTURE_SEED) -> tuple[ConsonantRegistry, list[FamilyDataset]]:
    rng = np.random.Generator(np.random.PCG64(seed))
    labels = global_labels()
    registry = ConsonantRegistry(labels)
    datasets = []
    for n_fam, fam in enumerate(FAMILIES):
        degrees = _degree_sequence(rng, fam)
        net = simulate(GrowthConfig(fam.growth_epsilon, tuple(degrees), GLOBAL_SIZE, seed + n_fam))
        adjacency = [set(a) for a in net.adjacency]
        _repair(rng, adjacency, fam.n_consonants, GLOBAL_SIZE)

        deg: dict[int, int] = {}
        for adj in adjacency:
            for c in adj:
                deg[c] = deg.get(c, 0) + 1
        local = sorted(deg, key=lambda c: (-deg[c], c))
        mapping = dict(zip(local, _popular_labels(rng, len(local), GLOBAL_SIZE)))
        inventories = tuple(
            LanguageInventory(lang, fam.code, frozenset(mapping[c] for c in adj))
            for lang, adj in zip(fam.languages, adjacency)
        )
        datasets.append(FamilyDataset(fam.code, inventories, registry))
    return registry, datasets


def fixture_text(seed: int = FIXTURE_SEED) -> str:
    _, datasets = generate_fixture(seed)
    header = [
        "Synthetic consonant inventories; real language names, simulated inventories.",
        f"Generated by planet.fixture.generate_fixture(seed={seed}).",
        "language_id<TAB>family<TAB>consonant labels separated by single spaces",
    ]
    # Round-trip once through the parser so the file is a fixed point of
    # parse -> write (labels ordered by first appearance).
    _, canonical = parse_text(format_inventories(datasets))
    return format_inventories(canonical, header)


def write_fixture(path, seed: int = FIXTURE_SEED) -> None:
    write_atomic(path, fixture_text(seed))


def fixture_path() -> Path:
    return Path(str(resources.files("planet") / "data" / FIXTURE_NAME))


def load_fixture() -> tuple[ConsonantRegistry, list[FamilyDataset]]:
    return parse_inventories(fixture_path())
