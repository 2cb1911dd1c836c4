"""Reading and writing consonant inventory files.

File format, one language per line (UTF-8, ``\\n`` line endings)::

    language_id<TAB>family<TAB>label( label)*

Lines starting with ``#`` are comments and blank lines are skipped.
Labels are compared by exact string equality.
"""

from __future__ import annotations

import os
from pathlib import Path
from typing import Iterable, Sequence

from .core import ConsonantRegistry, FamilyDataset, LanguageInventory, PlanetError

DEFAULT_REGISTRY_SIZE = 541


class InventoryFormatError(PlanetError):
    code = "E_FORMAT"


def _parse_lines(lines: Iterable[str], source: str):
    rows = []
    seen: dict[str, int] = {}
    for lineno, raw in enumerate(lines, start=1):
        line = raw.rstrip("\r\n")
        if not line.strip() or line.startswith("#"):
            continue
        parts = line.split("\t")
        if len(parts) != 3:
            raise InventoryFormatError(
                f"{source}:{lineno}: expected 3 tab-separated fields, got {len(parts)}"
            )
        lang, family, labels = parts
        lang, family = lang.strip(), family.strip()
        if not lang or not family:
            raise InventoryFormatError(f"{source}:{lineno}: empty language id or family")
        consonants = labels.split()
        if not consonants:
            raise InventoryFormatError(
                f"{source}:{lineno}: language {lang!r} has an empty consonant list"
            )
        if lang in seen:
            raise PlanetError(
                f"{source}:{lineno}: duplicate language id {lang!r} (first seen on line {seen[lang]})",
                "E_DUPLICATE_ID",
            )
        seen[lang] = lineno
        rows.append((lang, family, consonants))
    return rows


def parse_text(text: str, source: str = "<string>") -> tuple[ConsonantRegistry, list[FamilyDataset]]:
    rows = _parse_lines(text.splitlines(), source)
    if not rows:
        raise InventoryFormatError(f"{source}: no inventories found")

    symbols: dict[str, None] = {}
    for _, _, labels in rows:
        for s in labels:
            symbols.setdefault(s, None)
    registry = ConsonantRegistry(tuple(symbols))

    grouped: dict[str, list[LanguageInventory]] = {}
    for lang, family, labels in rows:
        grouped.setdefault(family, []).append(
            LanguageInventory(lang, family, registry.indices(labels))
        )
    datasets = [FamilyDataset(name, tuple(invs), registry) for name, invs in grouped.items()]
    return registry, datasets


def parse_inventories(path) -> tuple[ConsonantRegistry, list[FamilyDataset]]:
    """Parse an inventory file into its registry and one dataset per family.

    The registry lists every label in first-appearance order and families
    come back in the order they first appear in the file.
    """
    path = Path(path)
    with open(path, encoding="utf-8", newline="") as fh:
        text = fh.read()
    return parse_text(text, str(path))


def format_inventories(datasets: Sequence[FamilyDataset], header: Sequence[str] = ()) -> str:
    """Render datasets back to the file format, families kept contiguous."""
    out = [f"# {h}\n" for h in header]
    for ds in datasets:
        symbols = ds.registry.symbols
        for inv in ds.inventories:
            labels = " ".join(symbols[i] for i in sorted(inv.consonants))
            out.append(f"{inv.language_id}\t{ds.name}\t{labels}\n")
    return "".join(out)


def write_inventories(path, datasets: Sequence[FamilyDataset], header: Sequence[str] = ()) -> None:
    write_atomic(path, format_inventories(datasets, header))


def write_atomic(path, text: str) -> None:
    path = Path(path)
    tmp = path.with_name(f".{path.name}.tmp{os.getpid()}")
    with open(tmp, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(text)
    os.replace(tmp, path)


def select_family(datasets: Sequence[FamilyDataset], name: str) -> FamilyDataset:
    for ds in datasets:
        if ds.name == name:
            return ds
    known = ", ".join(ds.name for ds in datasets)
    raise PlanetError(f"unknown family {name!r} (known: {known})", "E_FAMILY")


def merge_families(datasets: Sequence[FamilyDataset], name: str) -> FamilyDataset:
    """Concatenate the inventories of several datasets under a new name."""
    if not datasets:
        raise PlanetError("nothing to merge", "E_EMPTY")
    registry = datasets[0].registry
    for ds in datasets[1:]:
        if ds.registry != registry:
            raise PlanetError(
                f"dataset {ds.name!r} uses a different consonant registry", "E_REGISTRY"
            )
    inventories = [inv for ds in datasets for inv in ds.inventories]
    ids = [inv.language_id for inv in inventories]
    if len(set(ids)) != len(ids):
        seen, clash = set(), []
        for i in ids:
            if i in seen:
                clash.append(i)
            seen.add(i)
        raise PlanetError(f"language id collision while merging: {clash}", "E_DUPLICATE_ID")
    return FamilyDataset(name, tuple(inventories), registry)


def relabel(ds: FamilyDataset, suffix: str, name: str | None = None) -> FamilyDataset:
    """Copy of ``ds`` with every language id suffixed; inventories unchanged."""
    return FamilyDataset(
        name if name is not None else ds.name + suffix,
        tuple(
            LanguageInventory(inv.language_id + suffix, inv.family, inv.consonants)
            for inv in ds.inventories
        ),
        ds.registry,
    )
