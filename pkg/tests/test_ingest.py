import pytest

from planet.core import BipartiteNetwork, PlanetError, consonant_degrees
from planet.fixture import FAMILIES, fixture_path, fixture_text, generate_fixture
from planet.ingest import (
    format_inventories,
    merge_families,
    parse_inventories,
    parse_text,
    relabel,
    write_inventories,
)
from planet.growth import GrowthConfig


def test_minimal_file(tmp_path):
    p = tmp_path / "one.tsv"
    p.write_text("x\tie\tp t k\n", encoding="utf-8")
    registry, datasets = parse_inventories(p)
    assert registry.symbols == ("p", "t", "k")
    assert len(datasets) == 1 and datasets[0].name == "ie"
    assert datasets[0].inventories[0].consonants == frozenset({0, 1, 2})


def test_duplicate_id_names_the_id():
    with pytest.raises(PlanetError, match="'x'"):
        parse_text("x\tie\tp\nx\tie\tt\n")


def test_empty_consonant_list_names_the_row():
    with pytest.raises(PlanetError, match=r":2: .*'y'"):
        parse_text("x\tie\tp\ny\tie\t\n")


def test_comments_and_blank_lines_skipped():
    registry, datasets = parse_text("# header\n\nx\ta\tp t\n  \ny\tb\tt k\n")
    assert registry.symbols == ("p", "t", "k")
    assert [ds.name for ds in datasets] == ["a", "b"]


def test_malformed_row():
    with pytest.raises(PlanetError, match="3 tab-separated"):
        parse_text("x ie p t k\n")


def test_unreadable_file(tmp_path):
    with pytest.raises(OSError):
        parse_inventories(tmp_path / "missing.tsv")


def test_duplicate_labels_within_row_collapse():
    _, (ds,) = parse_text("x\ta\tp p t\n")
    assert ds.inventories[0].degree == 2


def test_fixture_family_sizes(fixture_data):
    registry, datasets = fixture_data
    assert [ds.name for ds in datasets] == ["IE", "AA", "NC", "AN", "ST"]
    assert [len(ds) for ds in datasets] == [19, 17, 30, 12, 9]
    assert [ds.edge_count for ds in datasets] == [534, 453, 692, 221, 201]
    attested = [len(consonant_degrees(BipartiteNetwork.from_dataset(ds))) for ds in datasets]
    assert attested == [148, 123, 135, 82, 71]


def test_fixture_registry_is_label_union(fixture_data):
    registry, datasets = fixture_data
    text = fixture_path().read_text(encoding="utf-8")
    labels = {
        s for line in text.splitlines() if line and not line.startswith("#")
        for s in line.split("\t")[2].split(" ")
    }
    assert registry.size == len(labels) <= 541


def test_fixture_language_names_match_family_lists(fixture_data):
    _, datasets = fixture_data
    for ds, fam in zip(datasets, FAMILIES):
        assert tuple(ds.language_ids) == fam.languages


def test_bundled_fixture_is_reproducible():
    assert fixture_path().read_text(encoding="utf-8") == fixture_text()


def test_generated_fixture_matches_parsed(fixture_data):
    _, generated = generate_fixture()
    _, parsed = fixture_data
    for g, p in zip(generated, parsed):
        g_sets = [{g.registry.symbols[i] for i in inv.consonants} for inv in g.inventories]
        p_sets = [{p.registry.symbols[i] for i in inv.consonants} for inv in p.inventories]
        assert g_sets == p_sets


def test_round_trip_is_bit_exact(tmp_path):
    original = fixture_path().read_bytes()
    header = [line[2:] for line in original.decode("utf-8").splitlines() if line.startswith("# ")]
    _, datasets = parse_inventories(fixture_path())
    out = tmp_path / "copy.tsv"
    write_inventories(out, datasets, header)
    assert out.read_bytes() == original


def test_parse_is_deterministic():
    text = fixture_path().read_text(encoding="utf-8")
    assert parse_text(text) == parse_text(text)


def test_writer_groups_families_contiguously():
    _, datasets = parse_text("a\tX\tp\nb\tY\tt\nc\tX\tk\n")
    lines = format_inventories(datasets).splitlines()
    assert [line.split("\t")[1] for line in lines] == ["X", "X", "Y"]


def test_merge_all(families):
    merged = merge_families(list(families.values()), "all")
    assert len(merged) == 87
    assert merged.edge_count == 534 + 453 + 692 + 221 + 201


def test_merge_two(families):
    assert len(merge_families([families["AA"], families["NC"]], "AA+NC")) == 47


def test_merge_single_is_identity(families):
    ie = families["IE"]
    merged = merge_families([ie], "renamed")
    assert merged.name == "renamed"
    assert merged.inventories == ie.inventories and merged.registry == ie.registry


def test_merge_leaves_inputs_unchanged(families):
    before = families["AA"].inventories
    merge_families([families["AA"], families["NC"]], "x")
    assert families["AA"].inventories == before


def test_merge_order_does_not_change_degrees(families):
    ab = merge_families([families["IE"], families["ST"]], "ab")
    ba = merge_families([families["ST"], families["IE"]], "ba")
    assert consonant_degrees(BipartiteNetwork.from_dataset(ab)) == consonant_degrees(
        BipartiteNetwork.from_dataset(ba)
    )


def test_merge_id_collision(families):
    with pytest.raises(PlanetError, match="collision"):
        merge_families([families["IE"], families["IE"]], "x")


def test_merge_registry_mismatch(families):
    _, (other,) = parse_text("zz\tQ\tp\n")
    with pytest.raises(PlanetError, match="registry"):
        merge_families([families["IE"], other], "x")


def test_relabel_keeps_inventories(families):
    copy = relabel(families["ST"], "_copy")
    assert [i.consonants for i in copy.inventories] == [i.consonants for i in families["ST"].inventories]
    assert all(lid.endswith("_copy") for lid in copy.language_ids)


def test_default_registry_size_exceeds_parsed_union(fixture_data):
    registry, datasets = fixture_data
    # Fitting and growth default to N=541 regardless of the parsed union.
    assert GrowthConfig(0.1, (1,)).registry_size == 541 > registry.size
