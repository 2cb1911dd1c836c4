
import pytest
from hypothesis import given, settings, strategies as st

from planet.core import (
    BipartiteNetwork,
    ConsonantRegistry,
    CumulativeDistribution,
    DegreeDistribution,
    PlanetError,
    consonant_degrees,
    cumulate,
    empirical_distribution,
)
from planet.growth import GrowthConfig, simulate


def net_of(*inventories, n=None):
    n = n if n is not None else max(max(a) for a in inventories) + 1
    return BipartiteNetwork(
        tuple((f"L{i}", len(a)) for i, a in enumerate(inventories)),
        tuple(frozenset(a) for a in inventories),
        n,
    )


@st.composite
def networks(draw, max_n=12, max_langs=8):
    n = draw(st.integers(1, max_n))
    langs = draw(
        st.lists(st.sets(st.integers(0, n - 1), min_size=1, max_size=n), min_size=1, max_size=max_langs)
    )
    return net_of(*langs, n=n)


def tally(net):
    # Reference: ask, for every registry slot, which languages contain it.
    out = {}
    for c in range(net.registry_size):
        k = sum(1 for adj in net.adjacency if c in adj)
        if k:
            out[c] = k
    return out


def reference_tail(d):
    return [sum(p for k2, p in zip(d.support, d.mass) if k2 >= k) for k in d.support]


def test_single_language():
    assert consonant_degrees(net_of({0, 1, 2})) == {0: 1, 1: 1, 2: 1}


def test_full_overlap():
    assert consonant_degrees(net_of({0}, {0})) == {0: 2}


def test_zero_degree_consonants_omitted():
    assert consonant_degrees(net_of({3}, n=10)) == {3: 1}


def test_fixture_ie_degrees(families):
    degrees = consonant_degrees(BipartiteNetwork.from_dataset(families["IE"]))
    assert len(degrees) == 148
    assert sum(degrees.values()) == 534


def test_empirical_hand_count():
    d = empirical_distribution({0: 1, 1: 1, 2: 2})
    assert d.support == (1, 2)
    assert d.mass == pytest.approx((2 / 3, 1 / 3), abs=1e-15)


def test_empirical_singleton():
    d = empirical_distribution({0: 5})
    assert d.support == (5,) and d.mass == (1.0,)


def test_empirical_empty():
    with pytest.raises(PlanetError, match="no attested consonants"):
        empirical_distribution({})


def test_empirical_matches_tally_of_simulated_network(families):
    cfg = GrowthConfig(0.05, tuple(families["IE"].degree_sequence), 541, 42)
    net = simulate(cfg)
    ref = tally(net)
    counts = {}
    for k in ref.values():
        counts[k] = counts.get(k, 0) + 1
    d = empirical_distribution(consonant_degrees(net))
    assert d.as_dict() == pytest.approx({k: c / len(ref) for k, c in counts.items()}, abs=1e-15)


def test_cumulate_two_point():
    c = cumulate(DegreeDistribution((1, 2), (0.5, 0.5)))
    assert c.tail == (1.0, 0.5)


def test_cumulate_singleton():
    assert cumulate(DegreeDistribution((3,), (1.0,))).tail == (1.0,)


@given(st.lists(st.floats(0.01, 10), min_size=1, max_size=30), st.data())
def test_cumulate_matches_double_loop(weights, data):
    support = sorted(data.draw(st.sets(st.integers(1, 200), min_size=len(weights), max_size=len(weights))))
    total = sum(weights)
    d = DegreeDistribution(tuple(support), tuple(w / total for w in weights))
    c = cumulate(d)
    assert c.tail[0] == pytest.approx(1.0, abs=1e-9)
    assert all(b <= a for a, b in zip(c.tail, c.tail[1:]))
    assert c.tail == pytest.approx(reference_tail(d), abs=1e-12)


@settings(max_examples=200)
@given(networks())
def test_edge_conservation(net):
    assert sum(d for _, d in net.language_degrees) == sum(consonant_degrees(net).values())


@settings(max_examples=200)
@given(networks())
def test_normalization(net):
    d = empirical_distribution(consonant_degrees(net))
    assert abs(sum(d.mass) - 1.0) < 1e-9
    c = cumulate(d)
    assert abs(c.tail[0] - 1.0) < 1e-9


@given(networks(), st.randoms(use_true_random=False))
def test_distribution_invariant_under_language_permutation(net, rnd):
    order = list(range(len(net.adjacency)))
    rnd.shuffle(order)
    shuffled = BipartiteNetwork(
        tuple(net.language_degrees[i] for i in order),
        tuple(net.adjacency[i] for i in order),
        net.registry_size,
    )
    assert empirical_distribution(consonant_degrees(shuffled)) == empirical_distribution(
        consonant_degrees(net)
    )


@pytest.mark.parametrize(
    "support, mass",
    [((), ()), ((2, 1), (0.5, 0.5)), ((1, 2), (0.5, 0.4)), ((1, 2), (1.0, 0.0)), ((0,), (1.0,))],
)
def test_degree_distribution_rejects(support, mass):
    with pytest.raises(PlanetError):
        DegreeDistribution(support, mass)


def test_cumulative_rejects_increasing():
    with pytest.raises(PlanetError):
        CumulativeDistribution((1, 2), (1.0, 1.0 + 1e-3))
    with pytest.raises(PlanetError):
        CumulativeDistribution((1, 2), (0.9, 0.5))


def test_registry_rejects_duplicates():
    with pytest.raises(PlanetError, match="duplicate"):
        ConsonantRegistry(("p", "t", "p"))
    with pytest.raises(PlanetError):
        ConsonantRegistry(())


def test_network_rejects_degree_mismatch():
    with pytest.raises(PlanetError):
        BipartiteNetwork((("a", 2),), (frozenset({0}),), 3)
    with pytest.raises(PlanetError):
        BipartiteNetwork((("a", 1),), (frozenset({5}),), 3)


def test_edges_listing():
    net = net_of({2, 0}, {1})
    assert net.edges() == [("L0", 0), ("L0", 2), ("L1", 1)]
