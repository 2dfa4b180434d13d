import random
from fractions import Fraction as F

import pytest
from hypothesis import given, settings, strategies as st

from tedpoly.hamilton import (
    ConfigurationError, Digraph, InvariantError, all_digraphs, brute_max,
    check_theorem_bounds, lp_decide, lp_max_convex, lp_max_extended, lp_max_hrep,
    oracle_is_hamiltonian)
from tedpoly.facets import enumerate_facets, project
from tedpoly.permutations import PermClass, classify, enumerate_permutations


def hamiltonian_by_tours(g):
    """Oracle: some single n-cycle permutation uses only arcs of g."""
    return any(classify(p) is PermClass.TOUR and all(g.adj[i][p.image[i]] for i in range(g.n))
               for p in enumerate_permutations(g.n))


def cycle(n):
    return Digraph.from_arcs(n, [(i, (i + 1) % n) for i in range(n)])


def test_oracle_examples(two_two_cycles):
    assert oracle_is_hamiltonian(cycle(4))
    assert not oracle_is_hamiltonian(Digraph.from_arcs(4, [(0, 1), (1, 2), (2, 0)]))
    assert not oracle_is_hamiltonian(two_two_cycles)


def test_oracle_matches_tour_enumeration_n4():
    for mask in range(0, 4096, 7):
        g = Digraph.from_mask(4, mask)
        assert oracle_is_hamiltonian(g) == hamiltonian_by_tours(g)


def test_digraph_validation():
    with pytest.raises(ValueError):
        Digraph.from_rows([[1, 0, 0], [0, 0, 1], [1, 0, 0]])
    with pytest.raises(ValueError):
        Digraph.from_rows([[0, 2, 0], [0, 0, 1], [1, 0, 0]])
    with pytest.raises(ValueError):
        Digraph.parse("3\n0 1 0\n0 0 1\n")


def test_graph_file_round_trip(tmp_path, k4):
    path = tmp_path / "k4.txt"
    path.write_text(k4.dumps())
    assert path.read_text().splitlines()[0] == "4"
    assert Digraph.read(path) == k4


def test_all_digraphs_count():
    gs = list(all_digraphs(3))
    assert len(gs) == 64
    assert len({g.adj for g in gs}) == 64


def test_brute_max_examples(point_sets, k4, two_two_cycles):
    ps = point_sets(4, F(1))
    assert brute_max(k4, ps)[0] == 8
    assert brute_max(k4, ps)[2] is PermClass.TOUR
    empty = Digraph.from_arcs(4, [])
    assert brute_max(empty, ps)[0] == 0
    value, idx, cls = brute_max(two_two_cycles, ps)
    # oracle: exhaustive inner products over all 24 points
    flat = two_two_cycles.flatten()
    products = [sum(a * x for a, x in zip(flat, q.coords)) for q in ps]
    assert value == max(products) == 5
    assert idx == products.index(max(products))
    assert cls is PermClass.IRREFLEXIVE_NONTOUR
    assert max(p for p, q in zip(products, ps) if q.perm_class is PermClass.TOUR) == 4


def test_brute_max_dimension_mismatch(point_sets, k4):
    with pytest.raises(ValueError):
        brute_max(k4, point_sets(5, F(1)))


def test_lp_decide_examples(k4, two_two_cycles):
    r = lp_decide(k4, 1)
    assert r.lp_value == 8 and r.lp_hamiltonian and r.oracle_hamiltonian
    r = lp_decide(two_two_cycles, 1)
    assert r.lp_value == 5 and not r.lp_hamiltonian and not r.oracle_hamiltonian
    r = lp_decide(cycle(5), 1)
    assert r.lp_value == 10 and r.lp_hamiltonian
    assert r.to_json()["lp_value"] == "10"


def test_lp_decide_requires_good_eps():
    with pytest.raises(ConfigurationError):
        lp_decide(cycle(5), 5)
    r = lp_decide(cycle(5), 5, allow_bad_eps=True)
    assert r.lp_value == 30


def test_extended_encoding_matches(point_sets, k4, two_two_cycles):
    ps = point_sets(4, F(1))
    for g in (k4, two_two_cycles, cycle(4), Digraph.from_mask(4, 1234)):
        assert lp_max_extended(g, ps) == lp_max_convex(g, ps) == brute_max(g, ps)[0]
    r = lp_decide(two_two_cycles, 1, encoding="extended")
    assert r.lp_value == 5


def test_facet_lp_matches_brute_max_on_all_n4_graphs(point_sets):
    ps = point_sets(4, F(1))
    h = enumerate_facets(project(ps))
    for g in all_digraphs(4):
        assert lp_max_hrep(g, h, 1) == brute_max(g, ps)[0]


def test_facet_encoding_decides(two_two_cycles):
    r = lp_decide(cycle(4), 1, encoding="hrep")
    assert r.lp_hamiltonian and r.agrees
    r = lp_decide(two_two_cycles, 1, encoding="hrep")
    assert not r.lp_hamiltonian and r.agrees


def test_facet_lp_rejects_wrong_dimension(point_sets):
    h = enumerate_facets(project(point_sets(4, F(1))))
    with pytest.raises(ConfigurationError):
        lp_max_hrep(cycle(5), h, 1)


def test_unknown_encoding(k4):
    with pytest.raises(ValueError):
        lp_decide(k4, 1, encoding="facets")


def test_theorem_bounds_examples(point_sets, k4, two_two_cycles):
    ps = point_sets(4, F(1))
    b = check_theorem_bounds(k4, ps)
    assert b.ok and b.hamiltonian and b.max_nontour <= 7
    b = check_theorem_bounds(two_two_cycles, ps)
    assert b.ok and not b.hamiltonian and b.max_tour == 4 <= 6
    b = check_theorem_bounds(cycle(4), ps)
    assert b.ok and b.max_tour == 8


def test_theorem_bounds_detect_wrong_label(point_sets, two_two_cycles):
    # feeding a wrong Hamiltonicity label must break the tour-max equality
    assert not check_theorem_bounds(two_two_cycles, point_sets(4, F(1)), hamiltonian=True).ok


digraphs5 = st.lists(st.booleans(), min_size=20, max_size=20).map(
    lambda bits: Digraph.from_mask(5, sum(1 << k for k, b in enumerate(bits) if b)))


@settings(max_examples=60, deadline=None)
@given(digraphs5)
def test_lp_matches_oracle_n5(g):
    r = lp_decide(g, 1)
    assert r.agrees and r.theorem_bounds_ok
    assert r.oracle_hamiltonian == hamiltonian_by_tours(g)
    if r.oracle_hamiltonian:
        assert r.argmax_class is PermClass.TOUR


def test_dense_random_n5_has_hamiltonian_cases():
    rng = random.Random(5)
    seen = set()
    for _ in range(40):
        g = Digraph.from_mask(5, rng.getrandbits(20) | rng.getrandbits(20))
        seen.add(lp_decide(g, 1).lp_hamiltonian)
    assert seen == {True, False}
