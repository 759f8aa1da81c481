import random
from itertools import combinations

import networkx as nx
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oracles import brute_force_minor
from rgraphs.census import random_simple_graph, simple_graphs
from rgraphs.errors import PreconditionViolation
from rgraphs.fixtures import complete, complete_bipartite, named, petersen, prism
from rgraphs.multigraph import Multigraph, connectivity, is_isomorphic_to, underlying_simple
from rgraphs.topology import (
    CliqueSumTree,
    check_clique_sum_tree,
    crossing_at_most_one,
    crossing_pairs,
    find_splittable_three_cut,
    has_k33_minor,
    has_k5_minor,
    has_minor,
    is_planar,
    minor_free,
    planarize,
    recompose,
    wagner_decompose,
)


def two_k4_on_a_triangle() -> Multigraph:
    return Multigraph.from_edges(5, [e for e in combinations(range(5), 2) if e != (3, 4)])


@pytest.fixture(scope="module")
def small_connected():
    pool = simple_graphs(7)
    return [g for n in pool for g in pool[n]]


# -- planarity and minors ----------------------------------------------------------


def test_planarity_examples():
    assert is_planar(complete(4))
    assert not is_planar(named("wagner-v8"))
    assert not is_planar(petersen())


def test_planarity_ignores_multiplicity():
    assert is_planar(named("c4-doubled"))
    assert is_planar(named("theta3"))


def test_minor_examples():
    assert has_k33_minor(petersen())
    assert not has_k5_minor(named("wagner-v8"))
    assert has_k33_minor(named("wagner-v8"))
    assert not has_k33_minor(complete(5))
    assert has_k5_minor(complete(5))
    assert has_minor(complete_bipartite(3, 3), "K3,3")


@pytest.mark.parametrize("name", ["wagner-v8", "k33", "k5", "prism", "cube", "octahedron",
                                  "k33-truncated", "mobius10", "petersen"])
@pytest.mark.parametrize("target", ["K5", "K33"])
def test_minor_search_matches_brute_force_on_fixtures(name, target):
    g = named(name)
    assert has_minor(g, target) == brute_force_minor(g, target)


@settings(max_examples=40, deadline=None)
@given(st.integers(5, 7), st.randoms(use_true_random=False))
def test_minor_search_matches_brute_force_random(n, rng):
    g = random_simple_graph(n, rng)
    assert has_k5_minor(g) == brute_force_minor(g, "K5")
    assert has_k33_minor(g) == brute_force_minor(g, "K33")


def test_wagner_equivalence_small(small_connected):
    for g in small_connected:
        assert is_planar(g) == (not has_k5_minor(g) and not has_k33_minor(g))


def test_high_connectivity_forces_planarity(small_connected):
    k5 = complete(5)
    for g in small_connected:
        if g.n < 5:
            continue
        kappa = connectivity(g)
        if kappa >= 4 and not has_k5_minor(g):
            assert is_planar(g)
        if kappa >= 3 and not has_k33_minor(g):
            assert is_planar(g) or is_isomorphic_to(g, k5)


def test_minor_free_shortcut():
    assert minor_free(prism(), "K5") and minor_free(prism(), "K33")
    assert not minor_free(complete(5), "K5") and minor_free(complete(5), "K33")


def test_unknown_forbidden_minor():
    with pytest.raises(ValueError):
        has_minor(prism(), "K7")


# -- crossing number at most one ----------------------------------------------------


@pytest.mark.parametrize("name,verdict", [("k5", "one-crossing"), ("k33", "one-crossing"),
                                          ("petersen", "more"), ("prism", "planar"),
                                          ("wagner-v8", "one-crossing")])
def test_crossing_examples(name, verdict):
    assert crossing_at_most_one(named(name)).verdict == verdict


def test_crossing_certificate_reverifies(small_connected):
    nx_planar = 0
    for g in small_connected:
        c = crossing_at_most_one(g)
        planar = nx.check_planarity(nx.Graph(list(g.edges)))[0] if g.m else True
        nx_planar += planar
        assert (c.verdict == "planar") == planar
        if c.verdict == "one-crossing":
            a, b = c.endpoints
            assert not set(a) & set(b)
            assert g.edges[c.crossing_pair[0]] == a and g.edges[c.crossing_pair[1]] == b
            assert is_planar(planarize(g, a, b))
        if c.verdict == "more":
            assert crossing_pairs(g) == []
    assert nx_planar


def test_planarize_shape():
    g = complete(5)
    h = planarize(g, (0, 1), (2, 3))
    assert h.n == 6 and h.m == g.m + 2
    assert h.degrees[5] == 4


# -- clique-sum decomposition ------------------------------------------------------


def test_two_k4_on_triangle():
    g = two_k4_on_a_triangle()
    tree = wagner_decompose(g, "K5")
    leaves = list(tree.root.leaves())
    assert [leaf.kind for leaf in leaves] == ["planar", "planar"]
    assert len(tree.root.separator) == 3
    assert not check_clique_sum_tree(g, tree)


def test_v8_is_a_single_leaf():
    tree = wagner_decompose(named("wagner-v8"), "K5")
    assert tree.root.kind == "wagner-V8" and not tree.root.children


def test_k5_single_leaf_in_k33_mode():
    tree = wagner_decompose(complete(5), "K33")
    assert tree.root.kind == "K5" and not tree.root.children


def test_decompose_rejects_forbidden_minor():
    with pytest.raises(PreconditionViolation):
        wagner_decompose(complete(5), "K5")
    with pytest.raises(PreconditionViolation):
        wagner_decompose(petersen(), "K33")


@pytest.mark.parametrize("name", ["k33-truncated", "v8-sum-fixture", "cube", "c4-2121", "octahedron"])
def test_decomposition_properties(name):
    g = named(name)
    for forbidden in ("K5", "K33"):
        if not minor_free(g, forbidden):
            continue
        tree = wagner_decompose(g, forbidden)
        assert recompose(tree.root) == frozenset(underlying_simple(g).multiplicity)
        kmax = 3 if forbidden == "K5" else 2
        assert all(len(node.separator) <= kmax for node in tree.root.internal())
        assert not check_clique_sum_tree(g, tree)
        again = CliqueSumTree.from_json(tree.to_json())
        assert again.to_json() == tree.to_json()


def test_decomposition_on_random_graphs():
    rng = random.Random(11)
    done = 0
    while done < 40:
        g = random_simple_graph(rng.randint(5, 9), rng)
        for forbidden in ("K5", "K33"):
            if minor_free(g, forbidden):
                assert not check_clique_sum_tree(g, wagner_decompose(g, forbidden))
                done += 1


def test_tampered_tree_rejected():
    g = two_k4_on_a_triangle()
    tree = wagner_decompose(g, "K5").to_json()
    leaf = tree["root"]["children"][0]
    leaf["edges"] = leaf["edges"][1:]
    assert check_clique_sum_tree(g, CliqueSumTree.from_json(tree))
    bad = wagner_decompose(g, "K5").to_json()
    bad["root"]["children"][0]["kind"] = "wagner-V8"
    assert check_clique_sum_tree(g, CliqueSumTree.from_json(bad))


# -- splittable 3-cuts -------------------------------------------------------------


def test_splittable_three_cut_on_composite():
    g = named("v8-sum-fixture")
    found = find_splittable_three_cut(g)
    assert found is not None
    cut, aug = found
    assert len(cut.separator) == 3 and cut.component_count >= 3
    assert not has_k5_minor(aug)
    assert all(aug.mu(a, b) for a, b in combinations(sorted(cut.separator), 2))


@pytest.mark.parametrize("name", ["prism", "wagner-v8", "k5"])
def test_splittable_three_cut_preconditions(name):
    with pytest.raises(PreconditionViolation):
        find_splittable_three_cut(named(name))
