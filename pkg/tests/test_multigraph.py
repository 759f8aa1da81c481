import random
from itertools import combinations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oracles import connected_nx, isomorphic_nx
from rgraphs.errors import GraphFormatError, InvalidArgument
from rgraphs.fixtures import complete, complete_bipartite, cycle, named, petersen, prism
from rgraphs.graphio import format_graph, parse_graph
from rgraphs.multigraph import (
    Multigraph,
    boundary,
    components,
    connectivity,
    contract,
    find_vertex_cuts,
    is_isomorphic_to,
    underlying_simple,
)


@st.composite
def multigraphs(draw, max_n=7, max_mu=3):
    n = draw(st.integers(1, max_n))
    pairs = []
    for u, v in combinations(range(n), 2):
        pairs += [(u, v)] * draw(st.integers(0, max_mu))
    return Multigraph.from_edges(n, pairs)


def shuffled(g: Multigraph, rng: random.Random) -> Multigraph:
    perm = list(range(g.n))
    rng.shuffle(perm)
    return Multigraph.from_edges(g.n, [(perm[u], perm[v]) for u, v in g.edges])


# -- value type ---------------------------------------------------------------


def test_edge_ids_follow_sorted_endpoints():
    g, perm = Multigraph.build(3, [(2, 1), (0, 1), (1, 0)])
    assert g.edges == ((0, 1), (0, 1), (1, 2))
    assert sorted(perm) == [0, 1, 2]
    assert g.edges[perm[0]] == (1, 2)


def test_loops_rejected():
    with pytest.raises(InvalidArgument):
        Multigraph.from_edges(2, [(1, 1)])


def test_multiplicity_recomputed():
    g = parse_graph("graph 3\n0 1 *3\n1 2\n")
    assert g.mu(0, 1) == 3 and g.mu(1, 0) == 3 and g.mu(0, 2) == 0
    assert g.max_mu == 3


@given(multigraphs())
def test_handshake(g):
    assert sum(g.degrees) == 2 * g.m


# -- cuts and contraction -----------------------------------------------------


def test_boundary_petersen_outer_cycle():
    assert boundary(petersen(), range(5)).size == 5


def test_boundary_singleton_is_degree():
    g = named("c4-2121")
    for v in g.vertices:
        assert boundary(g, [v]).size == g.degrees[v]


def test_boundary_prism_triangle_is_nontrivial_tight():
    cut = boundary(prism(), [0, 1, 2], r=3)
    assert cut.size == 3 and cut.nontrivial_tight


@pytest.mark.parametrize("side", [[], range(4)])
def test_boundary_rejects_trivial_sides(side):
    with pytest.raises(InvalidArgument):
        boundary(complete(4), side)


@settings(max_examples=60)
@given(st.integers(2, 10).filter(lambda n: n % 2 == 0), st.integers(0, 2**10), st.randoms())
def test_cut_parity_in_regular_graphs(n, mask, rng):
    # random 3-regular multigraph via a configuration model retry loop
    for _ in range(50):
        stubs = [v for v in range(n) for _ in range(3)]
        rng.shuffle(stubs)
        pairs = list(zip(stubs[::2], stubs[1::2]))
        if all(u != v for u, v in pairs):
            break
    else:
        return
    g = Multigraph.from_edges(n, pairs)
    x = [v for v in range(n) if mask >> v & 1]
    if 0 < len(x) < n:
        assert boundary(g, x).size % 2 == (3 * len(x)) % 2


def test_contract_prism_triangle_gives_k4():
    assert is_isomorphic_to(contract(prism(), [0, 1, 2]).graph, complete(4))


def test_contract_k4_adjacent_pair():
    con = contract(complete(4), [0, 1])
    assert con.graph.n == 3
    assert con.graph.degrees[con.w] == 4
    assert con.w == con.graph.n - 1


def test_contract_singleton_is_isomorphic():
    g = petersen()
    assert is_isomorphic_to(contract(g, [3]).graph, g)


@given(multigraphs(max_n=6), st.data())
def test_contract_edge_map_recovers_boundary(g, data):
    if g.n < 2:
        return
    x = data.draw(st.sets(st.integers(0, g.n - 1), min_size=1, max_size=g.n - 1))
    con = contract(g, x)
    at_w = {e for e, new in con.edge_map.items() if con.w in con.graph.edges[new]}
    assert at_w == set(boundary(g, x).boundary)
    assert con.graph.degrees[con.w] == boundary(g, x).size


# -- connectivity -------------------------------------------------------------


def test_prism_connectivity_three():
    assert connectivity(prism()) == 3


def test_k33_three_cut_colour_class():
    cuts = {c.separator: c for c in find_vertex_cuts(complete_bipartite(3, 3), 3)}
    c = cuts[frozenset({0, 1, 2})]
    assert c.component_count == 3 and c.component_parities == (1, 1, 1)


def test_two_disjoint_k4_components():
    g = Multigraph.from_edges(8, list(complete(4).edges) + [(u + 4, v + 4) for u, v in complete(4).edges])
    assert len(components(g)) == 2


def test_complete_graph_connectivity():
    assert connectivity(complete(5)) == 4


@given(multigraphs())
def test_components_partition_and_separate(g):
    comps = components(g)
    assert sorted(v for c in comps for v in c) == list(range(g.n))
    where = {v: i for i, c in enumerate(comps) for v in c}
    assert all(where[u] == where[v] for u, v in g.edges)
    assert (len(comps) == 1) == connected_nx(g)


@given(multigraphs(max_n=6))
def test_vertex_cuts_recount(g):
    for k in (1, 2):
        for cut in find_vertex_cuts(g, k):
            comps = components(g, cut.separator)
            assert len(comps) == cut.component_count >= 2
            assert sorted(len(c) % 2 for c in comps) == sorted(cut.component_parities)


# -- underlying graph and isomorphism ----------------------------------------


def test_underlying_simple_examples():
    assert underlying_simple(cycle(4, 2)) == cycle(4)
    assert underlying_simple(petersen()) == petersen()
    assert underlying_simple(named("theta3")) == complete(2)


def test_isomorphism_examples():
    assert not is_isomorphic_to(prism(), complete_bipartite(3, 3))
    c4b = Multigraph.from_edges(4, [(0, 2), (2, 1), (1, 3), (3, 0)])
    assert is_isomorphic_to(cycle(4), c4b)
    assert not is_isomorphic_to(cycle(4, 2), cycle(8))


def test_isomorphism_respects_multiplicity():
    a = Multigraph.from_edges(3, [(0, 1), (0, 1), (1, 2)])
    b = Multigraph.from_edges(3, [(0, 1), (1, 2), (1, 2)])
    c = Multigraph.from_edges(3, [(0, 1), (0, 2), (0, 2)])
    assert is_isomorphic_to(a, b) and is_isomorphic_to(a, c)
    assert not is_isomorphic_to(a, Multigraph.from_edges(3, [(0, 1), (1, 2), (0, 2)]))


@settings(max_examples=80)
@given(multigraphs(max_n=6, max_mu=2), multigraphs(max_n=6, max_mu=2), st.randoms())
def test_isomorphism_agrees_with_networkx(g, h, rng):
    assert is_isomorphic_to(g, shuffled(g, rng))
    assert is_isomorphic_to(g, h) == isomorphic_nx(g, h) == is_isomorphic_to(h, g)


def test_isomorphism_is_an_equivalence_on_a_pool():
    rng = random.Random(7)
    pool = []
    for _ in range(12):
        base = Multigraph.from_edges(5, [e for e in combinations(range(5), 2) if rng.random() < 0.5])
        pool += [base, shuffled(base, rng)]
    rel = {(i, j): is_isomorphic_to(a, b) for i, a in enumerate(pool) for j, b in enumerate(pool)}
    for i in range(len(pool)):
        assert rel[i, i]
    for i, j in rel:
        assert rel[i, j] == rel[j, i]
    for i, j, k in combinations(range(len(pool)), 3):
        if rel[i, j] and rel[j, k]:
            assert rel[i, k]


# -- text format -------------------------------------------------------------


def test_parse_comments_and_copies():
    g = parse_graph("# header comment\ngraph 3\n0 1  # first\n1 0\n1 2 *2\n")
    assert g.edges == ((0, 1), (0, 1), (1, 2), (1, 2))
    assert format_graph(g) == "graph 3\n0 1 *2\n1 2 *2\n"


@pytest.mark.parametrize("text", ["", "grph 3\n", "graph x\n", "graph 2\n0 2\n", "graph 2\n0 0\n",
                                  "graph 2\n0 1 2\n", "graph 2\n0 1 *0\n", "graph -1\n"])
def test_parse_errors(text):
    with pytest.raises(GraphFormatError):
        parse_graph(text)


@given(multigraphs())
def test_format_round_trip(g):
    text = format_graph(g)
    assert parse_graph(text) == g
    assert format_graph(parse_graph(text)) == text
