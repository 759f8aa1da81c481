from itertools import combinations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oracles import class_one_via_factorization, perfect_matchings_brute
from rgraphs.census import regular_multigraphs
from rgraphs.errors import BudgetExceeded, InvalidArgument
from rgraphs.fixtures import complete, complete_bipartite, cycle, named, petersen, prism
from rgraphs.matching import (
    Matching,
    PMCover,
    cover_from_coloring,
    edge_color,
    enumerate_perfect_matchings,
    find_tr_pm,
    kempe_chain_at,
    kempe_chains,
    kempe_switch,
    make_matching,
)
from rgraphs.validate import check_edge_coloring, check_tr_pm, validate_tr_pm

FIXTURES = ["k4", "k33", "prism", "cube", "wagner-v8", "petersen", "c4-2121", "c4-doubled",
            "theta3", "octahedron", "mobius10"]


def _cover(t, r, sets):
    return PMCover(t, r, tuple(Matching(frozenset(s), True) for s in sets))


# -- enumeration ----------------------------------------------------------------


@pytest.mark.parametrize("name,count", [("petersen", 6), ("k4", 3), ("c4-doubled", 8)])
def test_perfect_matching_counts(name, count):
    g = named(name)
    pms = enumerate_perfect_matchings(g)
    assert len(pms) == count
    assert {m.edge_ids for m in pms} == set(perfect_matchings_brute(g))


@pytest.mark.parametrize("name", FIXTURES)
def test_enumeration_agrees_with_brute_force(name):
    g = named(name)
    assert sorted(m.key() for m in enumerate_perfect_matchings(g)) == \
        sorted(tuple(sorted(s)) for s in perfect_matchings_brute(g))


def _bipartite(g) -> bool:
    colour = {0: 0}
    stack = [0]
    while stack:
        x = stack.pop()
        for y in g.neighbors[x]:
            if y not in colour:
                colour[y] = 1 - colour[x]
                stack.append(y)
            elif colour[y] == colour[x]:
                return False
    return True


def test_bipartite_regular_graphs_have_perfect_matchings():
    bip = [g for g in regular_multigraphs(6, 3, 2) + regular_multigraphs(8, 3, 1) if _bipartite(g)]
    assert bip
    for g in bip:
        assert enumerate_perfect_matchings(g, limit=1)


# -- edge colouring -----------------------------------------------------------------


def test_petersen_is_class_two():
    assert edge_color(petersen(), 3) is None


@pytest.mark.parametrize("name", ["wagner-v8", "k33"])
def test_class_one_examples(name):
    g = named(name)
    col = edge_color(g, 3)
    assert col is not None and not check_edge_coloring(g, col.colors, 3)


@pytest.mark.parametrize("name", FIXTURES)
def test_colouring_agrees_with_factorization(name):
    g = named(name)
    r = g.degrees[0]
    assert (edge_color(g, r) is not None) == class_one_via_factorization(g, r)


def test_colouring_budget():
    with pytest.raises(BudgetExceeded):
        edge_color(petersen(), 3, budget=5)


# -- (t,r)-PM ---------------------------------------------------------------------


def test_petersen_t1_none_t2_all_six():
    g = petersen()
    assert find_tr_pm(g, 1, 3) is None
    cover = find_tr_pm(g, 2, 3)
    assert validate_tr_pm(g, cover)
    assert sorted(m.key() for m in cover.matchings) == sorted(m.key() for m in enumerate_perfect_matchings(g))


@pytest.mark.parametrize("name", FIXTURES)
@pytest.mark.parametrize("t", [1, 2, 3])
def test_found_covers_validate(name, t):
    g = named(name)
    r = g.degrees[0]
    cover = find_tr_pm(g, t, r)
    if cover is not None:
        assert validate_tr_pm(g, cover)
    if t == 1:
        assert (cover is not None) == (edge_color(g, r) is not None)


def test_class_one_covers_every_t():
    col = edge_color(prism(), 3)
    for t in (1, 2, 4):
        assert validate_tr_pm(prism(), cover_from_coloring(col, t))


def test_validator_examples():
    g = complete(4)
    pms = [m.edge_ids for m in enumerate_perfect_matchings(g)]
    assert validate_tr_pm(g, _cover(1, 3, pms))
    assert not validate_tr_pm(g, _cover(1, 3, [pms[0]] * 3))
    assert "not a matching" in " ".join(check_tr_pm(g, _cover(1, 3, [{0, 1}] + pms[1:])))
    assert check_tr_pm(g, _cover(1, 3, pms[:2]))
    assert check_tr_pm(g, _cover(1, 3, [{99}] + pms[1:]))


def test_validator_rejects_non_regular():
    g = cycle(4)
    g = g.add_edges([(0, 2)])[0]
    assert "regular" in " ".join(check_tr_pm(g, _cover(1, 2, [{0}, {1}])))


# -- Kempe chains ---------------------------------------------------------------


def test_c6_single_chain_swaps():
    g = cycle(6)
    pms = enumerate_perfect_matchings(g)
    assert len(pms) == 2
    chains = kempe_chains(g, pms[0], pms[1])
    assert len(chains) == 1 and chains[0].is_cycle and len(chains[0].edges) == 6
    a, b = kempe_switch(pms[0], pms[1], chains[0])
    assert (a, b) == (pms[1], pms[0])


def test_identical_matchings_have_no_chains():
    m = enumerate_perfect_matchings(petersen())[0]
    assert kempe_chains(petersen(), m, m) == []
    assert kempe_chain_at(petersen(), m, m, 0) is None


def test_petersen_chains_partition_symmetric_difference():
    g = petersen()
    pms = enumerate_perfect_matchings(g)
    for m1, m2 in combinations(pms, 2):
        chains = kempe_chains(g, m1, m2)
        union = set()
        for ch in chains:
            assert not union & ch.edges
            union |= ch.edges
            a, b = kempe_switch(m1, m2, ch)
            assert a.perfect and b.perfect
        assert union == m1.edge_ids ^ m2.edge_ids


def test_switch_rejects_foreign_chain():
    g = cycle(6)
    pms = enumerate_perfect_matchings(g)
    ch = kempe_chains(g, pms[0], pms[1])[0]
    with pytest.raises(InvalidArgument):
        kempe_switch(pms[0], pms[0], ch)


def test_make_matching_rejects_shared_vertex():
    with pytest.raises(InvalidArgument):
        make_matching(cycle(4), [0, 1])


@settings(max_examples=40)
@given(st.sampled_from(["petersen", "cube", "wagner-v8", "k33", "c4-doubled"]), st.data())
def test_switch_is_an_involution(name, data):
    g = named(name)
    pms = enumerate_perfect_matchings(g)
    m1 = data.draw(st.sampled_from(pms))
    # a partial matching as the second argument exercises paths, not just cycles
    m2 = data.draw(st.sampled_from(pms))
    keep = data.draw(st.sets(st.sampled_from(sorted(m2.edge_ids))))
    m2 = make_matching(g, keep)
    for ch in kempe_chains(g, m1, m2):
        a, b = kempe_switch(m1, m2, ch)
        covered = sorted(x for e in m1.edge_ids | m2.edge_ids for x in g.edges[e])
        assert sorted(x for e in a.edge_ids | b.edge_ids for x in g.edges[e]) == covered
        ch2 = kempe_chain_at(g, a, b, min(ch.vertices))
        assert ch2.edges == ch.edges
        assert kempe_switch(a, b, ch2) == (m1, m2)


def test_bipartite_colouring_for_k33_family():
    for a in (2, 3, 4):
        g = complete_bipartite(a, a)
        assert edge_color(g, a) is not None
