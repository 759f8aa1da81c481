"""Named graphs used throughout the tests, the CLI and the census."""

from __future__ import annotations

from itertools import combinations

from .multigraph import Multigraph


def complete(n: int) -> Multigraph:
    return Multigraph.from_edges(n, combinations(range(n), 2))


def complete_bipartite(a: int, b: int) -> Multigraph:
    return Multigraph.from_edges(a + b, [(i, a + j) for i in range(a) for j in range(b)])


def cycle(n: int, mult: int = 1) -> Multigraph:
    return Multigraph.from_edges(n, [(i, (i + 1) % n) for i in range(n) for _ in range(mult)])


def cycle_with_multiplicities(mults: list[int]) -> Multigraph:
    n = len(mults)
    pairs = []
    for i, k in enumerate(mults):
        pairs.extend([(i, (i + 1) % n)] * k)
    return Multigraph.from_edges(n, pairs)


def theta(k: int = 3) -> Multigraph:
    """Two vertices joined by ``k`` parallel edges."""
    return Multigraph.from_edges(2, [(0, 1)] * k)


def petersen() -> Multigraph:
    outer = [(i, (i + 1) % 5) for i in range(5)]
    spokes = [(i, i + 5) for i in range(5)]
    inner = [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    return Multigraph.from_edges(10, outer + spokes + inner)


def mobius_ladder(k: int) -> Multigraph:
    """Cycle on ``2k`` vertices plus the ``k`` long diagonals."""
    n = 2 * k
    return Multigraph.from_edges(n, [(i, (i + 1) % n) for i in range(n)] + [(i, i + k) for i in range(k)])


def wagner_v8() -> Multigraph:
    return mobius_ladder(4)


def prism(k: int = 3) -> Multigraph:
    """Circular ladder: two ``k``-cycles joined by a perfect matching."""
    top = [(i, (i + 1) % k) for i in range(k)]
    bot = [(k + i, k + (i + 1) % k) for i in range(k)]
    return Multigraph.from_edges(2 * k, top + bot + [(i, k + i) for i in range(k)])


def antiprism(k: int) -> Multigraph:
    """4-regular planar: two ``k``-cycles with zig-zag rungs."""
    top = [(i, (i + 1) % k) for i in range(k)]
    bot = [(k + i, k + (i + 1) % k) for i in range(k)]
    zig = [(i, k + i) for i in range(k)] + [(i, k + (i + 1) % k) for i in range(k)]
    return Multigraph.from_edges(2 * k, top + bot + zig)


def cube() -> Multigraph:
    return Multigraph.from_edges(8, [(a, a ^ (1 << b)) for a in range(8) for b in range(3) if a < a ^ (1 << b)])


def octahedron() -> Multigraph:
    return Multigraph.from_edges(6, [(a, b) for a, b in combinations(range(6), 2) if b - a != 3])


def dodecahedron() -> Multigraph:
    outer = [(i, (i + 1) % 5) for i in range(5)]
    spokes1 = [(i, 5 + 2 * i) for i in range(5)]
    middle = [(5 + i, 5 + (i + 1) % 10) for i in range(10)]
    spokes2 = [(6 + 2 * i, 15 + i) for i in range(5)]
    inner = [(15 + i, 15 + (i + 1) % 5) for i in range(5)]
    return Multigraph.from_edges(20, outer + spokes1 + middle + spokes2 + inner)


def truncated_tetrahedron() -> Multigraph:
    return truncate(complete(4), range(4))


def two_k4_bridge() -> Multigraph:
    """Cubic graph with a bridge: two K4s with one edge subdivided each, joined."""
    a = [(0, 2), (0, 3), (1, 2), (1, 3), (2, 3), (0, 4), (1, 4)]
    b = [(x + 5, y + 5) for x, y in a]
    return Multigraph.from_edges(10, a + b + [(4, 9)])


def add_perfect_matching(g: Multigraph, matching=None) -> Multigraph:
    """``g`` plus one extra parallel copy of every edge of a perfect matching.

    An r-graph plus a perfect matching is an (r+1)-graph.
    """
    if matching is None:
        from .matching import enumerate_perfect_matchings

        matching = enumerate_perfect_matchings(g, limit=1)[0].edge_ids
    return g.add_edges([g.edges[i] for i in sorted(matching)])[0]


def truncate(g: Multigraph, vertices) -> Multigraph:
    """Replace each listed vertex ``v`` of degree ``d`` by a ``d``-cycle.

    Each incident edge of ``v`` is reattached to its own cycle vertex; for
    cubic graphs this is the usual triangle truncation.
    """
    pairs = [list(e) for e in g.edges]
    n = g.n
    extra = []
    for v in vertices:
        inc = g.incident[v]
        ring = list(range(n, n + len(inc)))
        n += len(inc)
        for slot, eid in zip(ring, inc):
            a, b = pairs[eid]
            pairs[eid] = [slot if a == v else a, slot if b == v else b]
        if len(ring) == 2:
            extra.append((ring[0], ring[1]))
        else:
            extra.extend((ring[i], ring[(i + 1) % len(ring)]) for i in range(len(ring)))
    h = Multigraph.from_edges(n, [tuple(p) for p in pairs] + extra)
    # drop the now isolated original vertices
    keep = [x for x in range(h.n) if h.degrees[x] > 0]
    return h.induced(keep)[0]


def join_at_vertices(g: Multigraph, a: int, h: Multigraph, b: int, bijection=None) -> Multigraph:
    """Delete ``a`` from ``g`` and ``b`` from ``h`` and reconnect the dangling
    edges pairwise.  Both vertices must have the same degree.

    The dangling edges become a tight edge cut of the result.
    """
    ga = [g.other_end(e, a) for e in g.incident[a]]
    hb = [h.other_end(e, b) for e in h.incident[b]]
    if len(ga) != len(hb):
        raise ValueError("degrees differ")
    if bijection is not None:
        hb = [hb[i] for i in bijection]
    gmap = {v: i for i, v in enumerate(x for x in range(g.n) if x != a)}
    off = g.n - 1
    hmap = {v: off + i for i, v in enumerate(x for x in range(h.n) if x != b)}
    pairs = [(gmap[u], gmap[v]) for u, v in g.edges if a not in (u, v)]
    pairs += [(hmap[u], hmap[v]) for u, v in h.edges if b not in (u, v)]
    pairs += [(gmap[x], hmap[y]) for x, y in zip(ga, hb)]
    return Multigraph.from_edges(g.n + h.n - 2, pairs)


def c4_2121() -> Multigraph:
    """3-regular multigraph on C4 with multiplicities (2, 1, 2, 1)."""
    return cycle_with_multiplicities([2, 1, 2, 1])


def k5_free_three_cut_r6() -> Multigraph:
    """6-graph on 8 vertices that has no tight cut but a 3-vertex-cut
    ``{0, 1, 2}`` leaving one odd and two even components.

    Vertex 3 hangs on the separator with double edges; components ``{4, 5}``
    and ``{6, 7}`` each attach twice to every separator vertex.
    """
    mult = {
        (0, 3): 2, (1, 3): 2, (2, 3): 2,
        (4, 5): 3, (0, 4): 2, (1, 4): 1, (1, 5): 1, (2, 5): 2,
        (6, 7): 3, (1, 6): 2, (2, 6): 1, (2, 7): 1, (0, 7): 2,
    }
    return Multigraph.from_multiplicities(8, mult)


NAMED = {
    "petersen": petersen,
    "wagner-v8": wagner_v8,
    "k33": lambda: complete_bipartite(3, 3),
    "k4": lambda: complete(4),
    "k5": lambda: complete(5),
    "prism": prism,
    "cube": cube,
    "octahedron": octahedron,
    "dodecahedron": dodecahedron,
    "c4": lambda: cycle(4),
    "c4-doubled": lambda: cycle(4, 2),
    "c4-2121": c4_2121,
    "theta3": theta,
    "bridge-cubic": two_k4_bridge,
    "mobius10": lambda: mobius_ladder(5),
    "k33-truncated": lambda: truncate(complete_bipartite(3, 3), [0]),
    "v8-truncated": lambda: truncate(wagner_v8(), [0]),
    "v8-sum-fixture": k5_free_three_cut_r6,
}


def named(name: str) -> Multigraph:
    try:
        return NAMED[name]()
    except KeyError:
        raise KeyError(f"unknown fixture {name!r}; known: {', '.join(sorted(NAMED))}") from None


def _plus_pm(g: Multigraph) -> Multigraph:
    return add_perfect_matching(g)


def _planar_cubic() -> list[tuple[str, Multigraph]]:
    k4 = complete(4)
    return [
        ("k4", k4),
        ("prism", prism(3)),
        ("cube", cube()),
        ("prism5", prism(5)),
        ("prism6", prism(6)),
        ("truncated-tetrahedron", truncated_tetrahedron()),
        ("c4-2121", c4_2121()),
        ("theta3", theta(3)),
        ("cube-truncated", truncate(cube(), [0])),
        ("k4-join-prism", join_at_vertices(k4, 0, prism(3), 0)),
        ("dodecahedron", dodecahedron()),
    ]


def _k5free_cubic() -> list[tuple[str, Multigraph]]:
    k33 = complete_bipartite(3, 3)
    v8 = wagner_v8()
    return [
        ("k33", k33),
        ("wagner-v8", v8),
        ("k33-truncated", truncate(k33, [0])),
        ("k33-join-k4", join_at_vertices(k33, 0, complete(4), 0)),
        ("k33-join-k33", join_at_vertices(k33, 0, k33, 0)),
        ("k33-join-prism", join_at_vertices(k33, 0, prism(3), 0)),
        ("k33-join-cube", join_at_vertices(k33, 0, cube(), 0)),
        ("k33-join-c4-2121", join_at_vertices(k33, 0, c4_2121(), 0)),
        ("k33-truncated-same-side", truncate(k33, [0, 1])),
        ("k33-truncated-one-side", truncate(k33, [0, 1, 2])),
        ("k33-join-k33-twisted", join_at_vertices(k33, 0, k33, 0, [2, 0, 1])),
        ("k33-join-prism5", join_at_vertices(k33, 0, prism(5), 0)),
    ]


def _cr1_cubic() -> list[tuple[str, Multigraph]]:
    k33 = complete_bipartite(3, 3)
    v8 = wagner_v8()
    return [
        ("k33", k33),
        ("wagner-v8", v8),
        ("mobius10", mobius_ladder(5)),
        ("mobius12", mobius_ladder(6)),
        ("k33-truncated", truncate(k33, [0])),
        ("v8-truncated", truncate(v8, [0])),
        ("k33-join-k4", join_at_vertices(k33, 0, complete(4), 0)),
        ("v8-join-k4", join_at_vertices(v8, 0, complete(4), 0)),
        ("k33-join-prism", join_at_vertices(k33, 0, prism(3), 0)),
        ("mobius10-truncated", truncate(mobius_ladder(5), [0])),
        ("prism", prism(3)),
    ]


def reduction_fixtures(mode: str) -> list[tuple[str, Multigraph, int]]:
    """``(name, graph, r)`` triples for the reduction harness of ``mode``
    (``k5free``, ``k33free`` or ``cr1``), cubic graphs and their 4-regular
    versions with one extra perfect matching."""
    if mode == "k5free":
        base = _k5free_cubic() + _planar_cubic()[:4]
        extra = [("v8-sum-fixture", k5_free_three_cut_r6(), 6)]
    elif mode == "k33free":
        base = _planar_cubic()
        extra = [("octahedron", octahedron(), 4), ("antiprism5", antiprism(5), 4),
                 ("c4-doubled", cycle(4, 2), 4), ("k4-doubled", complete(4).add_edges(complete(4).edges)[0], 6)]
    elif mode == "cr1":
        base = _cr1_cubic()
        extra = [("c4-2121", c4_2121(), 3)]
    else:
        raise ValueError(f"unknown mode {mode!r}")
    out = [(name, g, 3) for name, g in base]
    out += [(name + "+pm", _plus_pm(g), 4) for name, g in base if name != "dodecahedron"]
    return out + extra
