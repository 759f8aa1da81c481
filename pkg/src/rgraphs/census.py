"""Isomorph-free generation of small regular multigraphs and simple graphs,
plus the class-1 census over the r-graphs among them."""

from __future__ import annotations

import random
from dataclasses import dataclass
from itertools import combinations

from .analysis import verify_r_graph
from .canon import canonical_labeling
from .matching import DEFAULT_BUDGET, edge_color, find_tr_pm
from .multigraph import Multigraph, is_connected


def _canon_key(n: int, mult: dict[tuple[int, int], int]):
    cert, lab = canonical_labeling(n, [(u, v, m) for (u, v), m in mult.items()])
    return cert, lab


def _canonical_multigraph(n: int, mult: dict[tuple[int, int], int]) -> tuple[tuple, Multigraph]:
    cert, lab = _canon_key(n, mult)
    relabelled = {}
    for (u, v), m in mult.items():
        a, b = sorted((lab[u], lab[v]))
        relabelled[(a, b)] = m
    return cert, Multigraph.from_multiplicities(n, relabelled)


def regular_multigraphs(n: int, r: int, max_mu: int = 1, connected: bool = True) -> list[Multigraph]:
    """All ``r``-regular loopless multigraphs on ``n`` vertices with edge
    multiplicity at most ``max_mu``, one per isomorphism class.

    Vertices are saturated in index order; a vertex that has not been touched
    yet may only be used if it is the lowest untouched one.  Output is sorted
    by canonical certificate so it is identical across runs.
    """
    if n * r % 2 or n < 1:
        return []
    if n == 1:
        return [Multigraph(1, ())] if r == 0 else []
    deg = [0] * n
    mult: dict[tuple[int, int], int] = {}
    found: dict[tuple, Multigraph] = {}

    def fill(v: int, w: int, touched: int):
        # saturate vertex v using partners w, w+1, ...
        if deg[v] == r:
            nxt = v + 1
            if nxt == n:
                g = Multigraph.from_multiplicities(n, mult)
                if not connected or is_connected(g):
                    cert, canon = _canonical_multigraph(n, mult)
                    found.setdefault(cert, canon)
                return
            if connected and touched <= nxt and nxt < n:
                return  # everything so far is saturated and closed off
            fill(nxt, nxt + 1, max(touched, nxt + 1))
            return
        if w >= n or w > touched:
            return
        need = r - deg[v]
        room = min(need, max_mu, r - deg[w])
        for k in range(room, -1, -1):
            if k:
                mult[(v, w)] = k
                deg[v] += k
                deg[w] += k
            fill(v, w + 1, max(touched, w + 1) if k else touched)
            if k:
                deg[v] -= k
                deg[w] -= k
                del mult[(v, w)]

    fill(0, 1, 1)
    return [found[c] for c in sorted(found)]


def _extend(n: int, base: list[tuple[int, ...]]) -> list[tuple[int, ...]]:
    """Graphs on ``n`` vertices (as sorted edge tuples) from those on ``n-1``."""
    seen = {}
    for edges in base:
        for size in range(n):
            for nb in combinations(range(n - 1), size):
                es = list(edges) + [(x, n - 1) for x in nb]
                cert, lab = canonical_labeling(n, [(u, v, 1) for u, v in es])
                if cert not in seen:
                    seen[cert] = tuple(sorted(tuple(sorted((lab[u], lab[v]))) for u, v in es))
    return [seen[c] for c in sorted(seen)]


def simple_graphs(max_n: int, connected: bool = True) -> dict[int, list[Multigraph]]:
    """All simple graphs with ``1..max_n`` vertices up to isomorphism, keyed
    by order.  Every graph on ``n`` vertices is a graph on ``n-1`` vertices
    plus one vertex, so each order is built from the previous one."""
    out: dict[int, list[Multigraph]] = {}
    level: list[tuple[int, ...]] = [()]
    for n in range(1, max_n + 1):
        if n > 1:
            level = _extend(n, level)
        gs = [Multigraph.from_edges(n, es) for es in level]
        out[n] = [g for g in gs if not connected or is_connected(g)]
    return out


def random_simple_graph(n: int, rng: random.Random, p: float | None = None) -> Multigraph:
    """Erdős-Rényi sample; ``p`` itself is drawn at random when omitted."""
    if p is None:
        p = rng.uniform(0.15, 0.7)
    return Multigraph.from_edges(n, [e for e in combinations(range(n), 2) if rng.random() < p])


@dataclass(frozen=True)
class CensusRow:
    n: int
    graph: Multigraph
    is_r_graph: bool
    class_one: bool | None
    has_2r_pm: bool | None

    def to_json(self, r: int) -> dict:
        from .graphio import format_graph

        return {"n": self.n, "r": r, "max_mu": self.graph.max_mu, "r_graph": self.is_r_graph,
                "class_one": self.class_one, "has_2r_pm": self.has_2r_pm,
                "graph": format_graph(self.graph)}


def census(r: int, max_n: int, max_mu: int = 1, budget: int | None = DEFAULT_BUDGET,
           pm_check: bool = True) -> list[CensusRow]:
    """Connected ``r``-regular multigraphs up to ``max_n`` vertices with their
    r-graph status, class-1 status and (2,r)-PM existence (r-graphs only)."""
    rows = []
    for n in range(2, max_n + 1):
        for g in regular_multigraphs(n, r, max_mu):
            ok = verify_r_graph(g, r).is_r_graph
            c1 = pm = None
            if ok:
                c1 = edge_color(g, r, budget) is not None
                pm = True if c1 else (find_tr_pm(g, 2, r, budget) is not None if pm_check else None)
            rows.append(CensusRow(n, g, ok, c1, pm))
    return rows
