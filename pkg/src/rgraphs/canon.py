"""Canonical labelling of small multigraphs.

Colour refinement plus an individualisation search tree, in the style of
nauty.  Two kinds of pruning keep the tree small: a label-invariant hash of
each refined partition (subtrees whose invariant path is worse than the best
leaf are cut) and automorphisms discovered at equal leaves (children in one
orbit of the pointwise stabiliser of the current prefix are tried once).
"""

from __future__ import annotations

import hashlib
from functools import lru_cache
from typing import Sequence

from .multigraph import Multigraph

Certificate = tuple


def _refine(adj, colors):
    k = len(set(colors))
    while True:
        sigs = [(colors[v], tuple(sorted((colors[w], m) for w, m in nb))) for v, nb in enumerate(adj)]
        order = sorted(set(sigs))
        rank = {s: i for i, s in enumerate(order)}
        new = [rank[s] for s in sigs]
        if len(order) == k:
            return new, hash(tuple(order))
        colors, k = new, len(order)


def _leaf_code(edges, lab):
    return tuple(sorted((min(lab[u], lab[v]), max(lab[u], lab[v]), m) for u, v, m in edges))


def canonical_labeling(n: int, weighted_edges: Sequence[tuple[int, int, int]],
                       colors: Sequence[int] | None = None) -> tuple[Certificate, list[int]]:
    """Canonical certificate and labelling for a vertex-coloured weighted graph.

    ``weighted_edges`` holds ``(u, v, multiplicity)`` with each pair once.
    Returns ``(certificate, lab)`` where ``lab[v]`` is the canonical label of
    ``v``.  Two inputs are isomorphic (respecting colours and multiplicities)
    iff their certificates are equal.
    """
    adj: list[list[tuple[int, int]]] = [[] for _ in range(n)]
    for u, v, m in weighted_edges:
        adj[u].append((v, m))
        adj[v].append((u, m))
    init = list(colors) if colors is not None else [0] * n
    # colour values must be comparable across graphs, so keep them in the key
    palette = tuple(sorted(init))
    start, h0 = _refine(adj, init)

    best = None  # [path, code, lab]
    autos: list[list[int]] = []

    def orbit_root(parent, a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    def dfs(cols, path, prefix):
        nonlocal best
        if best is not None:
            bp = best[0][: len(path)]
            if path > bp:
                return
        ncol = max(cols) + 1 if cols else 0
        if ncol == n:
            code = _leaf_code(weighted_edges, cols)
            if best is None or (path, code) < (best[0], best[1]):
                best = [path, code, list(cols)]
            elif (path, code) == (best[0], best[1]):
                inv = [0] * n
                for v, c in enumerate(best[2]):
                    inv[c] = v
                autos.append([inv[cols[v]] for v in range(n)])
            return
        sizes = {}
        for c in cols:
            sizes[c] = sizes.get(c, 0) + 1
        target = min(c for c, s in sizes.items() if s > 1)
        cell = [v for v in range(n) if cols[v] == target]
        tried: list[int] = []
        for v in cell:
            if tried:
                gens = [g for g in autos if all(g[p] == p for p in prefix)]
                if gens:
                    parent = list(range(n))
                    for g in gens:
                        for a in range(n):
                            ra, rb = orbit_root(parent, a), orbit_root(parent, g[a])
                            if ra != rb:
                                parent[ra] = rb
                    rv = orbit_root(parent, v)
                    if any(orbit_root(parent, t) == rv for t in tried):
                        continue
            ind = [2 * c + (1 if c == target and w != v else 0) for w, c in enumerate(cols)]
            new, h = _refine(adj, ind)
            dfs(new, path + (h,), prefix + [v])
            tried.append(v)

    dfs(start, (h0,), [])
    return (n, palette, best[1]), best[2]


@lru_cache(maxsize=200_000)
def canonical_form(g: Multigraph) -> tuple[Certificate, tuple[int, ...]]:
    """Certificate and canonical labelling of a multigraph."""
    wedges = [(u, v, m) for (u, v), m in g.multiplicity.items()]
    cert, lab = canonical_labeling(g.n, wedges)
    return cert, tuple(lab)


def canonical_graph(g: Multigraph) -> Multigraph:
    """The representative of ``g``'s isomorphism class."""
    _, lab = canonical_form(g)
    return g.relabel(lab)[0]


def graph_digest(g: Multigraph) -> str:
    """Isomorphism-invariant sha256 digest."""
    cert, _ = canonical_form(g)
    return hashlib.sha256(repr(cert).encode()).hexdigest()
