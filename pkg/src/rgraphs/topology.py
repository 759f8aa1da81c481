"""Planarity, K5 / K3,3 minors, crossing number at most one, and clique-sum
decompositions of K5- or K3,3-minor-free graphs.

Every routine works on the underlying simple graph.  Minor containment is
decided by an exact search that never consults the planarity test, so the
two can be checked against each other.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations

import networkx as nx

from .canon import canonical_labeling
from .errors import InternalDefect, PreconditionViolation
from .multigraph import (
    Multigraph,
    VertexCut,
    components,
    connectivity,
    is_isomorphic_to,
    underlying_simple,
    vertex_cut,
)

# -- planarity -------------------------------------------------------------------


def _nx(g: Multigraph) -> nx.Graph:
    h = nx.Graph()
    h.add_nodes_from(range(g.n))
    h.add_edges_from(g.multiplicity)
    return h


def is_planar(g: Multigraph) -> bool:
    """Planarity of the underlying simple graph (left-right criterion)."""
    if g.n <= 4:
        return True
    s = len(g.multiplicity)
    if g.n >= 3 and s > 3 * g.n - 6:
        return False
    return nx.check_planarity(_nx(g))[0]


# -- exact minor search ----------------------------------------------------------
#
# Graphs are tuples of adjacency bitmasks.  The search builds a model of the
# target one vertex at a time: a free vertex is merged into a free neighbour,
# fixed as a singleton branch set, or deleted.  Fixed vertices must already
# meet the target's degree and adjacency demands, which prunes hard.  With no
# vertex fixed, 0-, 1- and 2-separations are split off (both targets are
# 3-connected, so a model lives in one piece plus the virtual edge).


def _bits(m: int):
    while m:
        b = m & -m
        yield b.bit_length() - 1
        m ^= b


def _pop(m: int) -> int:
    return bin(m).count("1")


def _delete_vertex(adj: tuple[int, ...], v: int) -> tuple[int, ...]:
    low = (1 << v) - 1
    out = []
    for w, m in enumerate(adj):
        if w == v:
            continue
        m &= ~(1 << v)
        out.append((m & low) | ((m >> 1) & ~low))
    return tuple(out)


def _contract(adj: tuple[int, ...], u: int, v: int) -> tuple[int, ...]:
    """Merge ``v`` into ``u``."""
    lst = list(adj)
    merged = (lst[u] | lst[v]) & ~((1 << u) | (1 << v))
    lst[u] = merged
    for w in _bits(merged):
        lst[w] |= 1 << u
    return _delete_vertex(tuple(lst), v)


def _induced(adj: tuple[int, ...], mask: int, extra=()) -> tuple[int, ...]:
    vs = list(_bits(mask))
    pos = {v: i for i, v in enumerate(vs)}
    out = [0] * len(vs)
    for v in vs:
        for w in _bits(adj[v] & mask):
            out[pos[v]] |= 1 << pos[w]
    for a, b in extra:
        out[pos[a]] |= 1 << pos[b]
        out[pos[b]] |= 1 << pos[a]
    return tuple(out)


def _components_mask(adj: tuple[int, ...], alive: int) -> list[int]:
    comps = []
    rest = alive
    while rest:
        seed = rest & -rest
        comp = seed
        frontier = seed
        while frontier:
            nxt = 0
            for v in _bits(frontier):
                nxt |= adj[v]
            nxt &= alive & ~comp
            comp |= nxt
            frontier = nxt
        comps.append(comp)
        rest &= ~comp
    return comps


def _compress(mask: int, v: int) -> int:
    low = (1 << v) - 1
    mask &= ~(1 << v)
    return (mask & low) | ((mask >> 1) & ~low)


def _split(adj: tuple[int, ...]) -> list[tuple[int, ...]] | None:
    """Pieces of a 0-, 1- or 2-separation, or ``None`` if 3-connected."""
    n = len(adj)
    full = (1 << n) - 1
    comps = _components_mask(adj, full)
    if len(comps) > 1:
        return [_induced(adj, c) for c in comps]
    for v in range(n):
        alive = full & ~(1 << v)
        cs = _components_mask(adj, alive)
        if len(cs) > 1:
            return [_induced(adj, c | (1 << v)) for c in cs]
    for a, b in combinations(range(n), 2):
        alive = full & ~((1 << a) | (1 << b))
        cs = _components_mask(adj, alive)
        if len(cs) > 1:
            sep = (1 << a) | (1 << b)
            return [_induced(adj, c | sep, [(a, b)]) for c in cs]
    return None


def _edge_count(adj) -> int:
    return sum(_pop(m) for m in adj) // 2


def _has_k5_subgraph(adj) -> bool:
    def grow(clique: int, cand: int, size: int) -> bool:
        if size == 5:
            return True
        while cand:
            b = cand & -cand
            cand ^= b
            v = b.bit_length() - 1
            if grow(clique | b, cand & adj[v], size + 1):
                return True
        return False

    return grow(0, (1 << len(adj)) - 1, 0)


def _has_k33_subgraph(adj) -> bool:
    for a in combinations(range(len(adj)), 3):
        if _pop(adj[a[0]] & adj[a[1]] & adj[a[2]]) >= 3:
            return True
    return False


# target -> (vertices, edges, minimum degree, subgraph test)
_TARGETS = {
    "K5": (5, 10, 4, _has_k5_subgraph),
    "K33": (6, 9, 3, _has_k33_subgraph),
}

_MEMO: dict[str, dict] = {"K5": {}, "K33": {}}


def _cert(adj, fixed: int) -> tuple:
    edges = [(v, w, 1) for v, m in enumerate(adj) for w in _bits(m) if v < w]
    colors = [(fixed >> v) & 1 for v in range(len(adj))]
    return canonical_labeling(len(adj), edges, colors)[0]


def _reduce(adj: tuple[int, ...], fixed: int) -> tuple[tuple[int, ...], int]:
    """Drop free vertices of degree <= 1 and dissolve free degree-2 vertices.

    A free vertex of degree < 3 can never be a branch set on its own, so it is
    either unused or absorbed into a neighbouring branch set.
    """
    changed = True
    while changed:
        changed = False
        for v, m in enumerate(adj):
            if (fixed >> v) & 1:
                continue
            d = _pop(m)
            if d >= 3:
                continue
            free_nb = [w for w in _bits(m) if not (fixed >> w) & 1]
            if d == 2 and free_nb:
                adj = _contract(adj, free_nb[0], v)
            else:
                adj = _delete_vertex(adj, v)
            fixed = _compress(fixed, v)
            changed = True
            break
    return adj, fixed


def _feasible(adj, fixed: int, target: str) -> bool:
    nv, ne, delta, _ = _TARGETS[target]
    n = len(adj)
    nf = _pop(fixed)
    if n < nv or nf > nv or _edge_count(adj) < ne:
        return False
    free = ((1 << n) - 1) & ~fixed
    need = nv - nf
    if _pop(free) < need:
        return False
    for v in _bits(fixed):
        if _pop(adj[v]) < delta:
            return False
        others = fixed & ~(1 << v)
        if target == "K5":
            # singleton branch sets must touch every other branch set directly
            if others & ~adj[v] or _pop(adj[v] & free) < need:
                return False
        elif _pop(others & ~adj[v]) > 2:
            return False
    return True


def _search(adj: tuple[int, ...], fixed: int, target: str) -> bool:
    """Does ``adj`` have a ``target`` model in which every vertex of ``fixed``
    is a branch set of its own?"""
    adj, fixed = _reduce(adj, fixed)
    if not _feasible(adj, fixed, target):
        return False
    nv, _, delta, subgraph = _TARGETS[target]
    if subgraph(adj):
        return True
    if _pop(fixed) == nv:
        return False
    memo = _MEMO[target]
    key = _cert(adj, fixed)
    if key in memo:
        return memo[key]
    ans = False
    pieces = _split(adj) if fixed == 0 else None
    if pieces is not None:
        ans = any(_search(p, 0, target) for p in pieces)
    else:
        free = [v for v in range(len(adj)) if not (fixed >> v) & 1]
        v = min(free, key=lambda x: (_pop(adj[x]), x))
        # v joins a free neighbour's branch set, stays alone, or is unused
        for w in _bits(adj[v] & ~fixed):
            if _search(_contract(adj, w, v), _compress(fixed, v), target):
                ans = True
                break
        if not ans and _pop(adj[v]) >= delta:
            ans = _search(adj, fixed | (1 << v), target)
        if not ans:
            ans = _search(_delete_vertex(adj, v), _compress(fixed, v), target)
    memo[key] = ans
    return ans


def _has_minor(adj: tuple[int, ...], target: str) -> bool:
    return _search(adj, 0, target)


def _adj(g: Multigraph) -> tuple[int, ...]:
    adj = [0] * g.n
    for u, v in g.multiplicity:
        adj[u] |= 1 << v
        adj[v] |= 1 << u
    return tuple(adj)


def has_k5_minor(g: Multigraph) -> bool:
    return _has_minor(_adj(g), "K5")


def has_k33_minor(g: Multigraph) -> bool:
    return _has_minor(_adj(g), "K33")


def has_minor(g: Multigraph, forbidden: str) -> bool:
    return _has_minor(_adj(g), _norm_forbidden(forbidden))


def _norm_forbidden(forbidden: str) -> str:
    f = forbidden.upper().replace(",", "").replace("_", "")
    if f in ("K5",):
        return "K5"
    if f in ("K33", "K3.3"):
        return "K33"
    raise ValueError(f"unsupported minor {forbidden!r}")


def minor_free(g: Multigraph, forbidden: str) -> bool:
    """Minor-freeness with a planarity shortcut (planar graphs exclude both)."""
    return is_planar(g) or not has_minor(g, forbidden)


# -- crossing number at most one --------------------------------------------------


@dataclass(frozen=True)
class CrossingCertificate:
    verdict: str  # planar | one-crossing | more
    crossing_pair: tuple[int, int] | None = None
    endpoints: tuple[tuple[int, int], tuple[int, int]] | None = None

    def to_json(self) -> dict:
        return {"verdict": self.verdict,
                "crossing_pair": list(self.crossing_pair) if self.crossing_pair else None,
                "endpoints": [list(p) for p in self.endpoints] if self.endpoints else None}


def planarize(g: Multigraph, xy: tuple[int, int], uv: tuple[int, int]) -> Multigraph:
    """Underlying simple graph with edges ``xy`` and ``uv`` replaced by a
    degree-4 crossing vertex."""
    s = [e for e in underlying_simple(g).edges if e not in (tuple(sorted(xy)), tuple(sorted(uv)))]
    c = g.n
    return Multigraph.from_edges(g.n + 1, s + [(xy[0], c), (xy[1], c), (uv[0], c), (uv[1], c)])


def crossing_pairs(g: Multigraph) -> list[tuple[tuple[int, int], tuple[int, int]]]:
    """All pairs of independent simple edges whose planarization is planar."""
    simple = sorted(g.multiplicity)
    out = []
    for a, b in combinations(simple, 2):
        if set(a) & set(b):
            continue
        if is_planar(planarize(g, a, b)):
            out.append((a, b))
    return out


def crossing_at_most_one(g: Multigraph) -> CrossingCertificate:
    if is_planar(g):
        return CrossingCertificate("planar")
    simple = sorted(g.multiplicity)
    for a, b in combinations(simple, 2):
        if set(a) & set(b):
            continue
        if is_planar(planarize(g, a, b)):
            return CrossingCertificate("one-crossing", (g.edges_between(*a)[0], g.edges_between(*b)[0]), (a, b))
    return CrossingCertificate("more")


# -- clique-sum decomposition -----------------------------------------------------


@dataclass
class CliqueSumNode:
    """A piece of the decomposition, on original vertex labels.

    Leaves carry ``kind`` planar / wagner-V8 / K5.  Internal nodes record the
    pasted separator and the clique edges that were added to both children
    but are absent from this piece.
    """

    vertices: tuple[int, ...]
    edges: frozenset[tuple[int, int]]
    kind: str
    separator: tuple[int, ...] = ()
    virtual: frozenset[tuple[int, int]] = frozenset()
    children: list["CliqueSumNode"] = field(default_factory=list)

    def leaves(self):
        if not self.children:
            yield self
        for c in self.children:
            yield from c.leaves()

    def internal(self):
        if self.children:
            yield self
            for c in self.children:
                yield from c.internal()

    def graph(self) -> Multigraph:
        pos = {v: i for i, v in enumerate(self.vertices)}
        return Multigraph.from_edges(len(self.vertices), [(pos[a], pos[b]) for a, b in self.edges])

    def to_json(self) -> dict:
        return {
            "vertices": list(self.vertices),
            "edges": [list(e) for e in sorted(self.edges)],
            "kind": self.kind,
            "separator": list(self.separator),
            "virtual": [list(e) for e in sorted(self.virtual)],
            "children": [c.to_json() for c in self.children],
        }

    @classmethod
    def from_json(cls, d: dict) -> "CliqueSumNode":
        return cls(tuple(d["vertices"]), frozenset(tuple(e) for e in d["edges"]), d["kind"],
                   tuple(d["separator"]), frozenset(tuple(e) for e in d["virtual"]),
                   [cls.from_json(c) for c in d["children"]])


@dataclass
class CliqueSumTree:
    root: CliqueSumNode
    forbidden: str
    n: int

    def to_json(self) -> dict:
        return {"forbidden": self.forbidden, "n": self.n, "root": self.root.to_json()}

    @classmethod
    def from_json(cls, d: dict) -> "CliqueSumTree":
        return cls(CliqueSumNode.from_json(d["root"]), d["forbidden"], int(d["n"]))


def recompose(node: CliqueSumNode) -> frozenset[tuple[int, int]]:
    """Paste the children back together and drop this split's virtual edges."""
    if not node.children:
        return node.edges
    out: set[tuple[int, int]] = set()
    for c in node.children:
        out |= recompose(c)
    return frozenset(out - node.virtual)


def _wagner_v8() -> Multigraph:
    return Multigraph.from_edges(8, [(i, (i + 1) % 8) for i in range(8)] + [(i, i + 4) for i in range(4)])


def _k5() -> Multigraph:
    return Multigraph.from_edges(5, combinations(range(5), 2))


def _leaf_kind(piece: Multigraph, forbidden: str) -> str | None:
    if forbidden == "K5" and piece.n == 8 and is_isomorphic_to(piece, _wagner_v8()):
        return "wagner-V8"
    if forbidden == "K33" and piece.n == 5 and is_isomorphic_to(piece, _k5()):
        return "K5"
    if is_planar(piece):
        return "planar"
    return None


def _piece_graph(vertices, edges) -> Multigraph:
    pos = {v: i for i, v in enumerate(vertices)}
    return Multigraph.from_edges(len(vertices), [(pos[a], pos[b]) for a, b in edges])


def _omega(vertices, edges, removed) -> int:
    g = _piece_graph(vertices, edges)
    pos = {v: i for i, v in enumerate(vertices)}
    return len(components(g, [pos[x] for x in removed]))


def _check_component_lemma(parent_vs, parent_edges, child_vs, child_edges, separator):
    """omega(G_i - S) <= omega(G - S) for the separator and all small S."""
    pieces = [tuple(separator)] + [(v,) for v in child_vs] + list(combinations(child_vs, 2))
    for s in pieces:
        if _omega(child_vs, child_edges, s) > _omega(parent_vs, parent_edges, s):
            raise InternalDefect(f"component lemma fails at S={s}")


def _decompose(vertices: tuple[int, ...], edges: frozenset, forbidden: str) -> CliqueSumNode:
    piece = _piece_graph(vertices, edges)
    kind = _leaf_kind(piece, forbidden)
    if kind is not None and kind != "planar":
        return CliqueSumNode(vertices, edges, kind)
    kmax = 3 if forbidden == "K5" else 2
    connected = len(components(piece)) == 1
    for k in range(kmax + 1):
        for sidx in combinations(range(piece.n), k):
            comps = components(piece, sidx)
            if len(comps) < 2:
                continue
            sep = tuple(vertices[i] for i in sidx)
            first = frozenset(vertices[i] for i in comps[0])
            clique = frozenset(combinations(sep, 2))
            virtual = clique - edges
            side_a = tuple(sorted(first | set(sep)))
            side_b = tuple(sorted(set(vertices) - first))
            ea = frozenset(e for e in edges if e[0] in side_a and e[1] in side_a) | clique
            eb = frozenset(e for e in edges if e[0] in side_b and e[1] in side_b) | clique
            ga, gb = _piece_graph(side_a, ea), _piece_graph(side_b, eb)
            if not (minor_free(ga, forbidden) and minor_free(gb, forbidden)):
                continue
            if connected:
                _check_component_lemma(vertices, edges, side_a, ea, sep)
                _check_component_lemma(vertices, edges, side_b, eb, sep)
            children = [_decompose(side_a, ea, forbidden), _decompose(side_b, eb, forbidden)]
            return CliqueSumNode(vertices, edges, "internal", sep, virtual, children)
    if kind == "planar":
        return CliqueSumNode(vertices, edges, kind)
    raise PreconditionViolation(f"piece on {len(vertices)} vertices admits no valid split; "
                                f"the graph is not {forbidden}-minor-free", piece)


def wagner_decompose(g: Multigraph, forbidden: str = "K5") -> CliqueSumTree:
    """Split ``G_s`` along separators of size <= 3 (K5) or <= 2 (K3,3) into
    planar pieces and V8 (resp. K5) pieces, smallest separators first.

    A piece is split whenever some separator gives two minor-free halves;
    V8 and K5 pieces are kept whole.  Leaves are therefore pieces without a
    usable separator.
    """
    f = _norm_forbidden(forbidden)
    if not minor_free(g, f):
        raise PreconditionViolation(f"graph has a {f} minor", g)
    root = _decompose(tuple(range(g.n)), frozenset(g.multiplicity), f)
    return CliqueSumTree(root, f, g.n)


def check_clique_sum_tree(g: Multigraph, tree: CliqueSumTree) -> list[str]:
    """Re-verify a decomposition: recomposition and every leaf tag."""
    reasons = []
    if recompose(tree.root) != frozenset(g.multiplicity):
        reasons.append("recomposition does not reproduce the graph")
    kmax = 3 if tree.forbidden == "K5" else 2
    for node in tree.root.internal():
        if len(node.separator) > kmax:
            reasons.append(f"separator {node.separator} too large")
        for c in node.children:
            if not set(node.separator) <= set(c.vertices):
                reasons.append("child misses the separator")
            if not frozenset(combinations(node.separator, 2)) <= c.edges:
                reasons.append("separator is not a clique in a child")
    for leaf in tree.root.leaves():
        g_leaf = leaf.graph()
        if leaf.kind == "planar":
            ok = is_planar(g_leaf)
        elif leaf.kind == "wagner-V8":
            ok = is_isomorphic_to(g_leaf, _wagner_v8())
        elif leaf.kind == "K5":
            ok = is_isomorphic_to(g_leaf, _k5())
        else:
            ok = False
        if not ok:
            reasons.append(f"leaf tagged {leaf.kind} fails its check")
    return reasons


# -- 3-cuts with a K5-minor-free triangle augmentation ----------------------------


def find_splittable_three_cut(g: Multigraph) -> tuple[VertexCut, Multigraph] | None:
    """A 3-cut ``S`` with at least three components such that ``G_s`` plus
    the triangle on ``S`` stays K5-minor-free, or ``None``."""
    s = underlying_simple(g)
    if connectivity(s) < 3:
        raise PreconditionViolation("underlying graph is not 3-connected")
    if is_planar(s):
        raise PreconditionViolation("underlying graph is planar")
    if s.n == 8 and is_isomorphic_to(s, _wagner_v8()):
        raise PreconditionViolation("underlying graph is the Wagner graph")
    if has_k5_minor(s):
        raise PreconditionViolation("underlying graph has a K5 minor")
    for sep in combinations(range(g.n), 3):
        vc = vertex_cut(s, sep)
        if vc.component_count < 3:
            continue
        aug = s.add_edges([p for p in combinations(sep, 2) if s.mu(*p) == 0])[0]
        if has_k5_minor(aug):
            continue
        return vc, aug
    return None
