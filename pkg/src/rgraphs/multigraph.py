"""Loop-free multigraphs with identified parallel edges.

A :class:`Multigraph` is an immutable value.  Vertices are ``0..n-1``; edge
``i`` is ``edges[i]``, a pair ``(u, v)`` with ``u < v``.  Edge ids are always
canonical: the edge list is sorted by endpoint pair, and parallel copies keep
the relative order they were created in.  Every operation that changes the
edge set returns the new graph together with an explicit id mapping.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from functools import cached_property
from itertools import combinations
from typing import Iterable, Sequence

from .errors import InvalidArgument


@dataclass(frozen=True)
class Multigraph:
    n: int
    edges: tuple[tuple[int, int], ...]

    def __post_init__(self):
        if self.n < 0:
            raise InvalidArgument("negative vertex count")
        prev = (-1, -1)
        for u, v in self.edges:
            if u == v:
                raise InvalidArgument(f"loop at vertex {u}")
            if not (0 <= u < v < self.n):
                raise InvalidArgument(f"edge ({u}, {v}) is not canonical for n={self.n}")
            if (u, v) < prev:
                raise InvalidArgument("edge list is not in canonical order")
            prev = (u, v)

    # -- construction -----------------------------------------------------

    @classmethod
    def build(cls, n: int, pairs: Iterable[Sequence[int]]) -> tuple["Multigraph", list[int]]:
        """Build a graph from arbitrary endpoint pairs.

        Returns the graph and ``perm`` with ``perm[i]`` the canonical id given
        to the ``i``-th input pair.
        """
        norm = []
        for i, (u, v) in enumerate(pairs):
            u, v = int(u), int(v)
            if u == v:
                raise InvalidArgument(f"loop at vertex {u}")
            if not (0 <= u < n and 0 <= v < n):
                raise InvalidArgument(f"edge ({u}, {v}) out of range for n={n}")
            norm.append((min(u, v), max(u, v), i))
        norm.sort()
        perm = [0] * len(norm)
        for new_id, (_, _, old) in enumerate(norm):
            perm[old] = new_id
        return cls(n, tuple((u, v) for u, v, _ in norm)), perm

    @classmethod
    def from_edges(cls, n: int, pairs: Iterable[Sequence[int]]) -> "Multigraph":
        return cls.build(n, pairs)[0]

    @classmethod
    def from_multiplicities(cls, n: int, mult: dict[tuple[int, int], int]) -> "Multigraph":
        pairs = []
        for (u, v), k in mult.items():
            pairs.extend([(u, v)] * k)
        return cls.from_edges(n, pairs)

    # -- basic views ------------------------------------------------------

    @property
    def m(self) -> int:
        return len(self.edges)

    @property
    def vertices(self) -> range:
        return range(self.n)

    @cached_property
    def incident(self) -> tuple[tuple[int, ...], ...]:
        """Edge ids incident to each vertex, in id order."""
        inc: list[list[int]] = [[] for _ in range(self.n)]
        for i, (u, v) in enumerate(self.edges):
            inc[u].append(i)
            inc[v].append(i)
        return tuple(tuple(x) for x in inc)

    @cached_property
    def degrees(self) -> tuple[int, ...]:
        return tuple(len(x) for x in self.incident)

    @cached_property
    def multiplicity(self) -> dict[tuple[int, int], int]:
        return dict(Counter(self.edges))

    def mu(self, u: int, v: int) -> int:
        """Number of parallel edges joining ``u`` and ``v``."""
        if u > v:
            u, v = v, u
        return self.multiplicity.get((u, v), 0)

    @property
    def max_mu(self) -> int:
        return max(self.multiplicity.values(), default=0)

    def edges_between(self, u: int, v: int) -> list[int]:
        if u > v:
            u, v = v, u
        return [i for i in self.incident[u] if self.edges[i] == (u, v)]

    @cached_property
    def neighbors(self) -> tuple[frozenset[int], ...]:
        nb: list[set[int]] = [set() for _ in range(self.n)]
        for u, v in self.edges:
            nb[u].add(v)
            nb[v].add(u)
        return tuple(frozenset(s) for s in nb)

    def other_end(self, edge_id: int, v: int) -> int:
        a, b = self.edges[edge_id]
        return b if a == v else a

    def is_regular(self, r: int | None = None) -> bool:
        if self.n == 0:
            return True
        d = self.degrees[0] if r is None else r
        return all(x == d for x in self.degrees)

    @property
    def is_simple(self) -> bool:
        return self.max_mu <= 1

    # -- derived graphs ---------------------------------------------------

    def add_edges(self, pairs: Iterable[Sequence[int]]) -> tuple["Multigraph", list[int], list[int]]:
        """Add edges; returns (graph, old-id mapping, ids of the added edges)."""
        pairs = list(pairs)
        g, perm = Multigraph.build(self.n, list(self.edges) + pairs)
        return g, perm[: self.m], perm[self.m:]

    def remove_edges(self, ids: Iterable[int]) -> tuple["Multigraph", dict[int, int]]:
        """Delete the given edge ids; mapping sends surviving old ids to new ids."""
        drop = set(ids)
        keep = [i for i in range(self.m) if i not in drop]
        g = Multigraph(self.n, tuple(self.edges[i] for i in keep))
        return g, {old: new for new, old in enumerate(keep)}

    def induced(self, vertices: Iterable[int]) -> tuple["Multigraph", list[int], dict[int, int]]:
        """Induced subgraph relabelled to ``0..k-1`` in increasing order.

        Returns (graph, new->old vertex list, old->new edge id mapping).
        """
        vs = sorted(set(vertices))
        pos = {v: i for i, v in enumerate(vs)}
        keep = [i for i, (u, v) in enumerate(self.edges) if u in pos and v in pos]
        g, perm = Multigraph.build(len(vs), [(pos[self.edges[i][0]], pos[self.edges[i][1]]) for i in keep])
        return g, vs, {old: perm[k] for k, old in enumerate(keep)}

    def relabel(self, perm: Sequence[int]) -> tuple["Multigraph", list[int]]:
        """Rename vertex ``v`` to ``perm[v]``; returns (graph, old->new edge ids)."""
        return Multigraph.build(self.n, [(perm[u], perm[v]) for u, v in self.edges])

    def __repr__(self) -> str:
        return f"Multigraph(n={self.n}, m={self.m})"


def _check_subset(g: Multigraph, x: Iterable[int]) -> frozenset[int]:
    xs = frozenset(int(v) for v in x)
    if not xs or len(xs) >= g.n:
        raise InvalidArgument("vertex subset must be non-empty and proper")
    if any(not (0 <= v < g.n) for v in xs):
        raise InvalidArgument("vertex subset contains an unknown vertex")
    return xs


@dataclass(frozen=True)
class EdgeCut:
    """A vertex side ``X`` with its boundary edge ids.

    ``nontrivial_tight`` is ``None`` when no ambient ``r`` is known.
    """

    side: frozenset[int]
    boundary: frozenset[int]
    side_parity: int
    nontrivial_tight: bool | None = None

    @property
    def size(self) -> int:
        return len(self.boundary)


@dataclass(frozen=True)
class VertexCut:
    separator: frozenset[int]
    component_count: int
    component_parities: tuple[int, ...]
    components: tuple[frozenset[int], ...] = ()


def boundary(g: Multigraph, x: Iterable[int], r: int | None = None) -> EdgeCut:
    """The edge cut ``∂(X)``.

    Tightness is judged against ``r`` when given, otherwise against the common
    degree when ``g`` is regular.
    """
    xs = _check_subset(g, x)
    bd = frozenset(i for i, (u, v) in enumerate(g.edges) if (u in xs) != (v in xs))
    if r is None and g.is_regular():
        r = g.degrees[0] if g.n else None
    tight = None
    if r is not None:
        tight = len(xs) % 2 == 1 and len(bd) == r and len(xs) > 1 and g.n - len(xs) > 1
    return EdgeCut(xs, bd, len(xs) % 2, tight)


@dataclass(frozen=True)
class Contraction:
    graph: Multigraph
    vertex_map: tuple[int, ...]
    edge_map: dict[int, int]

    @property
    def w(self) -> int:
        return self.graph.n - 1


def contract(g: Multigraph, x: Iterable[int]) -> Contraction:
    """``G/X``: identify ``X`` to a new vertex ``w_X`` and drop the loops.

    Vertices outside ``X`` keep their relative order; ``w_X`` is the last
    vertex.  ``edge_map`` sends every surviving old edge id to its new id.
    """
    xs = _check_subset(g, x)
    outside = [v for v in range(g.n) if v not in xs]
    w = len(outside)
    vmap = [w] * g.n
    for i, v in enumerate(outside):
        vmap[v] = i
    keep = [i for i, (u, v) in enumerate(g.edges) if not (u in xs and v in xs)]
    h, perm = Multigraph.build(w + 1, [(vmap[g.edges[i][0]], vmap[g.edges[i][1]]) for i in keep])
    return Contraction(h, tuple(vmap), {old: perm[k] for k, old in enumerate(keep)})


def components(g: Multigraph, removed: Iterable[int] = ()) -> list[frozenset[int]]:
    """Connected components of ``g - removed``, ordered by least vertex."""
    gone = set(removed)
    seen = set(gone)
    out = []
    for s in range(g.n):
        if s in seen:
            continue
        comp = {s}
        seen.add(s)
        stack = [s]
        while stack:
            a = stack.pop()
            for b in g.neighbors[a]:
                if b not in seen:
                    seen.add(b)
                    comp.add(b)
                    stack.append(b)
        out.append(frozenset(comp))
    return out


def is_connected(g: Multigraph) -> bool:
    return len(components(g)) <= 1


def vertex_cut(g: Multigraph, s: Iterable[int]) -> VertexCut:
    sep = frozenset(s)
    comps = components(g, sep)
    return VertexCut(sep, len(comps), tuple(len(c) % 2 for c in comps), tuple(comps))


def find_vertex_cuts(g: Multigraph, k: int) -> list[VertexCut]:
    """All separators of size exactly ``k``, found by trying every subset.

    A separator is a set whose removal increases the number of components.
    """
    if k > 3:
        raise InvalidArgument("find_vertex_cuts supports k <= 3")
    base = len(components(g))
    out = []
    for s in combinations(range(g.n), k):
        vc = vertex_cut(g, s)
        if vc.component_count > base:
            out.append(vc)
    return out


def connectivity(g: Multigraph) -> int:
    """Vertex connectivity of the underlying simple graph.

    Complete underlying graphs get ``n - 1``; disconnected graphs get 0.
    """
    if g.n <= 1:
        return 0
    if not is_connected(g):
        return 0
    for k in range(1, g.n - 1):
        for s in combinations(range(g.n), k):
            if len(components(g, s)) > 1:
                return k
    return g.n - 1


def underlying_simple(g: Multigraph) -> Multigraph:
    return Multigraph(g.n, tuple(sorted(g.multiplicity)))


def is_isomorphic_to(g: Multigraph, h: Multigraph) -> bool:
    """Multigraph isomorphism, respecting edge multiplicities."""
    from .canon import canonical_form

    if g.n != h.n or g.m != h.m or sorted(g.degrees) != sorted(h.degrees):
        return False
    return canonical_form(g)[0] == canonical_form(h)[0]
