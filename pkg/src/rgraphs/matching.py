"""Perfect matchings, exact edge colouring, (t,r)-PM search and Kempe chains."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable

from .errors import BudgetExceeded, InvalidArgument, PreconditionViolation
from .multigraph import Multigraph, underlying_simple

DEFAULT_BUDGET = 5_000_000


@dataclass(frozen=True)
class Matching:
    edge_ids: frozenset[int]
    perfect: bool

    def key(self) -> tuple[int, ...]:
        return tuple(sorted(self.edge_ids))

    def __len__(self) -> int:
        return len(self.edge_ids)

    def __contains__(self, e: int) -> bool:
        return e in self.edge_ids


def make_matching(g: Multigraph, ids: Iterable[int]) -> Matching:
    ids = frozenset(ids)
    seen: set[int] = set()
    for e in ids:
        if not (0 <= e < g.m):
            raise InvalidArgument(f"edge id {e} out of range")
        u, v = g.edges[e]
        if u in seen or v in seen:
            raise InvalidArgument("edges share a vertex")
        seen.update((u, v))
    return Matching(ids, len(seen) == g.n)


@dataclass(frozen=True)
class PMCover:
    t: int
    r: int
    matchings: tuple[Matching, ...]

    def to_json(self) -> dict:
        return {"t": self.t, "r": self.r, "matchings": [list(m.key()) for m in self.matchings]}

    @classmethod
    def from_json(cls, data: dict) -> "PMCover":
        # perfect flag is recomputed by whoever validates against a graph
        return cls(int(data["t"]), int(data["r"]),
                   tuple(Matching(frozenset(int(e) for e in m), True) for m in data["matchings"]))

    def sorted(self) -> "PMCover":
        return PMCover(self.t, self.r, tuple(sorted(self.matchings, key=Matching.key)))


@dataclass(frozen=True)
class EdgeColoring:
    colors: tuple[int, ...]
    k: int

    def classes(self) -> list[frozenset[int]]:
        out: list[set[int]] = [set() for _ in range(self.k)]
        for e, c in enumerate(self.colors):
            out[c].add(e)
        return [frozenset(c) for c in out]


# -- perfect matchings ------------------------------------------------------------


def enumerate_perfect_matchings(g: Multigraph, limit: int | None = None) -> list[Matching]:
    """All perfect matchings (as edge-id sets), sorted by their id tuples.

    Parallel edges give distinct matchings.
    """
    if g.n % 2 == 1:
        return []
    if g.n == 0:
        return [Matching(frozenset(), True)]
    covered = [False] * g.n
    chosen: list[int] = []
    out: list[Matching] = []

    def rec(start: int) -> bool:
        v = start
        while v < g.n and covered[v]:
            v += 1
        if v == g.n:
            out.append(Matching(frozenset(chosen), True))
            return limit is not None and len(out) >= limit
        covered[v] = True
        for e in g.incident[v]:
            w = g.other_end(e, v)
            if covered[w]:
                continue
            covered[w] = True
            chosen.append(e)
            stop = rec(v + 1)
            chosen.pop()
            covered[w] = False
            if stop:
                covered[v] = False
                return True
        covered[v] = False
        return False

    rec(0)
    out.sort(key=Matching.key)
    return out


# -- edge colouring ---------------------------------------------------------------


def edge_color(g: Multigraph, k: int, budget: int | None = DEFAULT_BUDGET) -> EdgeColoring | None:
    """Exact proper ``k``-edge-colouring search, or ``None`` if none exists.

    Next edge: fewest admissible colours (lowest id on ties).  A colour that
    has never been used may only be the next fresh index, which removes the
    ``k!`` colour permutations from the search.
    """
    if k < 1:
        raise InvalidArgument("k must be positive")
    if g.m == 0:
        return EdgeColoring((), k)
    if max(g.degrees) > k:
        return None
    full = (1 << k) - 1
    used = [0] * g.n
    color = [-1] * g.m
    nodes = 0
    top = -1  # highest colour index in use

    def admissible(e):
        u, v = g.edges[e]
        free = full & ~(used[u] | used[v])
        limit = min(top + 1, k - 1)
        return free & ((1 << (limit + 1)) - 1)

    def rec(remaining: int) -> bool:
        nonlocal nodes, top
        if remaining == 0:
            return True
        nodes += 1
        if budget is not None and nodes > budget:
            raise BudgetExceeded(f"edge colouring exceeded {budget} nodes")
        best_e, best_mask, best_cnt = -1, 0, k + 1
        for e in range(g.m):
            if color[e] >= 0:
                continue
            mask = admissible(e)
            cnt = bin(mask).count("1")
            if cnt < best_cnt:
                best_e, best_mask, best_cnt = e, mask, cnt
                if cnt <= 1:
                    break
        if best_cnt == 0:
            return False
        u, v = g.edges[best_e]
        mask = best_mask
        while mask:
            bit = mask & -mask
            mask ^= bit
            c = bit.bit_length() - 1
            old_top = top
            top = max(top, c)
            color[best_e] = c
            used[u] |= bit
            used[v] |= bit
            if rec(remaining - 1):
                return True
            used[u] ^= bit
            used[v] ^= bit
            color[best_e] = -1
            top = old_top
        return False

    if rec(g.m):
        return EdgeColoring(tuple(color), k)
    return None


def is_class_one(g: Multigraph, budget: int | None = DEFAULT_BUDGET) -> bool:
    return edge_color(g, max(g.degrees, default=0), budget) is not None


def cover_from_coloring(col: EdgeColoring, t: int) -> PMCover:
    """Repeat every colour class ``t`` times."""
    ms = []
    for cls in col.classes():
        ms.extend([Matching(cls, True)] * t)
    return PMCover(t, col.k, tuple(ms)).sorted()


# -- (t,r)-PM search --------------------------------------------------------------


def solve_cover_counts(columns: list[frozenset[int]], demand: list[int], budget: int | None = DEFAULT_BUDGET):
    """Non-negative integer multiplicities ``x`` with ``sum x_c [e in c] = demand[e]``.

    Binary branching on the lowest-index fitting column of the most
    constrained edge: use it once more, or ban it for the rest of the branch.
    Returns the multiplicity list or ``None``.
    """
    m = len(demand)
    res = list(demand)
    ncol = len(columns)
    col_edges = [sorted(c) for c in columns]
    by_edge: list[list[int]] = [[] for _ in range(m)]
    for ci, c in enumerate(col_edges):
        for e in c:
            by_edge[e].append(ci)
    banned = [False] * ncol
    mult = [0] * ncol
    nodes = 0

    def cap(ci):
        return min(res[e] for e in col_edges[ci]) if col_edges[ci] else 0

    def rec() -> bool:
        nonlocal nodes
        nodes += 1
        if budget is not None and nodes > budget:
            raise BudgetExceeded(f"(t,r)-PM search exceeded {budget} nodes")
        best_e, best_cols, best_n = -1, None, None
        for e in range(m):
            if res[e] == 0:
                continue
            fits = [ci for ci in by_edge[e] if not banned[ci] and cap(ci) > 0]
            if sum(min(cap(ci), res[e]) for ci in fits) < res[e]:
                return False
            if best_n is None or len(fits) < best_n:
                best_e, best_cols, best_n = e, fits, len(fits)
                if best_n == 1:
                    break
        if best_e < 0:
            return True
        ci = best_cols[0]
        for e in col_edges[ci]:
            res[e] -= 1
        mult[ci] += 1
        if rec():
            return True
        mult[ci] -= 1
        for e in col_edges[ci]:
            res[e] += 1
        banned[ci] = True
        ok = rec()
        banned[ci] = False
        return ok

    return list(mult) if rec() else None


def find_tr_pm(g: Multigraph, t: int, r: int, budget: int | None = DEFAULT_BUDGET) -> PMCover | None:
    """Exact search for a (t,r)-PM of an r-graph.

    Parallel edges are interchangeable, so the search runs on the underlying
    simple graph with demand ``t * mu(e)`` per edge; the solution is then
    spread over the parallel copies, ``t`` matchings per copy.
    """
    from .analysis import verify_r_graph

    if t < 1:
        raise InvalidArgument("t must be positive")
    verdict = verify_r_graph(g, r)
    if not verdict.is_r_graph:
        raise PreconditionViolation(f"not an r-graph for r={r} ({verdict.reason})", verdict)
    s = underlying_simple(g)
    columns = [m.edge_ids for m in enumerate_perfect_matchings(s)]
    demand = [t * g.mu(u, v) for u, v in s.edges]
    mult = solve_cover_counts(columns, demand, budget)
    if mult is None:
        return None
    copies = {pair: g.edges_between(*pair) for pair in s.edges}
    handed = {pair: 0 for pair in s.edges}
    out = []
    for ci, k in enumerate(mult):
        for _ in range(k):
            ids = []
            for se in columns[ci]:
                pair = s.edges[se]
                ids.append(copies[pair][handed[pair] // t])
                handed[pair] += 1
            out.append(Matching(frozenset(ids), True))
    return PMCover(t, r, tuple(out)).sorted()


# -- Kempe chains -----------------------------------------------------------------


@dataclass(frozen=True)
class KempeChain:
    edges: frozenset[int]
    endpoints: tuple[int, ...]
    vertices: frozenset[int]
    graph: Multigraph = field(repr=False, compare=False)

    @property
    def is_cycle(self) -> bool:
        return not self.endpoints


def kempe_chains(g: Multigraph, m1: Matching, m2: Matching) -> list[KempeChain]:
    """Components of the symmetric difference of two matchings."""
    diff = m1.edge_ids ^ m2.edge_ids
    adj: dict[int, list[int]] = {}
    for e in diff:
        u, v = g.edges[e]
        adj.setdefault(u, []).append(e)
        adj.setdefault(v, []).append(e)
    seen_e: set[int] = set()
    out = []
    for e0 in sorted(diff):
        if e0 in seen_e:
            continue
        comp, verts = set(), set()
        stack = [e0]
        while stack:
            e = stack.pop()
            if e in comp:
                continue
            comp.add(e)
            for x in g.edges[e]:
                verts.add(x)
                stack.extend(f for f in adj[x] if f not in comp)
        seen_e |= comp
        ends = tuple(sorted(x for x in verts if len(adj[x]) == 1))
        out.append(KempeChain(frozenset(comp), ends, frozenset(verts), g))
    return out


def kempe_chain_at(g: Multigraph, m1: Matching, m2: Matching, vertex: int) -> KempeChain | None:
    for ch in kempe_chains(g, m1, m2):
        if vertex in ch.vertices:
            return ch
    return None


def kempe_switch(m1: Matching, m2: Matching, chain: KempeChain) -> tuple[Matching, Matching]:
    """Exchange the edges of ``m1`` and ``m2`` along ``chain``."""
    diff = m1.edge_ids ^ m2.edge_ids
    if not chain.edges or not chain.edges <= diff:
        raise InvalidArgument("chain is not part of the symmetric difference")
    g = chain.graph
    touching = {e for e in diff - chain.edges if set(g.edges[e]) & chain.vertices}
    if touching:
        raise InvalidArgument("chain is not a whole component of the symmetric difference")
    a = (m1.edge_ids - chain.edges) | (m2.edge_ids & chain.edges)
    b = (m2.edge_ids - chain.edges) | (m1.edge_ids & chain.edges)
    return make_matching(g, a), make_matching(g, b)
