"""r-graph specific analysis: odd-cut verification, tight cuts, the 2- and
3-vertex-cut case analyses, and lifting at a contracted vertex."""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import combinations

import numpy as np

from .errors import InvalidArgument, InvalidPlan, InternalDefect, PreconditionViolation
from .multigraph import (
    Contraction,
    EdgeCut,
    Multigraph,
    VertexCut,
    boundary,
    components,
    connectivity,
    contract,
    is_connected,
    is_isomorphic_to,
    underlying_simple,
)

MAX_EXHAUSTIVE_N = 22


@lru_cache(maxsize=4096)
def _cut_table(g: Multigraph) -> tuple[np.ndarray, np.ndarray]:
    """Boundary size and side size of every vertex subset, indexed by bitmask."""
    if g.n > MAX_EXHAUSTIVE_N:
        raise InvalidArgument(f"exhaustive cut enumeration limited to n <= {MAX_EXHAUSTIVE_N}")
    masks = np.arange(1 << g.n, dtype=np.int64)
    cut = np.zeros(1 << g.n, dtype=np.int32)
    for (u, v), k in g.multiplicity.items():
        cut += k * (((masks >> u) ^ (masks >> v)) & 1).astype(np.int32)
    size = np.zeros(1 << g.n, dtype=np.int32)
    for v in range(g.n):
        size += ((masks >> v) & 1).astype(np.int32)
    return cut, size


def _mask_to_set(mask: int) -> frozenset[int]:
    out = []
    v = 0
    while mask:
        if mask & 1:
            out.append(v)
        mask >>= 1
        v += 1
    return frozenset(out)


def _least(masks) -> frozenset[int]:
    """Smallest side first, then lexicographically least sorted vertex list."""
    sets = [_mask_to_set(int(m)) for m in masks]
    return min(sets, key=lambda s: (len(s), sorted(s)))


@dataclass(frozen=True)
class RGraphVerdict:
    r: int
    is_r_graph: bool
    witness: EdgeCut | None = None
    reason: str = ""


def verify_r_graph(g: Multigraph, r: int) -> RGraphVerdict:
    """Decide whether ``g`` is an r-graph by checking every odd vertex set."""
    if r < 1:
        raise InvalidArgument("r must be at least 1")
    for v in range(g.n):
        if g.degrees[v] != r:
            return RGraphVerdict(r, False, boundary(g, [v], r) if g.n > 1 else
                                 EdgeCut(frozenset([v]), frozenset(), 1, False), "degree")
    if g.n % 2 == 1:
        # X = V is odd and has an empty boundary
        return RGraphVerdict(r, False, EdgeCut(frozenset(range(g.n)), frozenset(), 1, False), "odd-order")
    if g.n == 0:
        return RGraphVerdict(r, True)
    cut, size = _cut_table(g)
    bad = np.nonzero(((size & 1) == 1) & (cut < r))[0]
    if len(bad):
        x = _least(bad)
        return RGraphVerdict(r, False, boundary(g, x, r), "odd-cut")
    return RGraphVerdict(r, True)


def is_r_graph(g: Multigraph, r: int) -> bool:
    return verify_r_graph(g, r).is_r_graph


def _require_r_graph(g: Multigraph, r: int):
    v = verify_r_graph(g, r)
    if not v.is_r_graph:
        raise PreconditionViolation(f"not an r-graph for r={r} ({v.reason})", v)


def tight_cuts(g: Multigraph, r: int) -> list[frozenset[int]]:
    """Sides of all non-trivial tight cuts, each cut listed once by its
    preferred side (smaller, then lexicographically least)."""
    if g.n < 4:
        return []
    cut, size = _cut_table(g)
    full = (1 << g.n) - 1
    hits = np.nonzero(((size & 1) == 1) & (cut == r) & (size > 1) & (size < g.n - 1))[0]
    out = set()
    for m in hits:
        m = int(m)
        comp = full ^ m
        out.add(min(_mask_to_set(m), _mask_to_set(comp), key=lambda s: (len(s), sorted(s))))
    return sorted(out, key=lambda s: (len(s), sorted(s)))


def find_nontrivial_tight_cut(g: Multigraph, r: int) -> EdgeCut | None:
    """A non-trivial tight edge cut: smallest side, then lexicographically least."""
    _require_r_graph(g, r)
    sides = tight_cuts(g, r)
    if not sides:
        return None
    return boundary(g, sides[0], r)


# -- 2- and 3-vertex-cut case analyses ----------------------------------------


@dataclass(frozen=True)
class TwoCutClassification:
    tag: str
    separator: tuple[int, ...]
    components: tuple[frozenset[int], ...] = ()
    counts: tuple[tuple[int, int], ...] = ()
    tight_cut: EdgeCut | None = None


@dataclass(frozen=True)
class ThreeCutClassification:
    tag: str
    separator: tuple[int, ...]
    components: tuple[frozenset[int], ...] = ()
    counts: tuple[tuple[int, int, int], ...] = ()
    tight_cut: EdgeCut | None = None
    separator_independent: bool | None = None
    exactly_three_components: bool | None = None


def _edges_to(g: Multigraph, comp: frozenset[int], s: int) -> int:
    return sum(1 for e in g.incident[s] if g.other_end(e, s) in comp)


def _as_separator(s) -> tuple[int, ...]:
    if isinstance(s, VertexCut):
        return tuple(sorted(s.separator))
    return tuple(sorted(s))


def classify_two_cut(g: Multigraph, r: int, s) -> TwoCutClassification:
    """Case analysis at a 2-vertex-cut ``{u, v}`` of a 2-connected r-graph.

    Returns a concrete tight cut, or ``underlying-C4`` when both sides of
    the cut are single vertices.
    """
    sep = _as_separator(s)
    if len(sep) != 2:
        raise PreconditionViolation("separator must have two vertices")
    if r < 3:
        raise PreconditionViolation("the 2-cut analysis needs r >= 3")
    _require_r_graph(g, r)
    if not is_connected(g) or connectivity(g) < 2:
        raise PreconditionViolation("graph is not 2-connected")
    u, v = sep
    comps = tuple(components(g, sep))
    if len(comps) < 2:
        return TwoCutClassification("not-applicable", sep, comps)
    counts = tuple((_edges_to(g, c, u), _edges_to(g, c, v)) for c in comps)
    odd = [i for i, c in enumerate(comps) if len(c) % 2 == 1]
    if odd:
        # case 1: two odd components, each with a_i + b_i = r
        if len(odd) < 2:
            raise InternalDefect("odd number of odd components next to a 2-cut of an even graph")
        for i in odd[:2]:
            if len(comps[i]) >= 2:
                cut = boundary(g, comps[i], r)
                if not cut.nontrivial_tight:
                    raise InternalDefect("case 1 boundary is not tight")
                return TwoCutClassification("tight-cut-found", sep, comps, counts, cut)
        if not is_isomorphic_to(underlying_simple(g), _c4()):
            raise InternalDefect("singleton odd components but underlying graph is not C4")
        return TwoCutClassification("underlying-C4", sep, comps, counts)
    # case 2: all components even; a_i = b_i and V(G_i) + u is tight
    cut = boundary(g, comps[0] | {u}, r)
    if not cut.nontrivial_tight:
        raise InternalDefect("case 2 boundary is not tight")
    return TwoCutClassification("tight-cut-found", sep, comps, counts, cut)


@lru_cache(maxsize=1)
def _c4() -> Multigraph:
    return Multigraph.from_edges(4, [(0, 1), (1, 2), (2, 3), (0, 3)])


@lru_cache(maxsize=1)
def _k33() -> Multigraph:
    return Multigraph.from_edges(6, [(i, j) for i in range(3) for j in range(3, 6)])


def classify_three_cut(g: Multigraph, r: int, s) -> ThreeCutClassification:
    """Case analysis at a 3-vertex-cut with at least three odd components."""
    sep = _as_separator(s)
    if len(sep) != 3:
        raise PreconditionViolation("separator must have three vertices")
    if r < 3:
        raise PreconditionViolation("the 3-cut analysis needs r >= 3")
    _require_r_graph(g, r)
    if connectivity(g) < 3:
        raise PreconditionViolation("graph is not 3-connected")
    comps = tuple(components(g, sep))
    counts = tuple(tuple(_edges_to(g, c, x) for x in sep) for c in comps)
    odd = [c for c in comps if len(c) % 2 == 1]
    if len(odd) < 3:
        return ThreeCutClassification("not-applicable", sep, comps, counts)
    independent = all(g.mu(a, b) == 0 for a, b in combinations(sep, 2))
    exactly_three = len(comps) == 3
    if not (independent and exactly_three):
        raise InternalDefect("three odd components but separator not independent or extra components")
    big = [c for c in odd if len(c) >= 3]
    if big:
        cut = boundary(g, min(big, key=lambda c: (len(c), sorted(c))), r)
        if not cut.nontrivial_tight:
            raise InternalDefect("odd component boundary is not tight")
        return ThreeCutClassification("tight-cut-found", sep, comps, counts, cut, independent, exactly_three)
    if not is_isomorphic_to(underlying_simple(g), _k33()):
        raise InternalDefect("singleton components but underlying graph is not K3,3")
    return ThreeCutClassification("underlying-K33", sep, comps, counts, None, independent, exactly_three)


# -- lifting ---------------------------------------------------------------------


@dataclass(frozen=True)
class LiftStep:
    y: int
    z: int
    e1: int
    e2: int


@dataclass(frozen=True)
class LiftingPlan:
    """Liftings at ``at`` (= w_X) of the contraction ``base``.

    Edge ids in the steps refer to ``base``; lifting never touches edges
    away from ``at``, so the ids stay meaningful through the whole plan.
    """

    at: int
    steps: tuple[LiftStep, ...]
    delete_vertex_after: bool
    base: Multigraph = field(repr=False)
    contraction: Contraction | None = field(default=None, repr=False, compare=False)


def lifting_step_count(cut_size: int, side_size: int, r: int) -> int:
    if side_size % 2 == 0:
        return cut_size // 2
    return (cut_size - r) // 2


def apply_lifting(g: Multigraph, plan: LiftingPlan, *, with_mapping: bool = False):
    """Execute ``plan`` on ``g`` (normally ``plan.base``).

    With ``with_mapping`` the result is ``(graph, old_id -> new_id, new_edge_ids)``
    where ``new_edge_ids[i]`` is the id of the edge added by step ``i``.
    """
    w = plan.at
    if not (0 <= w < g.n):
        raise InvalidPlan("lifting vertex out of range")
    used: set[int] = set()
    for st in plan.steps:
        if st.y == st.z:
            raise InvalidPlan("lifting needs two distinct neighbours")
        for e, end in ((st.e1, st.y), (st.e2, st.z)):
            if not (0 <= e < g.m) or e in used:
                raise InvalidPlan(f"edge {e} is stale")
            if w not in g.edges[e] or g.other_end(e, w) != end:
                raise InvalidPlan(f"edge {e} does not join {w} and {end}")
            used.add(e)
    h, mapping = g.remove_edges(used)
    h, remap, added = h.add_edges([(st.y, st.z) for st in plan.steps])
    mapping = {old: remap[new] for old, new in mapping.items()}
    if plan.delete_vertex_after:
        if h.degrees[w] != 0:
            raise InvalidPlan("w_X still has edges; cannot delete it")
        if w != h.n - 1:
            raise InvalidPlan("w_X must be the last vertex")
        h = Multigraph(h.n - 1, h.edges)
    if with_mapping:
        return h, mapping, added
    return h


def plan_lifting(g: Multigraph, x, r: int, seed: int = 0, *, check_input: bool = True) -> LiftingPlan:
    """Find liftings at w_X turning ``G/X`` into a connected r-graph.

    The number of steps is fixed by the parity of ``|X|``.  Pair choices are
    searched by backtracking over multisets of neighbour pairs, in an order
    shuffled by ``seed``; every candidate is checked with
    :func:`verify_r_graph` and for connectivity.
    """
    if check_input:
        _require_r_graph(g, r)
        if not is_connected(g):
            raise PreconditionViolation("graph is not connected")
    con = contract(g, x)
    h = con.graph
    w = con.w
    side = len(frozenset(x))
    deg = h.degrees[w]
    steps_needed = lifting_step_count(deg, side, r)
    delete_after = side % 2 == 0
    if steps_needed < 0 or (deg - (0 if delete_after else r)) % 2:
        raise InternalDefect("cut size has the wrong parity for an r-graph")

    by_nb: dict[int, list[int]] = {}
    for e in h.incident[w]:
        by_nb.setdefault(h.other_end(e, w), []).append(e)
    nbs = sorted(by_nb)
    pairs = [(a, b) for a, b in combinations(nbs, 2)]
    random.Random(seed).shuffle(pairs)
    cap = {y: len(es) for y, es in by_nb.items()}

    def build(chosen):
        used = {y: 0 for y in nbs}
        steps = []
        for p in chosen:
            y, z = pairs[p]
            steps.append(LiftStep(y, z, by_nb[y][used[y]], by_nb[z][used[z]]))
            used[y] += 1
            used[z] += 1
        return LiftingPlan(w, tuple(steps), delete_after, h, con)

    def feasible(rem_steps):
        left = {y: cap[y] - load[y] for y in nbs}
        if delete_after:
            total = sum(left.values())
            return total == 2 * rem_steps and all(2 * c <= total for c in left.values())
        return sum(left.values()) >= 2 * rem_steps

    load = {y: 0 for y in nbs}
    chosen: list[int] = []

    def search(start):
        if len(chosen) == steps_needed:
            plan = build(chosen)
            out = apply_lifting(h, plan)
            if is_connected(out) and verify_r_graph(out, r).is_r_graph:
                return plan
            return None
        for p in range(start, len(pairs)):
            y, z = pairs[p]
            if load[y] >= cap[y] or load[z] >= cap[z]:
                continue
            load[y] += 1
            load[z] += 1
            chosen.append(p)
            if feasible(steps_needed - len(chosen)):
                found = search(p)
                if found is not None:
                    return found
            chosen.pop()
            load[y] -= 1
            load[z] -= 1
        return None

    plan = search(0) if feasible(steps_needed) else None
    if plan is None:
        raise InternalDefect("no lifting sequence yields an r-graph; the lifting theorem guarantees one")
    return plan
