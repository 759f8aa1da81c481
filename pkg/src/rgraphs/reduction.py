"""Constructive reductions: build (t,r)-PMs of K5-minor-free, K3,3-minor-free
and crossing-number-one r-graphs from covers of planar r-graphs.

Every reduction returns the cover together with a :class:`ReductionTrace`
whose nodes can be replayed bottom-up to recompute each cover from the
children's covers.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable

from .analysis import (
    classify_three_cut,
    classify_two_cut,
    find_nontrivial_tight_cut,
    plan_lifting,
    apply_lifting,
    tight_cuts,
    verify_r_graph,
)
from .errors import InternalDefect, OracleGap, PreconditionViolation
from .graphio import format_graph, parse_graph
from .matching import (
    DEFAULT_BUDGET,
    Matching,
    PMCover,
    cover_from_coloring,
    edge_color,
    find_tr_pm,
    kempe_chain_at,
    kempe_switch,
    make_matching,
)
from .multigraph import (
    EdgeCut,
    Multigraph,
    boundary,
    components,
    connectivity,
    contract,
    find_vertex_cuts,
    is_isomorphic_to,
    underlying_simple,
)
from .topology import (
    crossing_pairs,
    find_splittable_three_cut,
    has_k5_minor,
    has_k33_minor,
    is_planar,
)
from .validate import check_tr_pm

# -- oracle ----------------------------------------------------------------------


class PlanarOracle:
    """Source of (t,r)-PMs for planar r-graphs.

    ``strategy="exact-search"`` runs :func:`find_tr_pm`; ``"table"`` looks the
    graph up in ``table`` (keyed by ``(graph, t, r)``).  A failure raises
    :class:`OracleGap` carrying the planar instance.
    """

    def __init__(self, strategy: str = "exact-search", table: dict | None = None,
                 budget: int | None = DEFAULT_BUDGET):
        if strategy not in ("exact-search", "table"):
            raise ValueError(f"unknown oracle strategy {strategy!r}")
        self.strategy = strategy
        self.table = table or {}
        self.budget = budget
        self.calls = 0

    def __call__(self, g: Multigraph, t: int, r: int) -> PMCover:
        if not is_planar(g):
            raise InternalDefect("planar oracle called on a non-planar graph")
        self.calls += 1
        if self.strategy == "table":
            cover = self.table.get((g, t, r))
        else:
            cover = find_tr_pm(g, t, r, self.budget)
        if cover is None:
            raise OracleGap(f"planar {r}-graph on {g.n} vertices has no ({t},{r})-PM", g, t, r)
        if check_tr_pm(g, cover):
            raise OracleGap("oracle returned an invalid cover", g, t, r)
        return cover


# -- trace -----------------------------------------------------------------------


@dataclass
class ReductionStep:
    kind: str
    graph: Multigraph
    t: int
    r: int
    cover: PMCover
    detail: dict = field(default_factory=dict)
    children: list["ReductionStep"] = field(default_factory=list)

    def walk(self):
        yield self
        for c in self.children:
            yield from c.walk()

    def to_json(self) -> dict:
        return {
            "kind": self.kind,
            "graph": format_graph(self.graph),
            "t": self.t,
            "r": self.r,
            "cover": [list(m.key()) for m in self.cover.matchings],
            "detail": self.detail,
            "children": [c.to_json() for c in self.children],
        }

    @classmethod
    def from_json(cls, d: dict) -> "ReductionStep":
        t, r = int(d["t"]), int(d["r"])
        cover = PMCover.from_json({"t": t, "r": r, "matchings": d["cover"]})
        return cls(d["kind"], parse_graph(d["graph"]), t, r, cover, d.get("detail", {}),
                   [cls.from_json(c) for c in d.get("children", [])])


@dataclass
class ReductionTrace:
    mode: str
    root: ReductionStep

    @property
    def cover(self) -> PMCover:
        return self.root.cover

    def steps(self, kind: str | None = None) -> list[ReductionStep]:
        return [s for s in self.root.walk() if kind is None or s.kind == kind]

    def kinds(self) -> set[str]:
        return {s.kind for s in self.root.walk()}

    def to_json(self) -> dict:
        return {"mode": self.mode, "root": self.root.to_json()}

    @classmethod
    def from_json(cls, d: dict) -> "ReductionTrace":
        return cls(d["mode"], ReductionStep.from_json(d["root"]))

    def to_dot(self) -> str:
        lines = ["digraph reduction {", "  node [shape=box];"]
        ids: dict[int, str] = {}
        for i, s in enumerate(self.root.walk()):
            ids[id(s)] = f"s{i}"
            lines.append(f'  s{i} [label="{s.kind}\\nn={s.graph.n} m={s.graph.m}"];')
        for s in self.root.walk():
            for c in s.children:
                lines.append(f"  {ids[id(s)]} -> {ids[id(c)]};")
        lines.append("}")
        return "\n".join(lines) + "\n"

    def replay(self) -> list[str]:
        """Recompute every internal cover from its children; return mismatches."""
        problems: list[str] = []
        _replay(self.root, problems, "root")
        return problems


def _same_cover(a: PMCover, b: PMCover) -> bool:
    return (a.t, a.r) == (b.t, b.r) and sorted(m.key() for m in a.matchings) == sorted(
        m.key() for m in b.matchings)


def _replay(step: ReductionStep, problems: list[str], path: str) -> None:
    for i, c in enumerate(step.children):
        _replay(c, problems, f"{path}/{i}")
    reasons = check_tr_pm(step.graph, step.cover)
    if reasons:
        problems.append(f"{path} ({step.kind}): stored cover invalid: {reasons[0]}")
        return
    g, t, r, kids = step.graph, step.t, step.r, step.children
    try:
        if step.kind == "component-split":
            parts = [frozenset(p) for p in step.detail["components"]]
            _expect_children(kids, [g.induced(p)[0] for p in parts])
            redo = _combine_components(g, t, r, parts, [c.cover for c in kids])
        elif step.kind == "tight-cut-split":
            side = frozenset(step.detail["side"])
            cut = boundary(g, side, r)
            _expect_children(kids, _tight_cut_graphs(g, side))
            redo = combine_across_tight_cut(g, cut, kids[0].cover, kids[1].cover)
        elif step.kind == "three-cut-split":
            split = three_cut_split(g, r, step.detail["separator"],
                                    [frozenset(c) for c in step.detail["components"]])
            _expect_children(kids, [s.graph for s in split.sides])
            redo = merge_three_cut(g, t, r, split, kids[0].cover, kids[1].cover)
        elif step.kind == "crossing-swap":
            red = crossing_swap(g, r, step.detail["e_xy"], step.detail["e_uv"])
            _expect_children(kids, [red.swapped])
            redo, _ = repair_crossing(red, t, kids[0].cover)
        elif step.kind == "two-cut-C4-direct":
            redo = direct_c4_cover(g, t, r)
        else:
            redo = step.cover  # oracle and colouring leaves are base facts
    except Exception as exc:  # replay must report, not crash
        problems.append(f"{path} ({step.kind}): {type(exc).__name__}: {exc}")
        return
    if not _same_cover(redo, step.cover):
        problems.append(f"{path} ({step.kind}): replay gives a different cover")


def _expect_children(kids, graphs) -> None:
    if len(kids) != len(graphs):
        raise InternalDefect(f"expected {len(graphs)} children, found {len(kids)}")
    for k, h in zip(kids, graphs):
        if k.graph != h:
            raise InternalDefect("child graph differs from the derived graph")


# -- tight cuts ------------------------------------------------------------------


def _tight_cut_graphs(g: Multigraph, side: frozenset[int]) -> list[Multigraph]:
    rest = [v for v in range(g.n) if v not in side]
    return [contract(g, rest).graph, contract(g, side).graph]


def combine_across_tight_cut(g: Multigraph, cut: EdgeCut, cover_inside: PMCover,
                             cover_outside: PMCover) -> PMCover:
    """Glue a cover of ``G/X^c`` (the side ``X`` kept) and a cover of ``G/X``.

    Every perfect matching of either contraction uses exactly one cut edge,
    so for each cut edge the ``t`` matchings on each side that use it are
    paired up in canonical order.
    """
    x = frozenset(cut.side)
    r = cover_inside.r
    t = cover_inside.t
    if (cover_outside.t, cover_outside.r) != (t, r):
        raise PreconditionViolation("the two covers have different t or r")
    real = boundary(g, x, r)
    if not real.nontrivial_tight or real.boundary != cut.boundary:
        raise PreconditionViolation("cut is not a non-trivial tight cut of the graph")
    inside = contract(g, [v for v in range(g.n) if v not in x])
    outside = contract(g, x)
    for con, cov, name in ((inside, cover_inside, "inside"), (outside, cover_outside, "outside")):
        reasons = check_tr_pm(con.graph, cov)
        if reasons:
            raise PreconditionViolation(f"{name} cover invalid: {reasons[0]}")
    back_in = {new: old for old, new in inside.edge_map.items()}
    back_out = {new: old for old, new in outside.edge_map.items()}
    merged = []
    for e in sorted(real.boundary):
        a = sorted((m for m in cover_inside.matchings if inside.edge_map[e] in m.edge_ids), key=Matching.key)
        b = sorted((m for m in cover_outside.matchings if outside.edge_map[e] in m.edge_ids), key=Matching.key)
        if len(a) != t or len(b) != t:
            raise PreconditionViolation(f"cut edge {e} is not used exactly t times on both sides")
        for ma, mb in zip(a, b):
            ids = {back_in[i] for i in ma.edge_ids} | {back_out[i] for i in mb.edge_ids}
            merged.append(make_matching(g, ids))
    out = PMCover(t, r, tuple(merged)).sorted()
    _ensure_valid(g, out, "tight-cut combination")
    return out


def _ensure_valid(g: Multigraph, cover: PMCover, what: str) -> None:
    reasons = check_tr_pm(g, cover)
    if reasons:
        raise InternalDefect(f"{what} produced an invalid cover: {reasons[0]}")


def _combine_components(g, t, r, parts, covers) -> PMCover:
    # matching j of the result is the union of matching j of every part
    per_part = []
    for p, cov in zip(parts, covers):
        _, _, emap = g.induced(p)
        back = {new: old for old, new in emap.items()}
        per_part.append([sorted(back[i] for i in m.edge_ids) for m in cov.matchings])
    merged = [make_matching(g, [e for part in per_part for e in part[j]]) for j in range(t * r)]
    out = PMCover(t, r, tuple(merged)).sorted()
    _ensure_valid(g, out, "component union")
    return out


# -- C4 underlying graphs ----------------------------------------------------------


def direct_c4_cover(g: Multigraph, t: int, r: int) -> PMCover:
    """Colour an r-graph whose underlying graph is a 4-cycle: each colour
    class is one parallel copy from each of two opposite sides."""
    if g.n != 4 or not is_isomorphic_to(underlying_simple(g), underlying_simple(
            Multigraph.from_edges(4, [(0, 1), (1, 2), (2, 3), (0, 3)]))):
        raise PreconditionViolation("underlying graph is not a 4-cycle")
    v = verify_r_graph(g, r)
    if not v.is_r_graph:
        raise PreconditionViolation(f"not an r-graph for r={r} ({v.reason})", v)
    a = 0
    b, d = sorted(g.neighbors[a])
    c = next(iter(g.neighbors[b] - {a}))
    classes = []
    for p, q in (((a, b), (c, d)), ((b, c), (d, a))):
        side1, side2 = g.edges_between(*p), g.edges_between(*q)
        if len(side1) != len(side2):
            raise InternalDefect("opposite sides of the 4-cycle differ in multiplicity")
        classes.extend(frozenset((e1, e2)) for e1, e2 in zip(side1, side2))
    ms = [make_matching(g, cls) for cls in classes for _ in range(t)]
    out = PMCover(t, r, tuple(ms)).sorted()
    _ensure_valid(g, out, "4-cycle colouring")
    return out


# -- three-cut split ---------------------------------------------------------------


@dataclass(frozen=True)
class SplitSide:
    """One retained side of a three-cut split.

    ``component`` is removed from ``G`` and replaced by ``d``, ``h``, ``k``
    new edges on the separator pairs ``uv``, ``vw``, ``wu``.
    """

    component: frozenset[int]
    a: int
    b: int
    c: int
    d: int
    h: int
    k: int
    graph: Multigraph
    vertices: tuple[int, ...]  # new -> old vertex
    edge_map: dict[int, int]  # old id -> new id for kept edges
    added: dict[str, tuple[int, ...]]  # "uv" / "vw" / "wu" -> new ids

    def to_json(self) -> dict:
        return {"component": sorted(self.component), "a": self.a, "b": self.b, "c": self.c,
                "d": self.d, "h": self.h, "k": self.k,
                "added": {key: list(v) for key, v in self.added.items()}}


@dataclass(frozen=True)
class ThreeCutSplit:
    separator: tuple[int, int, int]
    sides: tuple[SplitSide, SplitSide]

    def identities_hold(self) -> bool:
        for s in self.sides:
            if min(s.d, s.h, s.k) < 0:
                return False
            if 2 * s.d != s.a + s.b - s.c or 2 * s.h != -s.a + s.b + s.c or 2 * s.k != s.a - s.b + s.c:
                return False
            if (s.a, s.b, s.c) != (s.d + s.k, s.d + s.h, s.h + s.k):
                return False
        return True

    def to_json(self) -> dict:
        return {"separator": list(self.separator), "sides": [s.to_json() for s in self.sides],
                "identities_hold": self.identities_hold()}


def _split_side(g: Multigraph, r: int, sep: tuple[int, int, int], comp: frozenset[int]) -> SplitSide:
    u, v, w = sep
    a, b, c = (sum(1 for e in g.incident[s] if g.other_end(e, s) in comp) for s in sep)
    if (a + b + c) % 2:
        raise InternalDefect("odd number of edges between a component and the separator")
    d, h, k = (a + b - c) // 2, (-a + b + c) // 2, (a - b + c) // 2
    if min(d, h, k) < 0:
        raise InternalDefect(f"negative lifting counts {(d, h, k)} for component {sorted(comp)}")
    keep = [x for x in range(g.n) if x not in comp]
    base, verts, emap = g.induced(keep)
    pos = {x: i for i, x in enumerate(verts)}
    pairs = [(pos[u], pos[v])] * d + [(pos[v], pos[w])] * h + [(pos[w], pos[u])] * k
    graph, remap, added = base.add_edges(pairs)
    emap = {old: remap[new] for old, new in emap.items()}
    groups = {"uv": tuple(added[:d]), "vw": tuple(added[d:d + h]), "wu": tuple(added[d + h:])}
    side = SplitSide(comp, a, b, c, d, h, k, graph, tuple(verts), emap, groups)
    # the same graph must come out of the generic lifting search
    plan = plan_lifting(g, comp, r, check_input=False)
    lifted = apply_lifting(plan.base, plan)
    if lifted != graph:
        raise InternalDefect("lifting search and the split formulas disagree")
    v_ = verify_r_graph(graph, r)
    if not v_.is_r_graph:
        raise InternalDefect(f"split side is not an r-graph for r={r} ({v_.reason})")
    return side


def three_cut_split(g: Multigraph, r: int, separator, comps) -> ThreeCutSplit:
    sep = tuple(sorted(separator))
    if len(sep) != 3 or len(comps) != 2:
        raise PreconditionViolation("need a 3-vertex separator and two components")
    split = ThreeCutSplit(sep, tuple(_split_side(g, r, sep, frozenset(c)) for c in comps))
    if not split.identities_hold():
        raise InternalDefect("split arithmetic identities fail")
    return split


def merge_three_cut(g: Multigraph, t: int, r: int, split: ThreeCutSplit,
                    cover1: PMCover, cover2: PMCover) -> PMCover:
    """Replace the added edges in the cover of ``G'_1`` by the pieces of the
    cover of ``G'_2`` that live on ``G_1`` and its boundary."""
    s1, s2 = split.sides
    u, v, w = split.separator
    comp1 = s1.component
    back1 = {new: old for old, new in s1.edge_map.items()}
    back2 = {new: old for old, new in s2.edge_map.items()}
    region = {e for e, (p, q) in enumerate(g.edges) if p in comp1 or q in comp1}
    pieces: dict[str, list[tuple[int, ...]]] = {"uv": [], "vw": [], "wu": [], "none": []}
    names = {frozenset((u, v)): "uv", frozenset((v, w)): "vw", frozenset((w, u)): "wu"}
    for m in cover2.matchings:
        ids = tuple(sorted(back2[i] for i in m.edge_ids if i in back2 and back2[i] in region))
        hit = frozenset(x for e in ids for x in g.edges[e] if x in split.separator)
        if len(hit) == 0:
            pieces["none"].append(ids)
        elif hit in names:
            pieces[names[hit]].append(ids)
        else:
            raise InternalDefect(f"a matching of G'_2 saturates {sorted(hit)} from inside G_1")
    slots: dict[str, list[tuple[int, ...]]] = {"uv": [], "vw": [], "wu": [], "none": []}
    added_type = {e: key for key, ids in s1.added.items() for e in ids}
    for m in cover1.matchings:
        used = [added_type[e] for e in m.edge_ids if e in added_type]
        if len(used) > 1:
            raise InternalDefect("a perfect matching uses two added separator edges")
        kept = tuple(sorted(back1[i] for i in m.edge_ids if i in back1))
        slots[used[0] if used else "none"].append(kept)
    expect = {"uv": t * s1.d, "vw": t * s1.h, "wu": t * s1.k}
    merged = []
    for key in ("uv", "vw", "wu", "none"):
        if key in expect and (len(pieces[key]) != expect[key] or len(slots[key]) != expect[key]):
            raise InternalDefect(f"boundary type {key}: {len(pieces[key])} pieces, "
                                 f"{len(slots[key])} slots, expected {expect[key]}")
        if len(pieces[key]) != len(slots[key]):
            raise InternalDefect(f"boundary type {key} counts differ")
        for a, b in zip(sorted(slots[key]), sorted(pieces[key])):
            merged.append(make_matching(g, a + b))
    out = PMCover(t, r, tuple(merged)).sorted()
    _ensure_valid(g, out, "three-cut merge")
    return out


# -- crossing swap ----------------------------------------------------------------


@dataclass(frozen=True)
class CrossingReduction:
    """Swap of a crossing pair ``e_xy``, ``e_uv`` for ``f = xu`` and ``f' = yv``."""

    graph: Multigraph
    x: int
    y: int
    u: int
    v: int
    e_xy: int
    e_uv: int
    potential: int
    swapped: Multigraph
    to_old: dict[int, int]  # swapped id -> original id (all but f, f')
    f: int
    f_prime: int
    reduced: Multigraph  # G'' = G - {e_xy, e_uv}
    to_reduced: dict[int, int]  # original id -> G'' id

    def to_json(self) -> dict:
        return {"xy": [self.x, self.y], "uv": [self.u, self.v], "e_xy": self.e_xy,
                "e_uv": self.e_uv, "c_G": self.potential, "f": self.f, "f_prime": self.f_prime}


def crossing_swap(g: Multigraph, r: int, e_xy: int, e_uv: int) -> CrossingReduction:
    x, y = g.edges[e_xy]
    u, v = g.edges[e_uv]
    if len({x, y, u, v}) != 4:
        raise PreconditionViolation("crossing edges must be independent")
    reduced, to_red = g.remove_edges([e_xy, e_uv])
    swapped, remap, (f, fp) = reduced.add_edges([(x, u), (y, v)])
    to_old = {remap[new]: old for old, new in to_red.items()}
    return CrossingReduction(g, x, y, u, v, e_xy, e_uv, g.mu(x, y) * g.mu(u, v), swapped,
                             to_old, f, fp, reduced, to_red)


def crossing_potential(g: Multigraph) -> tuple[int, tuple | None]:
    """``(c_G, pair)``: 0 for planar graphs, else the least product of
    multiplicities over crossing pairs (first in canonical order on ties)."""
    if is_planar(g):
        return 0, None
    pairs = crossing_pairs(g)
    if not pairs:
        return -1, None
    best = min(pairs, key=lambda p: g.mu(*p[0]) * g.mu(*p[1]))
    return g.mu(*best[0]) * g.mu(*best[1]), best


def repair_crossing(red: CrossingReduction, t: int, cover: PMCover) -> tuple[PMCover, dict]:
    """Turn a cover of the swapped graph into a cover of the original one."""
    g = red.graph
    both, only_f, only_fp, neither = [], [], [], []
    for m in cover.matchings:
        has_f, has_fp = red.f in m.edge_ids, red.f_prime in m.edge_ids
        (both if has_f and has_fp else only_f if has_f else only_fp if has_fp else neither).append(m)
    stats = {"l": len(only_f), "l_prime": len(only_fp), "endpoints": []}
    if len(only_f) != len(only_fp):
        raise InternalDefect(f"conflicting pairs unbalanced: l={len(only_f)} l'={len(only_fp)}")
    out = []
    for m in neither:
        out.append(make_matching(g, [red.to_old[i] for i in m.edge_ids]))
    for m in both:
        ids = [red.to_old[i] for i in m.edge_ids if i not in (red.f, red.f_prime)]
        out.append(make_matching(g, ids + [red.e_xy, red.e_uv]))
    h = red.reduced
    to_h = red.to_reduced
    for m1, m2 in zip(sorted(only_f, key=Matching.key), sorted(only_fp, key=Matching.key)):
        a = make_matching(h, [to_h[red.to_old[i]] for i in m1.edge_ids if i != red.f])
        b = make_matching(h, [to_h[red.to_old[i]] for i in m2.edge_ids if i != red.f_prime])
        chain = kempe_chain_at(h, a, b, red.x)
        if chain is None or red.x not in chain.endpoints:
            raise InternalDefect("no alternating path starts at x")
        end = next(p for p in chain.endpoints if p != red.x)
        if end == red.y:
            raise InternalDefect("alternating path from x ends in y")
        stats["endpoints"].append("u" if end == red.u else "v")
        a2, b2 = kempe_switch(a, b, chain)
        back = {new: old for old, new in to_h.items()}
        for mm in (a2, b2):
            ids = [back[i] for i in mm.edge_ids]
            missing = frozenset(range(g.n)) - {p for e in ids for p in g.edges[e]}
            if missing == {red.x, red.y, red.u, red.v}:
                ids += [red.e_xy, red.e_uv]
            elif missing == {red.x, red.y}:
                ids.append(red.e_xy)
            elif missing == {red.u, red.v}:
                ids.append(red.e_uv)
            elif missing:
                raise InternalDefect(f"switched matching misses {sorted(missing)}")
            out.append(make_matching(g, ids))
    res = PMCover(t, cover.r, tuple(out)).sorted()
    _ensure_valid(g, res, "crossing repair")
    return res, stats


# -- drivers ----------------------------------------------------------------------


class _Engine:
    def __init__(self, mode: str, t: int, r: int, oracle: PlanarOracle, budget):
        self.mode = mode
        self.t = t
        self.r = r
        self.oracle = oracle
        self.budget = budget

    def leaf(self, kind, g, cover, **detail) -> ReductionStep:
        return ReductionStep(kind, g, self.t, self.r, cover, detail)

    def color_leaf(self, kind, g) -> ReductionStep:
        col = edge_color(g, self.r, self.budget)
        if col is None:
            raise InternalDefect(f"{kind}: graph is not {self.r}-edge-colourable")
        return self.leaf(kind, g, cover_from_coloring(col, self.t))

    def run(self, g: Multigraph) -> ReductionStep:
        t, r = self.t, self.r
        parts = components(g)
        if len(parts) > 1:
            kids = [self.run(g.induced(p)[0]) for p in parts]
            cover = _combine_components(g, t, r, parts, [k.cover for k in kids])
            return ReductionStep("component-split", g, t, r, cover,
                                 {"components": [sorted(p) for p in parts]}, kids)
        if self.mode == "cr1":
            return self.run_cr1(g)
        cut = find_nontrivial_tight_cut(g, r)
        if cut is not None:
            return self.split_tight(g, cut)
        s = underlying_simple(g)
        if r >= 3 and g.n >= 4 and connectivity(s) < 3:
            sep = sorted(find_vertex_cuts(s, 2), key=lambda c: sorted(c.separator))[0]
            cls = classify_two_cut(g, r, sep)
            if cls.tag != "underlying-C4":
                raise InternalDefect(f"2-cut analysis gave {cls.tag} although no tight cut exists")
            return self.leaf("two-cut-C4-direct", g, direct_c4_cover(g, t, r),
                             separator=list(cls.separator))
        if is_planar(s):
            return self.leaf("planar-oracle", g, self.oracle(g, t, r))
        if self.mode == "k33free":
            raise InternalDefect("3-connected K3,3-minor-free r-graph is not planar")
        if s.n == 8 and is_isomorphic_to(s, _v8()):
            return self.color_leaf("V8-coloring", g)
        found = find_splittable_three_cut(g)
        if found is None:
            raise InternalDefect("no splittable 3-cut in a 3-connected non-planar K5-minor-free graph")
        vc, _aug = found
        sep = tuple(sorted(vc.separator))
        odd = [c for c in vc.components if len(c) % 2]
        even = [c for c in vc.components if len(c) % 2 == 0]
        if len(odd) >= 3:
            cls = classify_three_cut(g, r, sep)
            if cls.tag != "underlying-K33":
                raise InternalDefect(f"3-cut analysis gave {cls.tag} although no tight cut exists")
            step = self.color_leaf("K33-coloring", g)
            step.detail["separator"] = list(sep)
            return step
        if len(odd) != 1 or len(even) < 2:
            raise InternalDefect(f"3-cut {sep} leaves {len(odd)} odd and {len(even)} even components")
        split = three_cut_split(g, r, sep, even[:2])
        kids = [self.run(side.graph) for side in split.sides]
        cover = merge_three_cut(g, t, r, split, kids[0].cover, kids[1].cover)
        detail = split.to_json()
        detail["components"] = [sorted(c) for c in even[:2]]
        return ReductionStep("three-cut-split", g, t, r, cover, detail, kids)

    def split_tight(self, g: Multigraph, cut: EdgeCut) -> ReductionStep:
        inner, outer = _tight_cut_graphs(g, cut.side)
        kids = [self.run(inner), self.run(outer)]
        cover = combine_across_tight_cut(g, cut, kids[0].cover, kids[1].cover)
        return ReductionStep("tight-cut-split", g, self.t, self.r, cover,
                             {"side": sorted(cut.side)}, kids)

    def run_cr1(self, g: Multigraph) -> ReductionStep:
        t, r = self.t, self.r
        c_g, pair = crossing_potential(g)
        if c_g == 0:
            return self.leaf("planar-oracle", g, self.oracle(g, t, r), c_G=0)
        if pair is None:
            raise InternalDefect("crossing number grew above one during the reduction")
        (x, y), (u, v) = pair
        need = set(g.edges_between(x, y)) | set(g.edges_between(u, v))
        for side in tight_cuts(g, r):
            cut = boundary(g, side, r)
            if need <= cut.boundary:
                step = self.split_tight(g, cut)
                step.detail.update(c_G=c_g, xy=[x, y], uv=[u, v])
                return step
        red = crossing_swap(g, r, g.edges_between(x, y)[0], g.edges_between(u, v)[0])
        verdict = verify_r_graph(red.swapped, r)
        if not verdict.is_r_graph:
            raise InternalDefect(f"swapped graph is not an r-graph for r={r} ({verdict.reason})")
        c_next, _ = crossing_potential(red.swapped)
        if not (0 <= c_next < c_g):
            raise InternalDefect(f"crossing potential did not drop: {c_g} -> {c_next}")
        kid = self.run(red.swapped)
        cover, stats = repair_crossing(red, t, kid.cover)
        detail = red.to_json()
        detail.update(c_next=c_next, **stats)
        return ReductionStep("crossing-swap", g, t, r, cover, detail, [kid])


def _v8() -> Multigraph:
    return Multigraph.from_edges(8, [(i, (i + 1) % 8) for i in range(8)] + [(i, i + 4) for i in range(4)])


def _start(g, t, r, oracle, budget, mode) -> tuple[PMCover, ReductionTrace]:
    if t < 1:
        raise PreconditionViolation("t must be positive")
    v = verify_r_graph(g, r)
    if not v.is_r_graph:
        raise PreconditionViolation(f"not an r-graph for r={r} ({v.reason})", v)
    engine = _Engine(mode, t, r, oracle or PlanarOracle(budget=budget), budget)
    root = engine.run(g)
    _ensure_valid(g, root.cover, f"{mode} reduction")
    return root.cover, ReductionTrace(mode, root)


def reduce_k5_free(g: Multigraph, t: int, r: int, oracle: PlanarOracle | None = None,
                   budget: int | None = DEFAULT_BUDGET) -> tuple[PMCover, ReductionTrace]:
    s = underlying_simple(g)
    if not is_planar(s) and has_k5_minor(s):
        raise PreconditionViolation("underlying graph has a K5 minor", g)
    return _start(g, t, r, oracle, budget, "k5free")


def reduce_k33_free(g: Multigraph, t: int, r: int, oracle: PlanarOracle | None = None,
                    budget: int | None = DEFAULT_BUDGET) -> tuple[PMCover, ReductionTrace]:
    s = underlying_simple(g)
    if not is_planar(s) and has_k33_minor(s):
        raise PreconditionViolation("underlying graph has a K3,3 minor", g)
    return _start(g, t, r, oracle, budget, "k33free")


def reduce_crossing_one(g: Multigraph, t: int, r: int, oracle: PlanarOracle | None = None,
                        budget: int | None = DEFAULT_BUDGET) -> tuple[PMCover, ReductionTrace]:
    s = underlying_simple(g)
    if not is_planar(s) and not crossing_pairs(s):
        raise PreconditionViolation("underlying graph has crossing number at least 2", g)
    return _start(g, t, r, oracle, budget, "cr1")


REDUCERS: dict[str, Callable] = {
    "k5free": reduce_k5_free,
    "k33free": reduce_k33_free,
    "cr1": reduce_crossing_one,
}
