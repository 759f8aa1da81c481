"""Versioned JSON certificates and their independent re-checks.

Edge ids in every payload refer to the graph's canonical text form (edges
sorted by endpoints), which is also what ``graph_hash`` digests.
"""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass

from .graphio import format_graph
from .matching import EdgeColoring, PMCover
from .multigraph import Multigraph
from .validate import boundary_size, check_edge_coloring, check_tr_pm, degrees, odd_cut_violation

SCHEMA = 1
KINDS = ("r-graph-verdict", "edge-coloring", "tr-pm", "clique-sum-tree", "crossing", "reduction-trace")


def graph_hash(g: Multigraph) -> str:
    return hashlib.sha256(format_graph(g).encode("utf-8")).hexdigest()


@dataclass(frozen=True)
class Certificate:
    kind: str
    payload: dict
    graph_hash: str

    def to_json(self) -> dict:
        return {"schema": SCHEMA, "kind": self.kind, "graph_hash": self.graph_hash, "payload": self.payload}

    def dumps(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True, indent=1) + "\n"

    @classmethod
    def from_json(cls, d: dict) -> "Certificate":
        if not isinstance(d, dict):
            raise ValueError("certificate must be a JSON object")
        if d.get("schema") != SCHEMA:
            raise ValueError(f"unsupported schema {d.get('schema')!r}")
        if d.get("kind") not in KINDS:
            raise ValueError(f"unknown certificate kind {d.get('kind')!r}")
        if not isinstance(d.get("payload"), dict) or not isinstance(d.get("graph_hash"), str):
            raise ValueError("certificate needs a payload object and a graph_hash string")
        return cls(d["kind"], d["payload"], d["graph_hash"])

    @classmethod
    def loads(cls, text: str) -> "Certificate":
        return cls.from_json(json.loads(text))


# -- builders ----------------------------------------------------------------------


def verdict_certificate(g: Multigraph, verdict) -> Certificate:
    payload = {"r": verdict.r, "is_r_graph": verdict.is_r_graph, "reason": verdict.reason,
               "witness": sorted(verdict.witness.side) if verdict.witness is not None else None}
    return Certificate("r-graph-verdict", payload, graph_hash(g))


def coloring_certificate(g: Multigraph, col: EdgeColoring) -> Certificate:
    return Certificate("edge-coloring", {"k": col.k, "colors": list(col.colors)}, graph_hash(g))


def cover_certificate(g: Multigraph, cover: PMCover) -> Certificate:
    return Certificate("tr-pm", cover.to_json(), graph_hash(g))


def tree_certificate(g: Multigraph, tree) -> Certificate:
    return Certificate("clique-sum-tree", tree.to_json(), graph_hash(g))


def crossing_certificate(g: Multigraph, cert) -> Certificate:
    return Certificate("crossing", cert.to_json(), graph_hash(g))


def trace_certificate(g: Multigraph, trace) -> Certificate:
    return Certificate("reduction-trace", trace.to_json(), graph_hash(g))


# -- checks ------------------------------------------------------------------------


def check_certificate(g: Multigraph, cert: Certificate) -> list[str]:
    """Reasons the certificate does not hold for ``g``; empty when it does."""
    if cert.graph_hash != graph_hash(g):
        return ["graph_hash does not match the graph"]
    try:
        return _CHECKS[cert.kind](g, cert.payload)
    except (KeyError, TypeError, ValueError, AttributeError) as exc:
        return [f"malformed payload: {type(exc).__name__}: {exc}"]


def _check_verdict(g: Multigraph, p: dict) -> list[str]:
    r = int(p["r"])
    deg = degrees(g)
    if p["is_r_graph"]:
        if any(d != r for d in deg):
            return ["graph is not regular of the claimed degree"]
        if g.n % 2:
            return ["graph has odd order"]
        bad = odd_cut_violation(g, r)
        if bad is not None:
            return [f"odd set {sorted(bad[0])} has only {bad[1]} boundary edges"]
        return []
    reason, wit = p["reason"], p["witness"]
    if reason == "degree":
        v = int(wit[0])
        return [] if 0 <= v < g.n and deg[v] != r else ["witness vertex has the claimed degree"]
    if reason == "odd-order":
        return [] if g.n % 2 else ["graph has even order"]
    if reason == "odd-cut":
        side = set(wit or [])
        if not side or len(side) % 2 == 0 or not side <= set(range(g.n)):
            return ["witness is not an odd vertex set"]
        if boundary_size(g, side) >= r:
            return ["witness cut is not small"]
        return []
    return [f"unknown reason {reason!r}"]


def _check_coloring(g: Multigraph, p: dict) -> list[str]:
    return check_edge_coloring(g, [int(c) for c in p["colors"]], int(p["k"]))


def _check_cover(g: Multigraph, p: dict) -> list[str]:
    for m in p["matchings"]:
        if len(set(m)) != len(m):
            return ["a matching lists an edge twice"]
    return check_tr_pm(g, PMCover.from_json(p))


def _check_tree(g: Multigraph, p: dict) -> list[str]:
    from .topology import CliqueSumTree, check_clique_sum_tree

    tree = CliqueSumTree.from_json(p)
    if tree.n != g.n:
        return ["tree is for a graph of another order"]
    return check_clique_sum_tree(g, tree)


def _check_crossing(g: Multigraph, p: dict) -> list[str]:
    from .topology import crossing_at_most_one, is_planar, planarize

    verdict = p["verdict"]
    if verdict == "planar":
        return [] if is_planar(g) and p.get("crossing_pair") is None else ["graph is not planar"]
    if verdict == "one-crossing":
        if is_planar(g):
            return ["graph is planar"]
        e1, e2 = (int(e) for e in p["crossing_pair"])
        if not (0 <= e1 < g.m and 0 <= e2 < g.m):
            return ["crossing pair refers to unknown edges"]
        a, b = g.edges[e1], g.edges[e2]
        if set(a) & set(b):
            return ["crossing edges share an endpoint"]
        return [] if is_planar(planarize(g, a, b)) else ["planarized graph is not planar"]
    if verdict == "more":
        return [] if crossing_at_most_one(g).verdict == "more" else ["a one-crossing drawing exists"]
    return [f"unknown verdict {verdict!r}"]


def _check_trace(g: Multigraph, p: dict) -> list[str]:
    from .reduction import ReductionTrace

    trace = ReductionTrace.from_json(p)
    if trace.root.graph != g:
        return ["trace root is a different graph"]
    problems = trace.replay()
    problems += check_tr_pm(g, trace.root.cover)
    return problems


_CHECKS = {
    "r-graph-verdict": _check_verdict,
    "edge-coloring": _check_coloring,
    "tr-pm": _check_cover,
    "clique-sum-tree": _check_tree,
    "crossing": _check_crossing,
    "reduction-trace": _check_trace,
}
