"""Independent certificate checkers.

Nothing here imports the search code; each check recomputes what it needs
straight from the edge list so that a bug in a solver cannot hide itself.
"""

from __future__ import annotations

from collections import Counter
from itertools import combinations

from .multigraph import Multigraph


def check_tr_pm(g: Multigraph, cover) -> list[str]:
    """Reasons why ``cover`` is not a (t,r)-PM of ``g``; empty when valid."""
    reasons = []
    t, r = cover.t, cover.r
    if t < 1 or r < 1:
        reasons.append(f"t={t} and r={r} must be positive")
    if any(d != r for d in _degrees(g)):
        reasons.append(f"graph is not {r}-regular")
    if len(cover.matchings) != t * r:
        reasons.append(f"{len(cover.matchings)} matchings, expected t*r = {t * r}")
    hits: Counter[int] = Counter()
    for idx, m in enumerate(cover.matchings):
        ids = list(m.edge_ids) if hasattr(m, "edge_ids") else list(m)
        bad = [e for e in ids if not (isinstance(e, int) and 0 <= e < g.m)]
        if bad:
            reasons.append(f"matching {idx} has unknown edge ids {sorted(bad)}")
            continue
        ends = [x for e in ids for x in g.edges[e]]
        if len(ends) != len(set(ends)):
            reasons.append(f"matching {idx} is not a matching")
        elif len(ends) != g.n:
            reasons.append(f"matching {idx} misses {g.n - len(ends)} vertices")
        hits.update(ids)
    wrong = [e for e in range(g.m) if hits[e] != t]
    if wrong:
        e = wrong[0]
        reasons.append(f"{len(wrong)} edges not covered exactly {t} times (edge {e}: {hits[e]})")
    return reasons


def validate_tr_pm(g: Multigraph, cover) -> bool:
    return not check_tr_pm(g, cover)


def check_edge_coloring(g: Multigraph, colors, k: int) -> list[str]:
    reasons = []
    if len(colors) != g.m:
        return [f"{len(colors)} colours for {g.m} edges"]
    if any(not (0 <= c < k) for c in colors):
        reasons.append("colour out of range")
    at: dict[int, Counter] = {v: Counter() for v in range(g.n)}
    for (u, v), c in zip(g.edges, colors):
        at[u][c] += 1
        at[v][c] += 1
    clash = [v for v in range(g.n) if at[v] and max(at[v].values()) > 1]
    if clash:
        reasons.append(f"colour clash at vertices {clash[:5]}")
    return reasons


def odd_cut_violation(g: Multigraph, r: int):
    """First odd vertex set with fewer than ``r`` boundary edges, or ``None``.

    Straight loops over all subsets; only used for re-checking certificates.
    """
    n = g.n
    for size in range(1, n + 1, 2):
        for xs in combinations(range(n), size):
            s = set(xs)
            b = sum(1 for u, v in g.edges if (u in s) != (v in s))
            if b < r:
                return s, b
    return None


def boundary_size(g: Multigraph, side) -> int:
    s = set(side)
    return sum(1 for u, v in g.edges if (u in s) != (v in s))


def _degrees(g: Multigraph) -> list[int]:
    d = [0] * g.n
    for u, v in g.edges:
        d[u] += 1
        d[v] += 1
    return d


def degrees(g: Multigraph) -> list[int]:
    return _degrees(g)
