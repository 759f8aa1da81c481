"""Plain-text graph format.

::

    graph 4
    # comments start with '#'
    0 1
    0 1          <- repeated lines are parallel edges
    2 3 *3       <- three parallel copies

The writer emits one line per endpoint pair in canonical edge order, using
``*k`` for ``k > 1`` copies, so ``format_graph(parse_graph(s))`` is stable.
"""

from __future__ import annotations

from pathlib import Path

from .errors import GraphFormatError, InvalidArgument
from .multigraph import Multigraph


def parse_graph(text: str) -> Multigraph:
    n = None
    pairs: list[tuple[int, int]] = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if n is None:
            if len(parts) != 2 or parts[0] != "graph":
                raise GraphFormatError(f"line {lineno}: expected 'graph <n>' header")
            try:
                n = int(parts[1])
            except ValueError:
                raise GraphFormatError(f"line {lineno}: bad vertex count {parts[1]!r}") from None
            if n < 0:
                raise GraphFormatError(f"line {lineno}: negative vertex count")
            continue
        if len(parts) not in (2, 3):
            raise GraphFormatError(f"line {lineno}: expected 'u v' or 'u v *k'")
        try:
            u, v = int(parts[0]), int(parts[1])
            k = 1
            if len(parts) == 3:
                if not parts[2].startswith("*"):
                    raise ValueError
                k = int(parts[2][1:])
                if k < 1:
                    raise ValueError
        except ValueError:
            raise GraphFormatError(f"line {lineno}: malformed edge {line!r}") from None
        pairs.extend([(u, v)] * k)
    if n is None:
        raise GraphFormatError("missing 'graph <n>' header")
    try:
        return Multigraph.from_edges(n, pairs)
    except InvalidArgument as exc:
        raise GraphFormatError(str(exc)) from None


def format_graph(g: Multigraph) -> str:
    lines = [f"graph {g.n}"]
    i = 0
    while i < g.m:
        j = i
        while j < g.m and g.edges[j] == g.edges[i]:
            j += 1
        u, v = g.edges[i]
        lines.append(f"{u} {v}" if j - i == 1 else f"{u} {v} *{j - i}")
        i = j
    return "\n".join(lines) + "\n"


def read_graph(path: str | Path) -> Multigraph:
    return parse_graph(Path(path).read_text(encoding="utf-8"))


def write_graph(g: Multigraph, path: str | Path) -> None:
    Path(path).write_text(format_graph(g), encoding="utf-8")
