"""Two-column text format for graphs and colored graphs.

Line 1 is `n m`, then m edge lines: `u v` for uncolored graphs, `u v c` with
c in {r, b} for colored ones.  `#` starts a comment line.  Writers emit edges
in canonical order (u < v, lexicographically sorted).
"""

from __future__ import annotations

from .graphs import BLUE, RED, ColoredGraph, Graph, build_colored_graph


class FormatError(ValueError):
    """Malformed graph text."""


def dump_graph(g: Graph) -> str:
    lines = [f"{g.n} {g.num_edges}"]
    lines.extend(f"{u} {v}" for u, v in g.edges)
    return "\n".join(lines) + "\n"


def dump_colored_graph(cg: ColoredGraph) -> str:
    lines = [f"{cg.n} {cg.graph.num_edges}"]
    lines.extend(f"{u} {v} {c}" for u, v, c in cg.colored_edges)
    return "\n".join(lines) + "\n"


def load_graph_text(text: str):
    """Parse the text format; returns Graph or ColoredGraph by column count."""
    rows = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        rows.append((lineno, line.split()))
    if not rows:
        raise FormatError("empty graph file")
    lineno, header = rows[0]
    if len(header) != 2:
        raise FormatError(f"line {lineno}: header must be `n m`")
    n, m = (_int(lineno, tok) for tok in header)
    body = rows[1:]
    if len(body) != m:
        raise FormatError(f"expected {m} edge lines, found {len(body)}")
    if not body:
        return Graph(n)
    colored = len(body[0][1]) == 3
    edges = []
    for lineno, cols in body:
        if len(cols) != (3 if colored else 2):
            raise FormatError(f"line {lineno}: inconsistent edge columns")
        u, v = _int(lineno, cols[0]), _int(lineno, cols[1])
        if colored:
            c = cols[2]
            if c not in (RED, BLUE):
                raise FormatError(f"line {lineno}: color must be r or b, got {c!r}")
            edges.append((u, v, c))
        else:
            edges.append((u, v))
    try:
        if colored:
            return build_colored_graph(n, edges)
        return Graph(n, edges)
    except ValueError as exc:
        raise FormatError(str(exc)) from exc


def load_colored_graph(text: str) -> ColoredGraph:
    g = load_graph_text(text)
    if isinstance(g, ColoredGraph):
        return g
    if g.num_edges == 0:
        # edgeless files carry no color column; the colored reading is unique
        return build_colored_graph(g.n, [])
    raise FormatError("expected a colored graph (edge lines `u v c`)")


def load_graph(text: str) -> Graph:
    g = load_graph_text(text)
    if isinstance(g, ColoredGraph):
        raise FormatError("expected an uncolored graph (edge lines `u v`)")
    return g


def _int(lineno: int, token: str) -> int:
    try:
        return int(token)
    except ValueError:
        raise FormatError(f"line {lineno}: bad integer {token!r}") from None
