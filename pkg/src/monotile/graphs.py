"""Colored-graph core: bitmask adjacency, color-class views, triangle scans.

Vertices are dense ids 0..n-1 and every vertex set is a Python int used as a
bit vector, so neighborhood intersections are single AND operations.  Graphs
and colorings are immutable after construction.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator, Optional, Sequence

RED = "r"
BLUE = "b"
MIXED = "mixed"

WEAK = "weak"
STRONG = "strong"

MODES = (WEAK, STRONG)


class GraphError(ValueError):
    """Invalid graph construction input."""


class SelfLoopError(GraphError):
    pass


class DuplicateEdgeError(GraphError):
    pass


class VertexOutOfRangeError(GraphError):
    pass


def iter_bits(mask: int) -> Iterator[int]:
    """Yield the set bit positions of mask in ascending order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def mask_of(vertices: Iterable[int]) -> int:
    m = 0
    for v in vertices:
        m |= 1 << v
    return m


class Graph:
    """Immutable undirected simple graph on vertices 0..n-1."""

    __slots__ = ("n", "_adj", "_edges")

    def __init__(self, n: int, edges: Iterable[tuple[int, int]] = ()):
        if n < 0:
            raise VertexOutOfRangeError(f"negative vertex count {n}")
        adj = [0] * n
        for u, v in edges:
            _check_edge(n, u, v)
            if adj[u] >> v & 1:
                raise DuplicateEdgeError(f"duplicate edge ({u}, {v})")
            adj[u] |= 1 << v
            adj[v] |= 1 << u
        self.n = n
        self._adj = adj
        self._edges: Optional[tuple[tuple[int, int], ...]] = None

    @classmethod
    def _from_adj(cls, n: int, adj: list[int]) -> "Graph":
        # trusted constructor: adj must already be symmetric and loop-free
        g = cls.__new__(cls)
        g.n = n
        g._adj = adj
        g._edges = None
        return g

    def neighbors_mask(self, v: int) -> int:
        return self._adj[v]

    def neighbors(self, v: int) -> list[int]:
        return list(iter_bits(self._adj[v]))

    def degree(self, v: int) -> int:
        return self._adj[v].bit_count()

    def min_degree(self) -> int:
        if self.n == 0:
            raise GraphError("minimum degree of the empty graph is undefined")
        return min(m.bit_count() for m in self._adj)

    def has_edge(self, u: int, v: int) -> bool:
        _check_edge(self.n, u, v)
        return bool(self._adj[u] >> v & 1)

    @property
    def edges(self) -> tuple[tuple[int, int], ...]:
        if self._edges is None:
            out = []
            for u in range(self.n):
                for v in iter_bits(self._adj[u] >> (u + 1)):
                    out.append((u, u + 1 + v))
            self._edges = tuple(out)
        return self._edges

    @property
    def num_edges(self) -> int:
        return sum(m.bit_count() for m in self._adj) // 2

    @property
    def vertices(self) -> range:
        return range(self.n)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Graph)
            and self.n == other.n
            and self._adj == other._adj
        )

    def __hash__(self):
        return hash((self.n, tuple(self._adj)))

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, m={self.num_edges})"


def _check_edge(n: int, u: int, v: int) -> None:
    if not (0 <= u < n and 0 <= v < n):
        raise VertexOutOfRangeError(f"edge ({u}, {v}) outside 0..{n - 1}")
    if u == v:
        raise SelfLoopError(f"self-loop at {u}")


class ColoredGraph:
    """Graph with a total red/blue edge coloring.

    The red and blue edge sets partition E(G); partial colorings are rejected
    at construction.
    """

    __slots__ = ("graph", "_red", "_blue", "_colored_edges")

    def __init__(self, graph: Graph, red: list[int], blue: list[int]):
        self.graph = graph
        self._red = red
        self._blue = blue
        self._colored_edges: Optional[tuple[tuple[int, int, str], ...]] = None

    @property
    def n(self) -> int:
        return self.graph.n

    def red_mask(self, v: int) -> int:
        return self._red[v]

    def blue_mask(self, v: int) -> int:
        return self._blue[v]

    def color_of(self, u: int, v: int) -> str:
        if not self.graph.has_edge(u, v):
            raise GraphError(f"no edge ({u}, {v})")
        return RED if self._red[u] >> v & 1 else BLUE

    @property
    def colored_edges(self) -> tuple[tuple[int, int, str], ...]:
        if self._colored_edges is None:
            self._colored_edges = tuple(
                (u, v, RED if self._red[u] >> v & 1 else BLUE)
                for u, v in self.graph.edges
            )
        return self._colored_edges

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, ColoredGraph)
            and self.graph == other.graph
            and self._red == other._red
        )

    def __hash__(self):
        return hash((self.graph, tuple(self._red)))

    def __repr__(self) -> str:
        nred = sum(m.bit_count() for m in self._red) // 2
        return f"ColoredGraph(n={self.n}, red={nred}, blue={self.graph.num_edges - nred})"


def build_colored_graph(
    n: int, edges: Sequence[tuple[int, int, str]]
) -> ColoredGraph:
    """Build a ColoredGraph from (u, v, color) triples.

    Rejects self-loops, duplicate edges (in either order) and colors outside
    {"r", "b"}.
    """
    adj = [0] * n
    red = [0] * n
    blue = [0] * n
    for u, v, color in edges:
        _check_edge(n, u, v)
        if adj[u] >> v & 1:
            raise DuplicateEdgeError(f"duplicate edge ({u}, {v})")
        adj[u] |= 1 << v
        adj[v] |= 1 << u
        if color == RED:
            red[u] |= 1 << v
            red[v] |= 1 << u
        elif color == BLUE:
            blue[u] |= 1 << v
            blue[v] |= 1 << u
        else:
            raise GraphError(f"edge color must be {RED!r} or {BLUE!r}, got {color!r}")
    return ColoredGraph(Graph._from_adj(n, adj), red, blue)


def color_class_views(cg: ColoredGraph) -> tuple[Graph, Graph]:
    """Spanning red and blue subgraphs; their edge sets partition E(G)."""
    red = Graph._from_adj(cg.n, list(cg._red))
    blue = Graph._from_adj(cg.n, list(cg._blue))
    return red, blue


@dataclass(frozen=True)
class Triangle:
    """A vertex triple tagged with its edge-color pattern.

    Mixed triangles are representable for diagnostics but never valid inside
    a Tiling.
    """

    vertices: tuple[int, int, int]
    color: str

    def __post_init__(self):
        a, b, c = sorted(self.vertices)
        if a == b or b == c:
            raise GraphError(f"degenerate triangle {self.vertices}")
        object.__setattr__(self, "vertices", (a, b, c))
        if self.color not in (RED, BLUE, MIXED):
            raise GraphError(f"bad triangle color {self.color!r}")

    @property
    def mask(self) -> int:
        a, b, c = self.vertices
        return 1 << a | 1 << b | 1 << c


@dataclass(frozen=True)
class Tiling:
    """Vertex-disjoint monochromatic triangles; see verify_tiling for checks."""

    triangles: tuple[Triangle, ...]
    mode: str

    def __post_init__(self):
        if self.mode not in MODES:
            raise GraphError(f"bad tiling mode {self.mode!r}")
        object.__setattr__(self, "triangles", tuple(self.triangles))

    @property
    def size(self) -> int:
        return len(self.triangles)

    def __len__(self) -> int:
        return len(self.triangles)


def triangle_in(cg: ColoredGraph, a: int, b: int, c: int) -> Triangle:
    """Triangle record for an actual triangle of cg, color computed from edges."""
    for u, v in ((a, b), (a, c), (b, c)):
        if not cg.graph.has_edge(u, v):
            raise GraphError(f"({a},{b},{c}) is not a triangle: missing edge ({u},{v})")
    colors = {cg.color_of(a, b), cg.color_of(a, c), cg.color_of(b, c)}
    color = colors.pop() if len(colors) == 1 else MIXED
    return Triangle((a, b, c), color)


def scan_mono_triangles(
    cg: ColoredGraph, live: Optional[int] = None
) -> Iterator[Triangle]:
    """Monochromatic triangles in canonical (lexicographic) order.

    live restricts the scan to an induced vertex subset given as a bitmask.
    """
    if live is None:
        live = (1 << cg.n) - 1
    red = cg._red
    blue = cg._blue
    for u in iter_bits(live):
        for adj, color in ((red, RED), (blue, BLUE)):
            higher_u = adj[u] & live >> (u + 1) << (u + 1)
            for v in iter_bits(higher_u):
                common = higher_u & adj[v]
                for w in iter_bits(common >> (v + 1)):
                    yield Triangle((u, v, v + 1 + w), color)


def enumerate_mono_triangles(
    cg: ColoredGraph, limit: Optional[int] = None
) -> list[Triangle]:
    """All (or the first limit) monochromatic triangles, canonical order."""
    out = []
    for tri in _merged_mono_scan(cg):
        out.append(tri)
        if limit is not None and len(out) >= limit:
            break
    return out


def _merged_mono_scan(cg: ColoredGraph, live: Optional[int] = None) -> Iterator[Triangle]:
    # scan_mono_triangles emits per-anchor red before blue; re-sort the few
    # triangles sharing an anchor pair so the global order is lexicographic
    pending: list[Triangle] = []
    last_u = -1
    for tri in scan_mono_triangles(cg, live):
        u = tri.vertices[0]
        if u != last_u:
            pending.sort(key=lambda t: t.vertices)
            yield from pending
            pending = []
            last_u = u
        pending.append(tri)
    pending.sort(key=lambda t: t.vertices)
    yield from pending


def first_mono_triangle(cg: ColoredGraph, live: Optional[int] = None) -> Optional[Triangle]:
    """Canonically first monochromatic triangle within live, or None."""
    best: Optional[Triangle] = None
    for tri in scan_mono_triangles(cg, live):
        if best is None or tri.vertices < best.vertices:
            best = tri
    return best


def mono_triangle_witness(
    cg: ColoredGraph,
    u: int,
    v: Optional[int] = None,
    alpha_bound: Optional[int] = None,
) -> Optional[Triangle]:
    """Find a monochromatic triangle through u (or through the pair u, v).

    Single-vertex form: returns a triangle u,x,y with xy inside one of u's
    color neighborhoods, absent when neither N_R(u) nor N_B(u) spans an edge
    of its own color.  Two-vertex form: searches N_R(u) and N_B(v) jointly;
    when alpha_bound is supplied the search only runs if the intersection has
    more than alpha_bound vertices (an independence-number premise that forces
    an edge), and any red edge xy gives the red triangle u,x,y while a blue
    edge xy gives the blue triangle v,x,y.
    """
    n = cg.n
    if not 0 <= u < n:
        raise VertexOutOfRangeError(f"vertex {u} outside 0..{n - 1}")
    if v is None:
        for adj, color in ((cg._red, RED), (cg._blue, BLUE)):
            found = _first_edge_inside(adj, adj[u])
            if found is not None:
                return Triangle((u,) + found, color)
        return None
    if not 0 <= v < n:
        raise VertexOutOfRangeError(f"vertex {v} outside 0..{n - 1}")
    if v == u:
        raise GraphError("two-vertex witness needs distinct vertices")
    common = cg._red[u] & cg._blue[v]
    if alpha_bound is not None and common.bit_count() < alpha_bound + 1:
        return None
    for x in iter_bits(common):
        rest = common >> (x + 1) << (x + 1)
        red_hit = cg._red[x] & rest
        blue_hit = cg._blue[x] & rest
        hit = red_hit | blue_hit
        if hit:
            y = (hit & -hit).bit_length() - 1
            if red_hit >> y & 1:
                return Triangle((u, x, y), RED)
            return Triangle((v, x, y), BLUE)
    return None


def _first_edge_inside(adj: list[int], inside: int) -> Optional[tuple[int, int]]:
    # lexicographically first pair x<y with x,y in `inside` and xy an adj-edge
    for x in iter_bits(inside):
        hit = adj[x] & inside >> (x + 1) << (x + 1)
        if hit:
            return x, (hit & -hit).bit_length() - 1
    return None
