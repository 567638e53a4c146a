"""Instance generators: certified extremal constructions and random fixtures.

The extremal construction splits the vertex set into ell = ceil(n/(n-delta))
parts, the first ell-1 of size n-delta, fills each part with a triangle-free
graph, adds every cross-part edge, and colors edges leaving the first part red
and everything else blue.  No monochromatic triangle can then touch the first
part, which is what the attached upper-bound certificates assert.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .graphs import BLUE, RED, ColoredGraph, Graph, build_colored_graph, enumerate_mono_triangles, mask_of
from .independence import IndependenceResult, is_triangle_free, max_independent_set_exact
from .rationals import rational_json

CIRCULANT_CATALOG_METHOD = "circulant_catalog"
TRIANGLE_FREE_PROCESS_METHOD = "triangle_free_process"
PART_METHODS = (CIRCULANT_CATALOG_METHOD, TRIANGLE_FREE_PROCESS_METHOD)

AVOID_V1 = "AvoidV1"
AVOID_V1_V3 = "AvoidV1AndV3Budget"

# the six dense pairs of the bowtie blow-up shape, in generation order
BOWTIE_PAIRS = ((0, 1), (1, 2), (0, 2), (0, 3), (3, 4), (0, 4))

ALPHA_BUDGET = 200_000


class InfeasibleSizesError(ValueError):
    """Extremal part sizes impossible for the requested (n, delta)."""


def circulant(n: int, connections: tuple[int, ...]) -> Graph:
    edges = set()
    for v in range(n):
        for c in connections:
            u, w = v, (v + c) % n
            if u != w:
                edges.add((min(u, w), max(u, w)))
    return Graph(n, sorted(edges))


def petersen() -> Graph:
    # outer 5-cycle, inner pentagram, spokes
    edges = [(i, (i + 1) % 5) for i in range(5)]
    edges += [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    edges += [(i, 5 + i) for i in range(5)]
    return Graph(10, edges)


def complete_graph(n: int) -> Graph:
    return Graph(n, [(u, v) for u in range(n) for v in range(u + 1, n)])


_CATALOG = {
    5: lambda: circulant(5, (1,)),
    10: petersen,
    13: lambda: circulant(13, (1, 5)),
}


def triangle_free_process(n: int, seed: int) -> Graph:
    """Maximal triangle-free graph from a seeded random edge order.

    Every pair is considered once in shuffled order and added unless the two
    endpoints already share a neighbor; rejected pairs stay blocked because
    edges are never removed, so the result is maximal.
    """
    rng = random.Random(seed)
    pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
    rng.shuffle(pairs)
    adj = [0] * n
    for u, v in pairs:
        if adj[u] & adj[v] == 0:
            adj[u] |= 1 << v
            adj[v] |= 1 << u
    return Graph._from_adj(n, adj)


def triangle_free_low_alpha(
    n: int, method: str = CIRCULANT_CATALOG_METHOD, seed: int = 0
) -> Graph:
    """Triangle-free part graph with small independence number.

    circulant_catalog returns a fixed extremal entry when one exists for n
    (5-cycle, Petersen, the circulant on Z13 with connections {1, 5}) and
    falls back to the process otherwise.
    """
    if method not in PART_METHODS:
        raise ValueError(f"unknown part method {method!r}")
    if n < 1:
        raise ValueError(f"part size must be positive, got {n}")
    if method == CIRCULANT_CATALOG_METHOD and n in _CATALOG:
        return _CATALOG[n]()
    return triangle_free_process(n, seed)


def random_coloring(g: Graph, p_red: float, seed: int) -> ColoredGraph:
    """Color each edge red with probability p_red, independently, seeded."""
    if not 0 <= p_red <= 1:
        raise ValueError(f"p_red must lie in [0, 1], got {p_red}")
    rng = random.Random(seed)
    edges = [
        (u, v, RED if rng.random() < p_red else BLUE) for u, v in g.edges
    ]
    return build_colored_graph(g.n, edges)


def random_bipartite(n_left: int, n_right: int, p: float, seed: int) -> Graph:
    """Random bipartite graph; left side is 0..n_left-1, right side follows."""
    if not 0 <= p <= 1:
        raise ValueError(f"p must lie in [0, 1], got {p}")
    rng = random.Random(seed)
    n = n_left + n_right
    adj = [0] * n
    for u in range(n_left):
        for v in range(n_left, n):
            if rng.random() < p:
                adj[u] |= 1 << v
                adj[v] |= 1 << u
    return Graph._from_adj(n, adj)


@dataclass(frozen=True)
class UpperBoundCertificate:
    """Structural tiling-size bound with the part indices its argument uses.

    AvoidV1: no monochromatic triangle meets part 0, so any tiling fits in
    the other n - |V1| vertices; bound = (n - |V1|) // 3.
    AvoidV1AndV3Budget: in the three-part regime every monochromatic triangle
    additionally uses a vertex of part 2, so bound = |V3| = 2*delta - n
    (requires 2|V3| <= |V2|).
    """

    kind: str
    bound: int
    parts: tuple[int, ...]


@dataclass(frozen=True)
class ExtremalInstance:
    colored_graph: ColoredGraph
    parts: tuple[tuple[int, ...], ...]
    delta_target: int
    part_method: str
    seed: int
    achieved_min_degree: int
    part_alphas: tuple[IndependenceResult, ...]
    certificates: tuple[UpperBoundCertificate, ...]

    @property
    def n(self) -> int:
        return self.colored_graph.n

    @property
    def ell(self) -> int:
        return len(self.parts)

    def part_mask(self, i: int) -> int:
        return mask_of(self.parts[i])

    def best_bound(self) -> int:
        return min(c.bound for c in self.certificates)


def extremal_instance(
    n: int,
    delta_target: int,
    part_method: str = CIRCULANT_CATALOG_METHOD,
    seed: int = 0,
) -> ExtremalInstance:
    """Build the certified extremal instance for (n, delta_target).

    Requires 2*delta_target >= n and delta_target < n; anything else makes
    the mandated part sizes impossible.
    """
    if 2 * delta_target < n:
        raise InfeasibleSizesError(
            f"delta_target {delta_target} below n/2 for n={n}: parts would exceed n"
        )
    if delta_target >= n:
        raise InfeasibleSizesError(
            f"delta_target {delta_target} must be smaller than n={n}"
        )
    base = n - delta_target
    ell = -(-n // base)
    sizes = [base] * (ell - 1) + [n - (ell - 1) * base]
    if sizes[-1] <= 0:
        raise InfeasibleSizesError(f"last part size {sizes[-1]} not positive")

    rng = random.Random(seed)
    part_seeds = [rng.randrange(2**32) for _ in sizes]
    part_graphs = [
        triangle_free_low_alpha(size, part_method, part_seeds[i])
        for i, size in enumerate(sizes)
    ]

    parts = []
    offset = 0
    for size in sizes:
        parts.append(tuple(range(offset, offset + size)))
        offset += size

    edges = []
    for i, pg in enumerate(part_graphs):
        o = parts[i][0]
        for u, v in pg.edges:
            edges.append((o + u, o + v, BLUE))
    for i in range(ell):
        for j in range(i + 1, ell):
            color = RED if i == 0 else BLUE
            for u in parts[i]:
                for v in parts[j]:
                    edges.append((u, v, color))
    cg = build_colored_graph(n, edges)

    achieved = cg.graph.min_degree()
    if achieved < delta_target:
        raise AssertionError("construction fell below its degree target")

    part_alphas = tuple(
        max_independent_set_exact(pg, budget=ALPHA_BUDGET) for pg in part_graphs
    )
    for pg in part_graphs:
        if not is_triangle_free(pg):
            raise AssertionError("part graph is not triangle-free")

    certificates = [
        UpperBoundCertificate(AVOID_V1, (n - sizes[0]) // 3, (0,))
    ]
    if ell == 3:
        v3 = 2 * delta_target - n
        if v3 == sizes[2] and 2 * v3 <= sizes[1]:
            certificates.append(UpperBoundCertificate(AVOID_V1_V3, v3, (1, 2)))

    return ExtremalInstance(
        colored_graph=cg,
        parts=tuple(parts),
        delta_target=delta_target,
        part_method=part_method,
        seed=seed,
        achieved_min_degree=achieved,
        part_alphas=part_alphas,
        certificates=tuple(certificates),
    )


def verify_certificate_premises(inst: ExtremalInstance) -> bool:
    """Exhaustively recheck what the certificates assert about triangles."""
    v1 = inst.part_mask(0)
    triangles = enumerate_mono_triangles(inst.colored_graph)
    if any(t.mask & v1 for t in triangles):
        return False
    for cert in inst.certificates:
        if cert.kind == AVOID_V1:
            if cert.bound != (inst.n - len(inst.parts[0])) // 3:
                return False
        elif cert.kind == AVOID_V1_V3:
            budget_part, capacity_part = cert.parts[1], cert.parts[0]
            v3 = inst.part_mask(budget_part)
            if cert.bound != len(inst.parts[budget_part]):
                return False
            if 2 * len(inst.parts[budget_part]) > len(inst.parts[capacity_part]):
                return False
            if any(not (t.mask & v3) for t in triangles):
                return False
        else:
            return False
    return True


@dataclass
class FivePartInstance:
    """Five parts of size m with the six bowtie pairs randomly filled."""

    colored_graph: ColoredGraph
    parts: tuple[tuple[int, ...], ...]
    m: int
    requested_density: float
    p_red: float
    seed: int
    pair_densities: dict[tuple[int, int], Fraction]

    @property
    def n(self) -> int:
        return self.colored_graph.n

    def part_mask(self, i: int) -> int:
        return mask_of(self.parts[i])


def five_part_instance(
    m: int, density: float, p_red: float, seed: int
) -> FivePartInstance:
    """Random bowtie blow-up fixture: dense pairs per BOWTIE_PAIRS only."""
    if m < 1:
        raise ValueError(f"part size must be positive, got {m}")
    if not 0 < density <= 1:
        raise ValueError(f"density must lie in (0, 1], got {density}")
    if not 0 <= p_red <= 1:
        raise ValueError(f"p_red must lie in [0, 1], got {p_red}")
    rng = random.Random(seed)
    parts = tuple(tuple(range(i * m, (i + 1) * m)) for i in range(5))
    pairs = []
    densities = {}
    for i, j in BOWTIE_PAIRS:
        count = 0
        for u in parts[i]:
            for v in parts[j]:
                if rng.random() < density:
                    pairs.append((u, v))
                    count += 1
        densities[(i, j)] = Fraction(count, m * m)
    edges = [
        (u, v, RED if rng.random() < p_red else BLUE) for u, v in pairs
    ]
    return FivePartInstance(
        colored_graph=build_colored_graph(5 * m, edges),
        parts=parts,
        m=m,
        requested_density=density,
        p_red=p_red,
        seed=seed,
        pair_densities=densities,
    )


def sidecar_text(entries: list[tuple[str, str]]) -> str:
    lines = [f"{key} = {value}" for key, value in entries]
    return "\n".join(lines) + "\n"


def parse_sidecar(text: str) -> dict[str, str]:
    out = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        key, sep, value = line.partition("=")
        if not sep:
            raise ValueError(f"sidecar line {lineno}: expected `key = value`")
        out[key.strip()] = value.strip()
    return out


def extremal_sidecar(inst: ExtremalInstance) -> str:
    part_of_vertex = [0] * inst.n
    for i, part in enumerate(inst.parts):
        for v in part:
            part_of_vertex[v] = i
    entries = [
        ("kind", "extremal"),
        ("n", str(inst.n)),
        ("delta_target", str(inst.delta_target)),
        ("ell", str(inst.ell)),
        ("seed", str(inst.seed)),
        ("part_method", inst.part_method),
        ("achieved_min_degree", str(inst.achieved_min_degree)),
        ("part_sizes", " ".join(str(len(p)) for p in inst.parts)),
        ("part_of_vertex", " ".join(map(str, part_of_vertex))),
    ]
    for i, res in enumerate(inst.part_alphas):
        flag = "exact" if res.exact else "budgeted"
        entries.append((f"alpha_{i}", f"{res.alpha} {flag}"))
    for i, cert in enumerate(inst.certificates):
        parts = ",".join(map(str, cert.parts))
        entries.append(
            (f"certificate_{i}", f"{cert.kind} bound={cert.bound} parts={parts}")
        )
    return sidecar_text(entries)


def five_part_sidecar(inst: FivePartInstance) -> str:
    part_of_vertex = [v // inst.m for v in range(inst.n)]
    entries = [
        ("kind", "five_part"),
        ("m", str(inst.m)),
        ("requested_density", str(inst.requested_density)),
        ("p_red", str(inst.p_red)),
        ("seed", str(inst.seed)),
        ("part_of_vertex", " ".join(map(str, part_of_vertex))),
    ]
    for (i, j), d in sorted(inst.pair_densities.items()):
        entries.append((f"pair_density_{i}_{j}", str(rational_json(d))))
    return sidecar_text(entries)
