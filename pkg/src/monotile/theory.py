"""Structural tiling machinery around bowtie factors.

Chromatic tiling profiles (critical chromatic number and the divisibility
parameters deciding the perfect-tiling threshold), the padded auxiliary-graph
reduction whose perfect bowtie tilings certify triangle-tiling counts, the
exact bowtie packer, and the constructive monochromatic-triangle finders used
on three-part and five-part shapes.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Iterable, Optional, Sequence

from .errors import ParameterOutOfRangeError
from .generators import FivePartInstance
from .graphs import (
    BLUE,
    RED,
    WEAK,
    ColoredGraph,
    Graph,
    Tiling,
    Triangle,
    iter_bits,
    mask_of,
)
from .rationals import as_fraction
from .regularity import DegenerateParametersError, t_bound
from .solver import verify_tiling


class TooLargeError(ValueError):
    """Graph too large for exhaustive coloring enumeration."""


class ArithmeticConstraintViolatedError(ValueError):
    """Padding arithmetic (integrality / divisibility) does not work out."""


class NotPerfectError(ValueError):
    """The supplied copies do not form a perfect tiling."""


class CountIdentityViolatedError(ValueError):
    """Copy counts contradict the padding identities; signals a solver bug."""


CHROMATIC_SIZE_LIMIT = 12


@dataclass(frozen=True)
class ChromaticProfile:
    """(chi, sigma, chi_cr, hcf_chi, hcf_c, hcf, chi_star); None encodes infinity."""

    chi: int
    sigma: int
    chi_cr: Fraction
    hcf_chi: Optional[int]
    hcf_c: Optional[int]
    hcf: Optional[int]
    chi_star: Fraction


def bowtie_graph() -> Graph:
    """Two triangles sharing exactly the vertex 0."""
    return Graph(5, [(0, 1), (0, 2), (1, 2), (0, 3), (0, 4), (3, 4)])


def chromatic_parameters(h: Graph) -> ChromaticProfile:
    """Full chromatic tiling profile of a small graph.

    Enumerates every proper chi-coloring, takes sigma as the smallest class
    over all of them, and derives the divisibility parameters from class-size
    differences and component-order differences, with gcd(inf, t) = t.
    chi_star follows chi_cr exactly when hcf = 1 and chi otherwise.
    """
    if h.n > CHROMATIC_SIZE_LIMIT:
        raise TooLargeError(f"profile needs |H| <= {CHROMATIC_SIZE_LIMIT}, got {h.n}")
    if h.n == 0 or h.num_edges == 0:
        raise ValueError("chromatic profile needs at least one edge")
    chi = _chromatic_number(h)
    multisets = _class_size_multisets(h, chi)
    sigma = min(min(sizes) for sizes in multisets)
    class_diffs = {
        abs(a - b) for sizes in multisets for a in sizes for b in sizes
    }
    comp_sizes = _component_sizes(h)
    comp_diffs = {abs(a - b) for a in comp_sizes for b in comp_sizes}
    hcf_chi = _gcd_or_inf(class_diffs - {0})
    hcf_c = _gcd_or_inf(comp_diffs - {0})
    hcf = _gcd_pair(hcf_chi, hcf_c)
    chi_cr = Fraction((chi - 1) * h.n, h.n - sigma)
    chi_star = chi_cr if hcf == 1 else Fraction(chi)
    return ChromaticProfile(chi, sigma, chi_cr, hcf_chi, hcf_c, hcf, chi_star)


def _chromatic_number(h: Graph) -> int:
    n = h.n
    order = sorted(range(n), key=lambda v: (-h.degree(v), v))
    adj = [h.neighbors_mask(v) for v in range(n)]

    def colorable(k: int) -> bool:
        colors = [-1] * n

        def assign(i: int, used: int) -> bool:
            if i == n:
                return True
            v = order[i]
            forbidden = 0
            for u in iter_bits(adj[v]):
                if colors[u] >= 0:
                    forbidden |= 1 << colors[u]
            limit = min(k, used + 1)
            for c in range(limit):
                if forbidden >> c & 1:
                    continue
                colors[v] = c
                if assign(i + 1, max(used, c + 1)):
                    return True
                colors[v] = -1
            return False

        return assign(0, 0)

    for k in range(2, n + 1):
        if colorable(k):
            return k
    raise AssertionError("unreachable: every graph is n-colorable")


def _class_size_multisets(h: Graph, chi: int) -> set[tuple[int, ...]]:
    # unordered proper partitions into exactly chi classes; each partition is
    # visited once because classes are opened in order of their least vertex
    n = h.n
    adj = [h.neighbors_mask(v) for v in range(n)]
    found: set[tuple[int, ...]] = set()
    classes: list[int] = []

    def visit(v: int) -> None:
        if v == n:
            if len(classes) == chi:
                found.add(tuple(sorted(c.bit_count() for c in classes)))
            return
        if len(classes) + (n - v) < chi:
            return
        bit = 1 << v
        for i, cls in enumerate(classes):
            if cls & adj[v] == 0:
                classes[i] = cls | bit
                visit(v + 1)
                classes[i] = cls
        if len(classes) < chi:
            classes.append(bit)
            visit(v + 1)
            classes.pop()

    visit(0)
    if not found:
        raise AssertionError("no proper chi-coloring found at chi")
    return found


def _component_sizes(h: Graph) -> list[int]:
    seen = 0
    sizes = []
    for v in range(h.n):
        if seen >> v & 1:
            continue
        frontier = 1 << v
        comp = 0
        while frontier:
            comp |= frontier
            nxt = 0
            for u in iter_bits(frontier):
                nxt |= h.neighbors_mask(u)
            frontier = nxt & ~comp
        sizes.append(comp.bit_count())
        seen |= comp
    return sizes


def _gcd_or_inf(values: set[int]) -> Optional[int]:
    if not values:
        return None
    return math.gcd(*values)


def _gcd_pair(a: Optional[int], b: Optional[int]) -> Optional[int]:
    # gcd with None as infinity: gcd(inf, t) = t, gcd(inf, inf) = inf
    if a is None:
        return b
    if b is None:
        return a
    return math.gcd(a, b)


def admissible_C(k: int, delta: int, c_f2=0) -> Fraction:
    """Smallest padding margin C compatible with the reduction arithmetic.

    Requires the operative degree window k/2 < delta <= 3k/5.  C must reach
    (5/2)*C_F2 + 10, make (3/2)k - (5/2)delta + C a nonnegative integer, and
    make the padded order (5/2)k - (5/2)delta + C divisible by 5; the search
    walks the residue-compatible progression upward.
    """
    if not (2 * delta > k and 5 * delta <= 3 * k):
        raise ParameterOutOfRangeError(
            f"need k/2 < delta <= 3k/5, got (k={k}, delta={delta})"
        )
    c_f2 = as_fraction(c_f2)
    floor_c = Fraction(5, 2) * c_f2 + 10
    w0 = Fraction(3, 2) * k - Fraction(5, 2) * delta
    # C must cancel w0's fractional part so |W| is an integer
    target_frac = (-w0) % 1
    c = target_frac + max(0, math.ceil(floor_c - target_frac))
    while (w0 + k + c) % 5 != 0:
        c += 1
    return Fraction(c)


@dataclass(frozen=True)
class AuxReduction:
    """Base graph padded with an independent, fully joined vertex set W."""

    base: Graph
    aux: Graph
    C: Fraction
    c_f2: Fraction
    k: int
    delta: int
    w_vertices: tuple[int, ...]
    aux_min_degree: int
    hypothesis_ok: bool  # delta(aux) >= (3/5)|V(aux)| + C_F2

    @property
    def w_size(self) -> int:
        return len(self.w_vertices)


def auxiliary_reduction(r: Graph, C, c_f2=0) -> AuxReduction:
    """Pad r with W new vertices joined to all of V(r), W independent.

    |W| = (3/2)k - (5/2)delta + C must be a nonnegative integer and the
    padded order must be divisible by 5, else the arithmetic constraint
    error is raised.
    """
    C = as_fraction(C)
    c_f2 = as_fraction(c_f2)
    k = r.n
    delta = r.min_degree()
    w_frac = Fraction(3, 2) * k - Fraction(5, 2) * delta + C
    if w_frac.denominator != 1 or w_frac < 0:
        raise ArithmeticConstraintViolatedError(
            f"|W| = {w_frac} is not a nonnegative integer"
        )
    w = int(w_frac)
    total = k + w
    if total % 5:
        raise ArithmeticConstraintViolatedError(
            f"padded order {total} is not divisible by 5"
        )
    all_base = (1 << k) - 1
    adj = [r.neighbors_mask(v) for v in range(k)]
    w_block = ((1 << w) - 1) << k
    adj = [m | w_block for m in adj]
    adj.extend(all_base for _ in range(w))
    aux = Graph._from_adj(total, adj)
    aux_delta = aux.min_degree()
    hypothesis_ok = Fraction(aux_delta) >= Fraction(3, 5) * total + c_f2
    return AuxReduction(
        base=r,
        aux=aux,
        C=C,
        c_f2=c_f2,
        k=k,
        delta=delta,
        w_vertices=tuple(range(k, total)),
        aux_min_degree=aux_delta,
        hypothesis_ok=hypothesis_ok,
    )


@dataclass(frozen=True)
class F2Copy:
    """A bowtie: two triangles sharing exactly the center vertex."""

    center: int
    wings: tuple[tuple[int, int], tuple[int, int]]

    def __post_init__(self):
        wings = tuple(tuple(sorted(w)) for w in self.wings)
        object.__setattr__(self, "wings", tuple(sorted(wings)))
        if len(self.vertex_set) != 5:
            raise ValueError(f"bowtie vertices not distinct: {self}")

    @property
    def vertex_set(self) -> frozenset[int]:
        (a, b), (c, d) = self.wings
        return frozenset((self.center, a, b, c, d))

    @property
    def mask(self) -> int:
        return mask_of(self.vertex_set)


@dataclass(frozen=True)
class F2TilingResult:
    copies: tuple[F2Copy, ...]
    perfect: bool
    exact: bool
    nodes_expanded: int


def _edges_inside(adj: list[int], inside: int) -> Iterable[tuple[int, int]]:
    for a in iter_bits(inside):
        for b in iter_bits(adj[a] & inside >> (a + 1) << (a + 1)):
            yield a, b


def _copies_through(adj: list[int], v: int, avail: int) -> Iterable[F2Copy]:
    # all bowties using v with every vertex in avail, each generated once
    bit = 1 << v
    rest = avail & ~bit
    # v as center: two disjoint edges inside N(v)
    wing_edges = list(_edges_inside(adj, adj[v] & rest))
    for i, (a, b) in enumerate(wing_edges):
        pair_mask = 1 << a | 1 << b
        for c, d in wing_edges[i + 1 :]:
            if pair_mask & (1 << c | 1 << d) == 0:
                yield F2Copy(v, ((a, b), (c, d)))
    # v in a wing: partner b, center c adjacent to both, other wing avoiding all
    for b in iter_bits(adj[v] & rest):
        pair_mask = bit | 1 << b
        for c in iter_bits(adj[v] & adj[b] & rest & ~pair_mask):
            others = adj[c] & rest & ~pair_mask & ~(1 << c)
            for d, e in _edges_inside(adj, others):
                yield F2Copy(c, ((v, b), (d, e)))


def f2_tiling_exact(
    g: Graph, require_perfect: bool = False, budget: Optional[int] = None
) -> F2TilingResult:
    """Maximum (or perfect) vertex-disjoint bowtie packing by branch-and-bound.

    Branches on the most constrained free vertex (fewest free neighbours,
    ties to the lowest id): cover it with one of its bowties, generated
    lazily, or (maximum mode only) discard it.  require_perfect fails fast
    when the order is not divisible by 5 and reports perfect=False in-band
    when the search space is exhausted.
    """
    n = g.n
    full = (1 << n) - 1
    if require_perfect and n % 5:
        return F2TilingResult((), False, True, 0)
    adj = [g.neighbors_mask(v) for v in range(n)]

    # A maximal independent set gives a packing bound: any bowtie copy has
    # at most two vertices in an independent set, hence at least three
    # outside it.
    anchor = 0
    for v in sorted(range(n), key=lambda u: (adj[u].bit_count(), u)):
        if not adj[v] & anchor:
            anchor |= 1 << v

    best: list[F2Copy] = []
    nodes = 0
    exhausted = False
    done = False

    def rec(blocked: int, chosen: list[F2Copy]) -> None:
        nonlocal best, nodes, exhausted, done
        if done or exhausted:
            return
        nodes += 1
        if budget is not None and nodes > budget:
            exhausted = True
            return
        free = full & ~blocked
        if not free:
            if len(chosen) > len(best):
                best = list(chosen)
            if require_perfect:
                done = True
            return
        limit = min(free.bit_count() // 5, (free & ~anchor).bit_count() // 3)
        if require_perfect:
            if limit < free.bit_count() // 5:
                return
        else:
            if len(chosen) > len(best):
                best = list(chosen)
            if len(chosen) + limit <= len(best):
                return
        v = min(iter_bits(free), key=lambda u: (adj[u] & free).bit_count())
        for copy in _copies_through(adj, v, free):
            rec(blocked | copy.mask, chosen + [copy])
            if done or exhausted:
                return
        if not require_perfect:
            rec(blocked | 1 << v, chosen)

    rec(0, [])
    perfect = len(best) * 5 == n
    if require_perfect and not (perfect and done):
        return F2TilingResult((), False, not exhausted, nodes)
    return F2TilingResult(tuple(best), perfect, not exhausted, nodes)


@dataclass(frozen=True)
class F2Classification:
    """Perfect-tiling copy counts by padding usage, plus derived identities."""

    s: int  # copies using two padding vertices
    t: int  # copies using one
    ell: int  # copies inside the base graph
    ell_minus_s: Fraction
    lower_guarantee: Fraction  # 2*delta - k - C; ell must reach it


def classify_f2_copies(
    tiling: Sequence[F2Copy], W: Iterable[int], k: int, delta: int, C
) -> F2Classification:
    """Count a perfect tiling's copies by padding usage and check identities.

    Validates that the copies exactly cover the padded vertex set, that no
    copy uses three padding vertices (impossible since W is independent and
    a bowtie's independence number is 2), and that the counts satisfy
    2s + t = |W| and 3s + 4t + 5*ell = k together with the eliminated form
    ell - s = 2*delta - k - (4/5)C.
    """
    C = as_fraction(C)
    w_set = frozenset(W)
    total = k + len(w_set)
    covered: set[int] = set()
    count = 0
    for copy in tiling:
        vs = copy.vertex_set
        if covered & vs:
            raise NotPerfectError("copies overlap")
        covered |= vs
        count += 1
    if covered != set(range(total)):
        raise NotPerfectError(
            f"copies cover {len(covered)} of {total} padded vertices"
        )
    s = t = ell = 0
    for copy in tiling:
        in_w = len(copy.vertex_set & w_set)
        if in_w == 0:
            ell += 1
        elif in_w == 1:
            t += 1
        elif in_w == 2:
            s += 1
        else:
            raise CountIdentityViolatedError(
                f"copy uses {in_w} padding vertices; the padding set is independent"
            )
    if 2 * s + t != len(w_set):
        raise CountIdentityViolatedError(
            f"2s + t = {2 * s + t} but |W| = {len(w_set)}"
        )
    if 3 * s + 4 * t + 5 * ell != k:
        raise CountIdentityViolatedError(
            f"3s + 4t + 5*ell = {3 * s + 4 * t + 5 * ell} but k = {k}"
        )
    if Fraction(len(w_set)) != Fraction(3, 2) * k - Fraction(5, 2) * delta + C:
        raise CountIdentityViolatedError(
            f"|W| = {len(w_set)} inconsistent with (3/2)k - (5/2)delta + C"
        )
    derived = 2 * delta - k - Fraction(4, 5) * C
    if Fraction(ell - s) != derived:
        raise CountIdentityViolatedError(
            f"ell - s = {ell - s} but the identities give {derived}"
        )
    guarantee = 2 * delta - k - C
    if ell < guarantee:
        raise CountIdentityViolatedError(
            f"ell = {ell} below the guaranteed {guarantee}"
        )
    return F2Classification(
        s=s, t=t, ell=ell, ell_minus_s=Fraction(ell - s), lower_guarantee=Fraction(guarantee)
    )


def _qualifies(tri: Triangle, p_mask: int, q_mask: int, s_mask: int) -> bool:
    m = tri.mask
    inside = p_mask | q_mask | s_mask
    return (
        m & inside == m
        and (m & s_mask).bit_count() <= 1
        and (m & p_mask).bit_count() <= 2
        and (m & q_mask).bit_count() <= 2
    )


def three_part_mono_finder(
    cg: ColoredGraph,
    P: Iterable[int],
    Q: Iterable[int],
    S: Iterable[int],
    beta,
    eps,
    alpha_bound: Optional[int] = None,
    budget: Optional[int] = None,
) -> Optional[Triangle]:
    """Monochromatic triangle meeting P, Q, S with bounded part usage.

    The returned triangle lies inside P ∪ Q ∪ S, uses at most one vertex of
    S and at most two of each of P and Q.  Search follows the constructive
    strategy: dominating vertices of S partition P and Q by edge color and
    their classes are scanned for same-color edges; then transversal
    triangles through S vertices are tried; finally direct enumeration
    (capped at `budget` triples when given) settles existence.  Every
    returned triangle is re-validated, and with budget=None the answer
    matches exhaustive enumeration.
    """
    p_mask = mask_of(P)
    q_mask = mask_of(Q)
    s_mask = mask_of(S)
    if p_mask & q_mask or p_mask & s_mask or q_mask & s_mask:
        raise ValueError("P, Q, S must be pairwise disjoint")
    beta = as_fraction(beta)
    eps = as_fraction(eps)

    tri = _dominating_path(cg, p_mask, q_mask, s_mask, beta, eps, alpha_bound)
    if tri is None:
        tri = _transversal_path(cg, p_mask, q_mask, s_mask)
    if tri is None:
        tri = _enumeration_fallback(cg, p_mask, q_mask, s_mask, budget)
    if tri is not None and not _qualifies(tri, p_mask, q_mask, s_mask):
        raise AssertionError("finder produced a triangle violating distribution")
    return tri


def _dominating_path(
    cg: ColoredGraph,
    p_mask: int,
    q_mask: int,
    s_mask: int,
    beta: Fraction,
    eps: Fraction,
    alpha_bound: Optional[int],
) -> Optional[Triangle]:
    # pick up to h dominating vertices of S; their red/blue classes inside P
    # (then Q) are scanned for a same-color edge, closing a triangle with the
    # dominating vertex
    try:
        h = t_bound(beta - eps, eps)
    except DegenerateParametersError:
        return None
    for side_mask in (p_mask, q_mask):
        uncovered = side_mask
        picks = 0
        for u in iter_bits(s_mask):
            if picks >= h or not uncovered:
                break
            red_class = cg.red_mask(u) & uncovered
            blue_class = cg.blue_mask(u) & uncovered
            if not (red_class | blue_class):
                continue
            picks += 1
            uncovered &= ~(red_class | blue_class)
            for cls, adj in ((red_class, cg._red), (blue_class, cg._blue)):
                if alpha_bound is not None and cls.bit_count() <= alpha_bound:
                    continue
                edge = _first_edge_in(adj, cls)
                if edge is not None:
                    x, y = edge
                    color = RED if adj is cg._red else BLUE
                    return Triangle((u, x, y), color)
    return None


def _transversal_path(
    cg: ColoredGraph, p_mask: int, q_mask: int, s_mask: int
) -> Optional[Triangle]:
    # S-vertex with a same-color edge between its P- and Q-neighborhoods
    for v in iter_bits(s_mask):
        for adj, color in ((cg._red, RED), (cg._blue, BLUE)):
            pn = adj[v] & p_mask
            qn = adj[v] & q_mask
            if not pn or not qn:
                continue
            for p in iter_bits(pn):
                hit = adj[p] & qn
                if hit:
                    q = (hit & -hit).bit_length() - 1
                    return Triangle((v, p, q), color)
    return None


def _enumeration_fallback(
    cg: ColoredGraph, p_mask: int, q_mask: int, s_mask: int, budget: Optional[int]
) -> Optional[Triangle]:
    inside = p_mask | q_mask | s_mask
    examined = 0
    verts = list(iter_bits(inside))
    for a, b, c in combinations(verts, 3):
        if budget is not None:
            examined += 1
            if examined > budget:
                return None
        g = cg.graph
        if not (g.has_edge(a, b) and g.has_edge(a, c) and g.has_edge(b, c)):
            continue
        colors = {cg.color_of(a, b), cg.color_of(a, c), cg.color_of(b, c)}
        if len(colors) != 1:
            continue
        tri = Triangle((a, b, c), colors.pop())
        if _qualifies(tri, p_mask, q_mask, s_mask):
            return tri
    return None


def _first_edge_in(adj: list[int], inside: int) -> Optional[tuple[int, int]]:
    for x in iter_bits(inside):
        hit = adj[x] & inside >> (x + 1) << (x + 1)
        if hit:
            return x, (hit & -hit).bit_length() - 1
    return None


@dataclass(frozen=True)
class FivePartTilingResult:
    tiling: Tiling
    target_reached: bool  # size >= (1 - sqrt(eps)) * m
    phase1_count: int
    phase2_count: int


def five_part_tiler(inst: FivePartInstance, eps) -> FivePartTilingResult:
    """Tile a five-part instance with part-constrained monochromatic triangles.

    Phase 1 works on (V1, V2, V3) with at most one vertex per triangle in V1;
    if V1 keeps at least sqrt(eps)*m vertices afterward, phase 2 continues on
    (V1', V4, V5) the same way.  Reports whether the combined tiling reached
    (1 - sqrt(eps)) * m triangles.
    """
    eps = as_fraction(eps)
    m = inst.m
    cg = inst.colored_graph
    beta1 = min(
        inst.pair_densities[(0, 1)],
        inst.pair_densities[(1, 2)],
        inst.pair_densities[(0, 2)],
    )
    beta2 = min(
        inst.pair_densities[(0, 3)],
        inst.pair_densities[(3, 4)],
        inst.pair_densities[(0, 4)],
    )
    used = 0
    triangles: list[Triangle] = []

    def run_phase(s_mask: int, p_mask: int, q_mask: int, beta: Fraction) -> int:
        nonlocal used
        count = 0
        while True:
            tri = three_part_mono_finder(
                cg,
                iter_bits(p_mask & ~used),
                iter_bits(q_mask & ~used),
                iter_bits(s_mask & ~used),
                beta,
                eps,
            )
            if tri is None:
                return count
            triangles.append(tri)
            used |= tri.mask
            count += 1

    v1 = inst.part_mask(0)
    phase1 = run_phase(v1, inst.part_mask(1), inst.part_mask(2), beta1)
    v1_left = (v1 & ~used).bit_count()
    phase2 = 0
    if Fraction(v1_left * v1_left) >= eps * m * m:
        phase2 = run_phase(v1, inst.part_mask(3), inst.part_mask(4), beta2)

    tiling = Tiling(tuple(sorted(triangles, key=lambda t: t.vertices)), WEAK)
    if not verify_tiling(cg, tiling):
        raise AssertionError("five-part tiler produced an invalid tiling")
    short = m - tiling.size
    target = short <= 0 or Fraction(short * short) <= eps * m * m
    return FivePartTilingResult(
        tiling=tiling,
        target_reached=target,
        phase1_count=phase1,
        phase2_count=phase2,
    )
