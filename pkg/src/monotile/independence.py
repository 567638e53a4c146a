"""Exact maximum independent set and triangle-freeness checks.

These are the oracles behind the extremal generators: part graphs must be
triangle-free, and their achieved independence numbers are reported on every
instance.  The solver is a plain branch-and-bound on bitmasks with a greedy
clique-cover bound, which is plenty at part sizes of a few dozen vertices.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .graphs import Graph, iter_bits


@dataclass(frozen=True)
class IndependenceResult:
    alpha: int
    witness: frozenset[int]
    exact: bool
    nodes_expanded: int


def is_triangle_free(g: Graph) -> bool:
    """True iff no edge's endpoints share a neighbor."""
    for u, v in g.edges:
        if g.neighbors_mask(u) & g.neighbors_mask(v):
            return False
    return True


def max_independent_set_exact(g: Graph, budget: Optional[int] = None) -> IndependenceResult:
    """Maximum independent set by branch-and-bound.

    Branches on the highest-degree vertex of the candidate set (ties to the
    smallest id), prunes with a greedy clique-cover bound, and counts work in
    branch-node expansions so budgets reproduce across machines.  On budget
    exhaustion the best witness found so far is returned with exact=False.
    """
    n = g.n
    adj = [g.neighbors_mask(v) for v in range(n)]
    full = (1 << n) - 1

    best_mask = _greedy_independent(adj, full)
    best = best_mask.bit_count()
    nodes = 0
    exhausted = False

    def search(candidates: int, chosen_mask: int, count: int) -> None:
        nonlocal best, best_mask, nodes, exhausted
        if exhausted:
            return
        nodes += 1
        if budget is not None and nodes > budget:
            exhausted = True
            return
        if not candidates:
            if count > best:
                best = count
                best_mask = chosen_mask
            return
        if count + _clique_cover_bound(adj, candidates) <= best:
            return
        v = _branch_vertex(adj, candidates)
        bit = 1 << v
        search(candidates & ~adj[v] & ~bit, chosen_mask | bit, count + 1)
        search(candidates & ~bit, chosen_mask, count)

    search(full, 0, 0)

    witness = frozenset(iter_bits(best_mask))
    for v in witness:
        if adj[v] & best_mask:
            raise AssertionError("independence witness touches an edge")
    return IndependenceResult(
        alpha=best, witness=witness, exact=not exhausted, nodes_expanded=nodes
    )


def _branch_vertex(adj: list[int], candidates: int) -> int:
    best_v = -1
    best_deg = -1
    for v in iter_bits(candidates):
        deg = (adj[v] & candidates).bit_count()
        if deg > best_deg:
            best_deg = deg
            best_v = v
    return best_v


def _greedy_independent(adj: list[int], candidates: int) -> int:
    # ascending-id greedy; seeds the incumbent
    chosen = 0
    while candidates:
        low = candidates & -candidates
        v = low.bit_length() - 1
        chosen |= low
        candidates &= ~adj[v] & ~low
    return chosen


def _clique_cover_bound(adj: list[int], candidates: int) -> int:
    # partition candidates into cliques greedily; the clique count bounds
    # alpha(candidates) from above
    cliques: list[int] = []
    for v in iter_bits(candidates):
        bit = 1 << v
        for i, clique in enumerate(cliques):
            if clique & ~adj[v] == 0:
                cliques[i] = clique | bit
                break
        else:
            cliques.append(bit)
    return len(cliques)
