"""Chromatic profiles, bowtie reductions, constrained triangle finding."""

import random
from fractions import Fraction
from itertools import combinations

import pytest

from monotile.errors import ParameterOutOfRangeError
from monotile.generators import (
    circulant,
    complete_graph,
    five_part_instance,
    random_coloring,
)
from monotile.graphs import BLUE, RED, Graph, build_colored_graph
from monotile.theory import (
    ArithmeticConstraintViolatedError,
    CountIdentityViolatedError,
    F2Copy,
    NotPerfectError,
    TooLargeError,
    admissible_C,
    auxiliary_reduction,
    bowtie_graph,
    chromatic_parameters,
    classify_f2_copies,
    f2_tiling_exact,
    five_part_tiler,
    three_part_mono_finder,
)

import oracles


def random_graph(n: int, p: float, seed: int) -> Graph:
    rng = random.Random(seed)
    return Graph(
        n,
        [(u, v) for u in range(n) for v in range(u + 1, n) if rng.random() < p],
    )


def dense_reduction(k: int, seed: int):
    """Seeded dense base whose padding hypothesis holds."""
    rng = random.Random(seed)
    p = 0.66 if k == 20 else 0.62
    for _ in range(300):
        g = Graph(
            k,
            [
                (u, v)
                for u in range(k)
                for v in range(u + 1, k)
                if rng.random() < p
            ],
        )
        d = g.min_degree()
        if 2 * d > k and 5 * d <= 3 * k:
            C = admissible_C(k, d, 0)
            red = auxiliary_reduction(g, C, 0)
            if red.hypothesis_ok:
                return red
    raise AssertionError(f"no usable base graph for k={k}, seed={seed}")


class TestChromaticParameters:
    def test_bowtie_profile(self):
        p = chromatic_parameters(bowtie_graph())
        assert (p.chi, p.sigma) == (3, 1)
        assert p.chi_cr == Fraction(5, 2)
        assert p.hcf_chi == 1
        assert p.hcf_c is None  # connected: no component-order gaps
        assert p.hcf == 1
        assert p.chi_star == Fraction(5, 2)

    def test_triangle_profile(self):
        p = chromatic_parameters(complete_graph(3))
        assert (p.chi, p.sigma) == (3, 1)
        assert p.chi_cr == 3
        assert p.hcf_chi is None  # all classes size 1
        assert p.hcf is None
        assert p.chi_star == 3

    def test_single_edge_profile(self):
        p = chromatic_parameters(Graph(2, [(0, 1)]))
        assert (p.chi, p.sigma) == (2, 1)
        assert p.chi_cr == 2
        assert p.chi_star == 2

    def test_disconnected_components_feed_hcf(self):
        # triangle plus an edge: component orders 3 and 2 differ by 1
        g = Graph(5, [(0, 1), (0, 2), (1, 2), (3, 4)])
        p = chromatic_parameters(g)
        assert p.hcf_c == 1

    def test_two_equal_components_are_inf(self):
        g = Graph(6, [(0, 1), (0, 2), (1, 2), (3, 4), (3, 5), (4, 5)])
        p = chromatic_parameters(g)
        assert p.hcf_c is None

    @pytest.mark.parametrize("seed", range(10))
    def test_chi_sigma_match_brute_force(self, seed):
        g = random_graph(7, 0.5, seed)
        if g.num_edges == 0:
            return
        chi, sigma, diffs = oracles.sigma_and_differences(g)
        p = chromatic_parameters(g)
        assert p.chi == chi
        assert p.sigma == sigma
        nonzero = {x for x in diffs if x}
        if nonzero:
            import math

            assert p.hcf_chi == math.gcd(*nonzero)
        else:
            assert p.hcf_chi is None

    def test_chi_cr_identity(self):
        for seed in range(6):
            g = random_graph(7, 0.6, seed)
            if g.num_edges == 0:
                continue
            p = chromatic_parameters(g)
            assert p.chi_cr == Fraction((p.chi - 1) * g.n, g.n - p.sigma)

    def test_size_limit(self):
        with pytest.raises(TooLargeError):
            chromatic_parameters(Graph(13, [(0, 1)]))

    def test_edgeless_rejected(self):
        with pytest.raises(ValueError):
            chromatic_parameters(Graph(3, []))


class TestAdmissibleC:
    def test_reference_values(self):
        assert admissible_C(60, 33, 0) == Fraction(25, 2)
        assert admissible_C(20, 12, 0) == 10

    def test_out_of_range(self):
        with pytest.raises(ParameterOutOfRangeError):
            admissible_C(20, 10, 0)  # delta <= k/2
        with pytest.raises(ParameterOutOfRangeError):
            admissible_C(20, 13, 0)  # delta > (3/5)k

    @pytest.mark.parametrize(
        "k,delta,c_f2",
        [(60, 33, 0), (20, 12, 0), (25, 13, 0), (40, 22, Fraction(1, 2)), (50, 27, 2)],
    )
    def test_minimality_and_conditions(self, k, delta, c_f2):
        C = admissible_C(k, delta, c_f2)
        w = Fraction(3, 2) * k - Fraction(5, 2) * delta + C
        total = Fraction(5, 2) * k - Fraction(5, 2) * delta + C

        def satisfies(c):
            wv = Fraction(3, 2) * k - Fraction(5, 2) * delta + c
            tv = Fraction(5, 2) * k - Fraction(5, 2) * delta + c
            return (
                c >= Fraction(5, 2) * c_f2 + 10
                and wv.denominator == 1
                and wv >= 0
                and tv.denominator == 1
                and tv % 5 == 0
            )

        assert satisfies(C)
        assert w.denominator == 1 and w >= 0
        assert total % 5 == 0
        # nothing smaller on the half-integer lattice works
        candidate = Fraction(1, 2)
        while candidate < C:
            assert not satisfies(candidate)
            candidate += Fraction(1, 2)


class TestAuxiliaryReduction:
    def test_matching_complement_arithmetic(self):
        # K20 minus a perfect matching: 18-regular, arithmetic-valid at C=25
        edges = [
            (u, v)
            for u in range(20)
            for v in range(u + 1, 20)
            if not (u % 2 == 0 and v == u + 1)
        ]
        g = Graph(20, edges)
        assert g.min_degree() == 18
        red = auxiliary_reduction(g, 25, 0)
        assert red.w_size == 10
        assert red.aux.n == 30

    def test_regular_circulant_degrees(self):
        g = circulant(60, tuple(range(1, 17)) + (30,))
        assert g.min_degree() == 33
        red = auxiliary_reduction(g, Fraction(25, 2), 0)
        assert red.w_size == 20
        assert red.aux.n == 80
        assert red.aux_min_degree == 53

    def test_padding_is_independent_and_complete_to_base(self):
        red = dense_reduction(20, seed=0)
        aux = red.aux
        base = range(red.k)
        for w in red.w_vertices:
            for w2 in red.w_vertices:
                assert not aux.has_edge(w, w2) if w != w2 else True
            for v in base:
                assert aux.has_edge(w, v)

    def test_arithmetic_violation(self):
        g = complete_graph(6)
        with pytest.raises(ArithmeticConstraintViolatedError):
            auxiliary_reduction(g, Fraction(1, 3), 0)

    def test_hypothesis_flag_false_when_padding_starves(self):
        # k=20 with delta=11 forces |W|=15 and a 35-vertex auxiliary graph
        # whose padded degree min(20, 11+15)=20 misses the (3/5)*35 = 21
        # threshold; an 11-regular circulant realizes this deterministically
        g = circulant(20, (1, 2, 3, 4, 5, 10))
        assert g.min_degree() == 11
        red = auxiliary_reduction(g, admissible_C(20, 11, 0), 0)
        assert red.w_size == 15
        assert red.aux.n == 35
        assert red.aux_min_degree == 20
        assert not red.hypothesis_ok


class TestF2Tiling:
    def test_bowtie_itself(self):
        res = f2_tiling_exact(bowtie_graph(), require_perfect=True)
        assert res.perfect
        assert len(res.copies) == 1

    def test_two_disjoint_bowties(self):
        pattern = [(0, 1), (0, 2), (1, 2), (0, 3), (0, 4), (3, 4)]
        g = Graph(10, pattern + [(a + 5, b + 5) for a, b in pattern])
        res = f2_tiling_exact(g, require_perfect=True)
        assert res.perfect
        assert len(res.copies) == 2

    def test_k5_spans_one_copy(self):
        res = f2_tiling_exact(complete_graph(5))
        assert len(res.copies) == 1
        assert res.perfect

    def test_wrong_order_fails_fast(self):
        res = f2_tiling_exact(complete_graph(6), require_perfect=True)
        assert not res.perfect
        assert res.nodes_expanded == 0

    def test_cycle_has_no_copy(self):
        c5 = circulant(5, (1,))
        assert f2_tiling_exact(c5).copies == ()
        assert not f2_tiling_exact(c5, require_perfect=True).perfect

    @pytest.mark.parametrize("seed", range(12))
    def test_max_matches_brute_force(self, seed):
        g = random_graph(10, 0.55, seed)
        res = f2_tiling_exact(g)
        assert res.exact
        assert len(res.copies) == oracles.max_bowtie_packing(g)

    def test_copies_are_valid_and_disjoint(self):
        g = random_graph(12, 0.6, seed=3)
        res = f2_tiling_exact(g)
        used = 0
        for copy in res.copies:
            assert not used & copy.mask
            used |= copy.mask
            (a1, a2), (b1, b2) = copy.wings
            for x, y in [
                (copy.center, a1),
                (copy.center, a2),
                (a1, a2),
                (copy.center, b1),
                (copy.center, b2),
                (b1, b2),
            ]:
                assert g.has_edge(x, y)

    def test_budget_exhaustion(self):
        red = dense_reduction(25, seed=0)
        res = f2_tiling_exact(red.aux, require_perfect=True, budget=10)
        assert not res.exact
        assert not res.perfect


class TestF2Copy:
    def test_wings_sorted_and_distinct(self):
        c = F2Copy(3, ((9, 1), (7, 5)))
        assert c.wings == ((1, 9), (5, 7))
        assert c.vertex_set == frozenset({1, 3, 5, 7, 9})

    def test_overlapping_vertices_rejected(self):
        with pytest.raises(ValueError):
            F2Copy(0, ((0, 1), (2, 3)))
        with pytest.raises(ValueError):
            F2Copy(0, ((1, 2), (2, 3)))


class TestClassification:
    @pytest.mark.parametrize("k", [20, 25])
    def test_pipeline_identities(self, k):
        red = dense_reduction(k, seed=1)
        res = f2_tiling_exact(red.aux, require_perfect=True, budget=500_000)
        assert res.perfect
        cls = classify_f2_copies(
            res.copies, red.w_vertices, red.k, red.delta, red.C
        )
        assert 2 * cls.s + cls.t == red.w_size
        assert 3 * cls.s + 4 * cls.t + 5 * cls.ell == red.k
        assert cls.ell_minus_s == 2 * red.delta - red.k - Fraction(4, 5) * red.C
        assert cls.ell >= cls.lower_guarantee

    def test_degenerate_empty_padding(self):
        # 6-regular circulant on 10 vertices: 3k = 5*delta, so C=0 adds no
        # padding and every copy is padding-free
        g = circulant(10, (1, 2, 3))
        red = auxiliary_reduction(g, 0, 0)
        assert red.w_size == 0
        res = f2_tiling_exact(red.aux, require_perfect=True)
        assert res.perfect
        cls = classify_f2_copies(res.copies, red.w_vertices, red.k, red.delta, red.C)
        assert (cls.s, cls.t, cls.ell) == (0, 0, 2)

    def test_not_perfect_rejected(self):
        copies = (F2Copy(0, ((1, 2), (3, 4))),)
        with pytest.raises(NotPerfectError):
            classify_f2_copies(copies, frozenset(), 10, 6, 0)

    def test_overlapping_copies_rejected(self):
        copies = (
            F2Copy(0, ((1, 2), (3, 4))),
            F2Copy(4, ((5, 6), (7, 8))),
        )
        with pytest.raises(NotPerfectError):
            classify_f2_copies(copies, frozenset(), 9, 5, 0)

    def test_three_padding_vertices_rejected(self):
        # fabricated: one copy swallows five padding vertices, which a true
        # independent padding set cannot do
        copies = (
            F2Copy(5, ((6, 7), (8, 9))),
            F2Copy(0, ((1, 2), (3, 4))),
        )
        with pytest.raises(CountIdentityViolatedError):
            classify_f2_copies(copies, frozenset({5, 6, 7, 8, 9}), 5, 3, 5)


class TestThreePartFinder:
    def qualifying_exists(self, cg, P, Q, S):
        ps, qs, ss = set(P), set(Q), set(S)
        pool = sorted(ps | qs | ss)
        for tri in oracles.mono_triangles(cg):
            vs = set(tri.vertices)
            if not vs <= set(pool):
                continue
            if len(vs & ss) <= 1 and len(vs & ps) <= 2 and len(vs & qs) <= 2:
                return True
        return False

    @pytest.mark.parametrize("seed", range(10))
    def test_complete_answer_matches_enumeration(self, seed):
        rng = random.Random(seed)
        n = 12
        edges = []
        for u in range(n):
            for v in range(u + 1, n):
                if rng.random() < 0.55:
                    edges.append((u, v, RED if rng.random() < 0.5 else BLUE))
        cg = build_colored_graph(n, edges)
        P, Q, S = range(4), range(4, 8), range(8, 12)
        tri = three_part_mono_finder(
            cg, P, Q, S, Fraction(3, 10), Fraction(1, 100)
        )
        assert (tri is not None) == self.qualifying_exists(cg, P, Q, S)
        if tri is not None:
            vs = set(tri.vertices)
            assert len(vs & set(S)) <= 1
            assert len(vs & set(P)) <= 2
            assert len(vs & set(Q)) <= 2

    def test_all_red_blowup(self):
        cg = random_coloring(complete_graph(18), 1.0, seed=0)
        tri = three_part_mono_finder(
            cg,
            range(6),
            range(6, 12),
            range(12, 18),
            Fraction(3, 10),
            Fraction(1, 100),
            alpha_bound=3,
        )
        assert tri is not None
        assert tri.color == RED

    def test_none_without_mono_triangle(self):
        edges = [(u, v, RED) for u in range(4) for v in range(4, 8)]
        cg = build_colored_graph(8, edges)
        assert (
            three_part_mono_finder(
                cg, range(4), range(4, 8), [], Fraction(3, 10), Fraction(1, 100)
            )
            is None
        )

    def test_overlapping_parts_rejected(self):
        cg = build_colored_graph(6, [])
        with pytest.raises(ValueError):
            three_part_mono_finder(
                cg, [0, 1], [1, 2], [3], Fraction(3, 10), Fraction(1, 100)
            )


class TestFivePartTiler:
    @pytest.mark.parametrize("m", [3, 6])
    def test_complete_mono_blowup_reaches_m(self, m):
        inst = five_part_instance(m, 1.0, 1.0, seed=0)
        res = five_part_tiler(inst, Fraction(1, 100))
        assert res.tiling.size == m
        assert res.target_reached
        v1 = inst.part_mask(0)
        for t in res.tiling.triangles:
            assert (t.mask & v1).bit_count() <= 1

    def test_phase_counts_sum(self):
        inst = five_part_instance(8, 1.0, 1.0, seed=2)
        res = five_part_tiler(inst, Fraction(1, 100))
        assert res.phase1_count + res.phase2_count == res.tiling.size

    def test_dense_random_hits_target(self):
        inst = five_part_instance(12, 0.85, 0.5, seed=5)
        res = five_part_tiler(inst, Fraction(1, 25))
        # (1 - sqrt(eps)) * m = 0.8 * 12
        assert res.target_reached == (
            (inst.m - res.tiling.size) ** 2 <= Fraction(1, 25) * inst.m**2
        )

    def test_triangles_respect_blowup_structure(self):
        inst = five_part_instance(6, 0.9, 0.5, seed=7)
        res = five_part_tiler(inst, Fraction(1, 25))
        used = 0
        for t in res.tiling.triangles:
            assert not used & t.mask
            used |= t.mask
