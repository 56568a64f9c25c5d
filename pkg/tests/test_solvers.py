import itertools
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from colorfix.corpus import random_repair, separating_example
from colorfix.errors import MultisetMismatch, SearchCapExceeded
from colorfix.graph import (
    ColoredGraph,
    Graph,
    RepairInstance,
    apply,
    color_class_sizes,
    is_proper,
)
from colorfix.solvers import (
    UNREACHABLE,
    ExchangeDigraph,
    adjacent_swap_optimum,
    cycle_types,
    fix_branch,
    fix_optimum,
    promise_check,
    proper_coloring_with_sizes,
    solve,
    swap_distance_to,
    swap_optimum,
)
from colorfix.verify.oracles import bfs_optimum, fix_optimum_milp, min_hamming, swap_bfs_distances
from strategies import colored_graphs


def k_n(n, r, coloring):
    edges = tuple((u, v) for u in range(n) for v in range(u + 1, n))
    return ColoredGraph(n, edges, r, tuple(coloring))


class TestSeparatingExample:
    g = separating_example().graph

    def test_fix_optimum_is_three(self):
        res = fix_optimum(self.g, k=3)
        assert res.optimum == 3 and res.decision
        assert is_proper(apply(self.g, res.certificate))

    def test_swap_optimum_is_two(self):
        res = swap_optimum(self.g, k=2)
        assert res.optimum == 2 and res.decision
        out = apply(self.g, res.certificate)
        assert is_proper(out) and color_class_sizes(out) == color_class_sizes(self.g)

    def test_two_swap_repair(self):
        from colorfix.graph import Swap

        assert is_proper(apply(self.g, [Swap(0, 2), Swap(2, 1)]))

    def test_fix_branch_agrees(self):
        assert not fix_branch(self.g, 2).decision
        assert fix_branch(self.g, 3).optimum == 3


class TestFixOptimum:
    def test_proper_input_costs_nothing(self):
        assert fix_optimum(k_n(3, 3, (0, 1, 2))).optimum == 0

    def test_k4_with_three_colors_unreachable(self):
        res = fix_optimum(k_n(4, 3, (0, 0, 1, 2)), k=10)
        assert res.optimum is UNREACHABLE and res.decision is False
        assert not res.reachable

    def test_monochromatic_triangle(self):
        assert fix_optimum(k_n(3, 3, (1, 1, 1))).optimum == 2

    def test_bound_hides_optimum(self):
        res = fix_optimum(k_n(3, 3, (1, 1, 1)), k=1, bound=1)
        assert res.optimum is None and res.decision is False

    @given(colored_graphs(max_n=6), st.integers(0, 4))
    def test_bounded_search_is_still_optimal(self, g, b):
        opt = fix_optimum(g).optimum
        got = fix_optimum(g, bound=b).optimum
        assert got == (opt if opt is not UNREACHABLE and opt <= b else None)
        sopt = swap_optimum(g).optimum
        sgot = swap_optimum(g, bound=b).optimum
        assert sgot == (sopt if sopt is not UNREACHABLE and sopt <= b else None)

    def test_cap(self):
        with pytest.raises(SearchCapExceeded):
            fix_optimum(ColoredGraph(5, (), 1, (0,) * 5), cap=4)

    @given(colored_graphs(max_n=6, r=(1, 4)))
    def test_equals_min_hamming(self, g):
        assert fix_optimum(g).optimum == min_hamming(g)

    @settings(max_examples=40)
    @given(colored_graphs(max_n=7, r=(2, 4)))
    def test_equals_milp(self, g):
        assert fix_optimum(g).optimum == fix_optimum_milp(g)

    @given(colored_graphs(max_n=6), st.integers(0, 4))
    def test_certificate_is_valid(self, g, k):
        res = fix_optimum(g, k=k)
        if res.reachable:
            assert len(res.certificate) == res.optimum
            assert is_proper(apply(g, res.certificate))
            assert res.decision == (res.optimum <= k)


class TestFixBranch:
    @given(colored_graphs(max_n=7), st.integers(0, 4))
    def test_matches_fix_optimum(self, g, k):
        opt = fix_optimum(g).optimum
        res = fix_branch(g, k)
        assert res.decision == (opt is not UNREACHABLE and opt <= k)
        if res.decision:
            assert res.optimum == opt
            assert is_proper(apply(g, res.certificate))
        else:
            assert res.optimum is None


class TestSwapDistance:
    def test_cycle_types(self):
        assert cycle_types(2) == ((0, 1),)
        assert sorted(cycle_types(3)) == [(0, 1), (0, 1, 2), (0, 2), (0, 2, 1), (1, 2)]

    def test_rotation_needs_two_swaps(self):
        g = ColoredGraph(3, (), 3, (0, 1, 2))
        assert swap_distance_to(g, (1, 2, 0)) == 2
        assert swap_distance_to(g, (1, 0, 2)) == 1

    def test_multiset_mismatch(self):
        with pytest.raises(MultisetMismatch):
            swap_distance_to(ColoredGraph(2, (), 2, (0, 0)), (0, 1))

    def test_decomposition_is_maximum(self):
        d = ExchangeDigraph.between((0, 1, 0, 1, 2), (1, 0, 1, 2, 0), 3)
        assert d.balanced and d.mismatches == 5
        assert d.max_cycles() == 2 and d.swap_distance() == 3

    @given(st.lists(st.integers(0, 2), min_size=1, max_size=7), st.randoms(use_true_random=False))
    def test_matches_bfs(self, source, rnd):
        target = list(source)
        rnd.shuffle(target)
        dist = swap_bfs_distances(source)
        g = ColoredGraph(len(source), (), 3, tuple(source))
        assert swap_distance_to(g, target) == dist[tuple(target)]


class TestSwapOptimum:
    @settings(max_examples=100)
    @given(colored_graphs(max_n=6))
    def test_matches_bfs_oracle(self, g):
        res = swap_optimum(g)
        oracle = bfs_optimum(g, "swap")
        assert res.optimum == oracle.optimum
        if res.reachable:
            assert len(res.certificate) == res.optimum
            assert is_proper(apply(g, res.certificate))

    def test_unreachable_when_sizes_force_conflict(self):
        g = ColoredGraph(2, ((0, 1),), 2, (0, 0))
        assert swap_optimum(g).optimum is UNREACHABLE
        assert fix_optimum(g).optimum == 1

    @given(colored_graphs(max_n=6))
    def test_at_least_half_fix(self, g):
        s, f = swap_optimum(g).optimum, fix_optimum(g).optimum
        if s is not UNREACHABLE:
            assert f <= 2 * s and s >= (f + 1) // 2


class TestAdjacentSwap:
    @settings(max_examples=60)
    @given(colored_graphs(max_n=6))
    def test_matches_bfs_oracle(self, g):
        assert adjacent_swap_optimum(g).optimum == bfs_optimum(g, "swap", adjacent_only=True).optimum

    def test_path(self):
        g = ColoredGraph(3, ((0, 1), (1, 2)), 2, (0, 0, 1))
        assert adjacent_swap_optimum(g).optimum == 1


class TestPromise:
    def test_holds_for_permuted_proper_coloring(self):
        g = ColoredGraph(4, ((0, 1), (1, 2), (2, 3)), 2, (0, 0, 1, 1))
        assert promise_check(g).holds

    def test_fails_on_chromatic_number(self):
        pc = promise_check(ColoredGraph(3, ((0, 1),), 3, (0, 0, 2)))
        assert not pc and "chromatic number is 2" in pc.diagnosis

    def test_fails_on_class_sizes(self):
        pc = promise_check(ColoredGraph(3, ((0, 1), (0, 2), (1, 2)), 3, (0, 0, 1)))
        assert not pc and "class sizes" in pc.diagnosis

    def test_separating_example(self):
        assert promise_check(separating_example().graph).holds

    @given(colored_graphs(min_n=1, max_n=6))
    def test_feasible_coloring_has_sizes(self, g):
        target = proper_coloring_with_sizes(g)
        if target is None:
            assert swap_optimum(g).optimum is UNREACHABLE
        else:
            out = g.with_coloring(target)
            assert is_proper(out) and color_class_sizes(out) == color_class_sizes(g)


class TestSolve:
    inst = separating_example("swap", 2)

    @pytest.mark.parametrize("mode", ["auto", "brute"])
    def test_swap_modes(self, mode):
        assert solve(self.inst, mode).optimum == 2

    def test_branch_is_fix_only(self):
        with pytest.raises(ValueError):
            solve(self.inst, "branch")

    def test_bfs_oracle_small(self):
        g = ColoredGraph(4, ((0, 1), (2, 3)), 2, (0, 0, 1, 1))
        res = solve(RepairInstance(g, 1, "swap"), "bfs-oracle")
        assert res.optimum == 1 and res.decision

    def test_bfs_oracle_cap(self):
        with pytest.raises(SearchCapExceeded):
            solve(self.inst, "bfs-oracle")

    def test_unknown_mode(self):
        with pytest.raises(ValueError):
            solve(self.inst, "magic")

    def test_modes_agree_on_random_fix(self):
        rng = random.Random(7)
        for _ in range(30):
            inst = random_repair(rng, 6, k=2)
            answers = {solve(inst, m).decision for m in ("auto", "brute", "branch", "bfs-oracle")}
            assert len(answers) == 1

    def test_adjacent_only(self):
        g = ColoredGraph(3, ((0, 1), (1, 2)), 2, (0, 0, 1))
        res = solve(RepairInstance(g, 1, "swap", adjacent_only=True))
        assert res.optimum == 1
