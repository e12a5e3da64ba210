import math
from fractions import Fraction

import pytest

from movnet import gadgets
from movnet.diffusion import enumerate_live_graphs, influenced_sets, revise_scores, tally
from movnet.evaluate import (
    delta_mov_seeding,
    expected_mov,
)
from movnet.model import EMPTY_ASSIGNMENT, SeedAssignment, delta, epsilon, validate

ALL_GENERATORS = [
    ("clique", lambda: gadgets.demo_clique()),
    ("diamond", lambda: gadgets.demo_diamond()),
    ("trap paths", lambda: gadgets.greedy_trap_paths()),
    ("trap trees r=4", lambda: gadgets.greedy_trap_trees(4)),
    ("covering seeding", lambda: gadgets.setcover_seeding(
        gadgets.SetCover.of(3, [{0, 1}, {1, 2}], 2))),
    ("partition", lambda: gadgets.partition_lines(
        gadgets.PartitionMultiset((1, 1, 2, 2), 2))),
    ("dks", lambda: gadgets.dks_seeding(
        gadgets.UndirectedGraph.of(3, [(0, 1), (1, 2)]), 2)),
    ("msi removal", lambda: gadgets.msi_removal(
        gadgets.MSI.of(3, [{0, 1}, {1, 2}, {0, 2}], 2), 3)),
    ("indepset removal", lambda: gadgets.independent_set_removal(
        gadgets.UndirectedGraph.of(3, [(0, 1), (1, 2)]))),
    ("covering removal", lambda: gadgets.setcover_removal(
        gadgets.SetCover.of(2, [{0}, {1}], 2))),
    ("maxcover addition", lambda: gadgets.maxcover_addition(
        gadgets.MaxCover.of(2, [{0}, {1}], 2))),
    ("covering addition single", lambda: gadgets.setcover_addition_single(
        gadgets.SetCover.of(2, [{0}, {1}], 2))),
    ("covering addition multi", lambda: gadgets.setcover_addition_multi(
        gadgets.SetCover.of(2, [{0}, {1}], 2))),
]


class TestEveryGenerator:
    @pytest.mark.parametrize("name,build", ALL_GENERATORS)
    def test_validates_clean(self, name, build):
        assert validate(build().instance) == []

    @pytest.mark.parametrize("name,build", ALL_GENERATORS)
    def test_byte_identical_reruns(self, name, build):
        from movnet.model import instance_to_json
        assert instance_to_json(build().instance) == \
            instance_to_json(build().instance)


class TestCombinatorialSolvers:
    def test_set_cover_exists(self):
        sc = gadgets.SetCover.of(3, [{0, 1}, {1, 2}, {0, 2}], 2)
        assert gadgets.set_cover_exists(sc)
        assert not gadgets.set_cover_exists(
            gadgets.SetCover.of(3, [{0, 1}, {1, 2}, {0, 2}], 1))

    def test_msi_optimum(self):
        m = gadgets.MSI.of(3, [{0, 1}, {1, 2}, {0, 2}], 2)
        assert gadgets.msi_optimum(m) == 1

    def test_max_independent_set(self):
        assert gadgets.max_independent_set(
            gadgets.UndirectedGraph.of(4, [(0, 1), (1, 2), (2, 3)])) == 2
        assert gadgets.max_independent_set(
            gadgets.UndirectedGraph.of(3, [(0, 1), (1, 2), (0, 2)])) == 1

    def test_max_cover_optimum(self):
        m = gadgets.MaxCover.of(3, [{0, 1}, {2}, {0}], 2)
        assert gadgets.max_cover_optimum(m) == 3

    def test_densest_subgraph(self):
        g = gadgets.UndirectedGraph.of(4, [(0, 1), (1, 2), (0, 2), (2, 3)])
        assert gadgets.densest_subgraph_value(g, 3) == 3


class TestCoveringSeedingLayout:
    def test_initial_votes_and_margin(self):
        sc = gadgets.SetCover.of(3, [{0, 1}, {1, 2}, {0, 2}], 2)
        g = gadgets.setcover_seeding(sc)
        n, gg = sc.n_elements, len(sc.sets)
        (lg,) = enumerate_live_graphs(g.instance.graph.edges)
        votes = tally(revise_scores(g.instance, EMPTY_ASSIGNMENT, lg)).votes
        assert votes == (gg + n + 2, gg + n + 2, gg + n)
        assert expected_mov(g.instance, EMPTY_ASSIGNMENT).value == 0

    def test_deficit_exceeds_budget(self):
        sc = gadgets.SetCover.of(2, [{0}, {1}], 1)
        g = gadgets.setcover_seeding(sc)
        assert delta(g.instance) == g.budget + 1

    def test_cover_derived_plan_is_worth_one(self):
        sc = gadgets.SetCover.of(3, [{0, 1}, {1, 2}, {0, 2}], 2)
        g = gadgets.setcover_seeding(sc)
        plan = SeedAssignment.of({
            g.extras["set_nodes"][0]: (0, 1, 0),
            g.extras["set_nodes"][1]: (0, 1, 0),
            g.extras["block2"][0]: (0, 0, 1)})
        assert plan.size() == g.budget
        assert delta_mov_seeding(g.instance, plan).value == 1


class TestDiamondLayout:
    def test_epsilon_is_one_tenth(self):
        assert epsilon(gadgets.demo_diamond().instance) == Fraction(1, 10)

    def test_message_reaches_through_bridge(self):
        g = gadgets.demo_diamond()
        for lg in enumerate_live_graphs(g.instance.graph.edges):
            per_seed, _ = influenced_sets(lg, g.instance.baseline)
            if (1, 2) in lg.arcs:
                assert per_seed[1] == frozenset({1, 2, 3})
            else:
                assert per_seed[1] == frozenset({1})


class TestTrapLayouts:
    def test_paths_trap_votes(self):
        g = gadgets.greedy_trap_paths()
        (lg,) = enumerate_live_graphs(g.instance.graph.edges)
        assert tally(revise_scores(g.instance, EMPTY_ASSIGNMENT, lg)).votes \
            == (7, 7, 5)

    def test_paths_trap_optimal_plan_value(self):
        g = gadgets.greedy_trap_paths()
        assert delta_mov_seeding(g.instance, g.extras["optimal_plan"]).value == 1

    def test_trees_trap_scales_with_r(self):
        for r in (3, 5):
            g = gadgets.greedy_trap_trees(r)
            assert g.instance.node_count == 19 * r
            assert delta_mov_seeding(
                g.instance, g.extras["optimal_plan"]).value == r

    def test_trees_trap_rejects_small_r(self):
        with pytest.raises(ValueError):
            gadgets.greedy_trap_trees(2)


class TestPartitionLayout:
    def test_probabilities_in_range(self):
        pm = gadgets.PartitionMultiset((1, 2, 2, 3), 2)
        g = gadgets.partition_lines(pm)
        assert all(0 < p < Fraction(1, 4) for p in g.extras["p"])
        assert all(0 < w < 1 for w in g.extras["w"])

    def test_initial_margin_zero(self):
        pm = gadgets.PartitionMultiset((1, 1, 2, 2), 2)
        g = gadgets.partition_lines(pm)
        assert expected_mov(g.instance, EMPTY_ASSIGNMENT).value == 0

    def test_enumeration_matches_formula_oracle(self):
        pm = gadgets.PartitionMultiset((1, 1, 2, 2), 2)
        g = gadgets.partition_lines(pm)
        for pair in ((0, 1), (2, 3), (0, 2)):
            plan = SeedAssignment.of(
                {g.extras["lines"][i][0]: (0, 0, 1, 0) for i in pair})
            got = float(delta_mov_seeding(g.instance, plan).value)
            ps = [float(g.extras["p"][i]) for i in pair]
            ws = [float(g.extras["w"][i]) for i in pair]
            want = 3 * pm.k - sum(ps) - math.prod(
                (1 - p) * w for p, w in zip(ps, ws))
            assert got == pytest.approx(want, abs=1e-9)

    def test_balanced_subset_scores_highest(self):
        pm = gadgets.PartitionMultiset((1, 1, 2, 2), 2)
        g = gadgets.partition_lines(pm)

        def value(pair):
            plan = SeedAssignment.of(
                {g.extras["lines"][i][0]: (0, 0, 1, 0) for i in pair})
            return delta_mov_seeding(g.instance, plan).value

        # sums of p: (2,3) hits exactly 1/4; the others sit at 1/6 and 1/3
        assert value((2, 3)) > value((0, 1))

    def test_rejects_oversized_values(self):
        with pytest.raises(ValueError):
            gadgets.PartitionMultiset((3, 1, 2), 1)


class TestWrapper:
    def test_flood_reaches_every_inner_node(self):
        from movnet.checks import _reopt_inner
        inner = _reopt_inner()
        wrapped, bridge = gadgets.reopt_wrapper(inner)
        d = max(max(r) - min(r) for r in inner.scores)
        (lg,) = enumerate_live_graphs(wrapped.graph.edges)
        per_seed, _ = influenced_sets(lg, wrapped.baseline)
        feeders = [e.node for e in wrapped.baseline.entries
                   if e.node >= inner.node_count]
        assert len(feeders) == d + 1
        for f in feeders:
            assert set(range(inner.node_count)) <= per_seed[f]
        t = tally(revise_scores(wrapped, wrapped.baseline, lg))
        assert t.votes[0] == wrapped.node_count

    def test_bridge_edge_is_returned(self):
        from movnet.checks import _reopt_inner
        wrapped, bridge = gadgets.reopt_wrapper(_reopt_inner())
        assert bridge in {(e.src, e.dst) for e in wrapped.graph.edges}


class TestUntouchedMargins:
    """Pre-manipulation margins the constructions promise."""

    def test_independent_set_removal_baseline_zero(self):
        g = gadgets.independent_set_removal(
            gadgets.UndirectedGraph.of(3, [(0, 1), (1, 2)]))
        assert expected_mov(g.instance, g.instance.baseline).value == 0

    def test_covering_removal_baseline_zero(self):
        g = gadgets.setcover_removal(
            gadgets.SetCover.of(3, [{0, 1}, {1, 2}, {0, 2}], 2))
        assert expected_mov(g.instance, g.instance.baseline).value == 0

    def test_covering_addition_multi_fired_branch_margin_zero(self):
        # when the coin edge fires, the cancelling articles keep every vote;
        # on the other branch the second seed's own article flips it, so only
        # the per-branch deltas (asserted in the batteries) are invariant
        g = gadgets.setcover_addition_multi(
            gadgets.SetCover.of(3, [{0, 1}, {1, 2}, {0, 2}], 2))
        inst = g.instance
        for lg in enumerate_live_graphs(inst.graph.edges):
            if g.extras["random_edge"] in lg.arcs:
                assert tally(revise_scores(inst, inst.baseline, lg)).mov == 0

    def test_addition_deltas_of_nothing_are_zero(self):
        from movnet.evaluate import delta_mov_edge_addition
        g = gadgets.setcover_addition_single(
            gadgets.SetCover.of(2, [{0}, {1}], 2))
        assert delta_mov_edge_addition(g.instance, ()).value == 0


class TestAdditionCatalogs:
    def test_single_catalog_is_restricted(self):
        sc = gadgets.SetCover.of(3, [{0, 1}, {1, 2}, {0, 2}], 2)
        g = gadgets.setcover_addition_single(sc)
        assert len(g.instance.graph.addable) == len(sc.sets) + 1

    def test_multi_random_edge_is_half(self):
        sc = gadgets.SetCover.of(2, [{0}, {1}], 2)
        g = gadgets.setcover_addition_multi(sc)
        (e,) = [e for e in g.instance.graph.edges
                if (e.src, e.dst) == g.extras["random_edge"]]
        assert e.p == Fraction(1, 2)
