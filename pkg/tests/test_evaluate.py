from fractions import Fraction

import pytest

from movnet import gadgets, randgen
from movnet.backend import enumerate_presence
from movnet.diffusion import enumerate_live_graphs, revise_scores, tally
from movnet.evaluate import (
    EvalConfig,
    csv_row,
    delta_influence_addition,
    delta_influence_removal,
    delta_mov_edge_addition,
    delta_mov_edge_removal,
    delta_mov_seeding,
    effective_edges,
    expected_influence,
    expected_mov,
)
from movnet.model import EMPTY_ASSIGNMENT, Instance, InfluenceGraph, SeedAssignment


class TestExpectedMov:
    def test_deterministic_instance_equals_single_tally(self):
        g = gadgets.greedy_trap_paths()
        inst = g.instance
        (lg,) = enumerate_live_graphs(inst.graph.edges)
        want = tally(revise_scores(inst, g.extras["optimal_plan"], lg)).mov
        ev = expected_mov(inst, g.extras["optimal_plan"])
        assert ev.mode == "exact" and ev.value == want

    def test_diamond_expectation(self):
        g = gadgets.demo_diamond()
        assert expected_mov(g.instance, g.instance.baseline).value == 1

    def test_diamond_monte_carlo_within_band(self):
        g = gadgets.demo_diamond()
        cfg = EvalConfig(mode="mc", samples=100_000, seed=3)
        ev = expected_mov(g.instance, g.instance.baseline, config=cfg)
        assert ev.samples == 100_000
        assert abs(ev.value - 1.0) <= 3 * ev.std_error

    def test_linearity_against_direct_enumeration(self):
        inst = randgen.random_instance(42, max_nodes=7, seeded=True)
        ev = expected_mov(inst, inst.baseline)
        direct = sum(
            lg.probability * tally(revise_scores(inst, inst.baseline, lg)).mov
            for lg in enumerate_live_graphs(inst.graph.edges))
        assert ev.value == direct


class TestSeedingDelta:
    def test_empty_assignment_is_zero(self):
        inst = randgen.random_instance(9)
        assert delta_mov_seeding(inst, EMPTY_ASSIGNMENT).value == 0

    def test_refuses_baseline_instances(self):
        inst = randgen.random_instance(10, seeded=True)
        with pytest.raises(ValueError):
            delta_mov_seeding(inst, EMPTY_ASSIGNMENT)

    def test_covering_gadget_value(self):
        sc = gadgets.SetCover.of(3, [{0, 1}, {1, 2}, {0, 2}], 2)
        g = gadgets.setcover_seeding(sc)
        ext = g.extras
        plan = SeedAssignment.of({
            ext["set_nodes"][0]: (0, 1, 0),
            ext["set_nodes"][1]: (0, 1, 0),
            ext["block2"][0]: (0, 0, 1),
        })
        assert delta_mov_seeding(g.instance, plan).value == 1


class TestEdgeDeltas:
    def test_empty_sets_are_zero(self):
        inst = randgen.random_instance(50, seeded=True)
        assert delta_mov_edge_removal(inst, ()).value == 0
        assert delta_mov_edge_addition(inst, ()).value == 0

    def test_removing_unused_edge_is_zero(self):
        inst = Instance(
            2, InfluenceGraph.of(4, [(0, 1, 1), (2, 3, 1)]),
            ((1, 0), (0, 1), (1, 0), (0, 1)),
            baseline=SeedAssignment.of({0: (0, 1)}))
        assert delta_mov_edge_removal(inst, [(2, 3)]).value == 0

    def test_coupled_difference_matches_before_after(self):
        for i in range(30):
            inst = randgen.random_instance(900 + i, max_nodes=7, seeded=True)
            edges = inst.graph.edges
            if not edges:
                continue
            removal = [(edges[0].src, edges[0].dst)]
            coupled = delta_mov_edge_removal(inst, removal).value
            before = expected_mov(inst, inst.baseline).value
            after = expected_mov(inst, inst.baseline, removals=removal).value
            assert coupled == after - before

    def test_effective_edges_rejects_overlap(self):
        inst = randgen.random_instance(3, seeded=True)
        with pytest.raises(ValueError):
            effective_edges(inst, removals=[(0, 1)], additions=[(0, 1)])


class TestInfluence:
    def test_remove_all_leaves_only_seeds(self):
        for i in range(20):
            inst = randgen.random_instance(1200 + i, max_nodes=7, seeded=True)
            all_edges = [(e.src, e.dst) for e in inst.graph.edges]
            seeds = inst.baseline.seeds()
            before = expected_influence(inst, seeds).value
            drop = delta_influence_removal(inst, all_edges).value
            assert drop == before - len(seeds)

    def test_add_nothing_is_zero(self):
        inst = randgen.random_instance(77, seeded=True)
        assert delta_influence_addition(inst, ()).value == 0


class TestMonteCarloDeterminism:
    def test_same_seed_same_result(self):
        g = gadgets.demo_diamond()
        cfg = EvalConfig(mode="mc", samples=20_000, seed=5)
        a = expected_mov(g.instance, g.instance.baseline, config=cfg)
        b = expected_mov(g.instance, g.instance.baseline, config=cfg)
        assert (a.value, a.std_error) == (b.value, b.std_error)

    def test_worker_count_does_not_change_result(self):
        g = gadgets.setcover_removal(gadgets.SetCover.of(2, [{0}, {1}], 2))
        estar = [g.extras["cancel_edge"]]
        one = delta_mov_edge_removal(
            g.instance, estar, EvalConfig(mode="mc", samples=20_000, seed=9,
                                          workers=1))
        two = delta_mov_edge_removal(
            g.instance, estar, EvalConfig(mode="mc", samples=20_000, seed=9,
                                          workers=2))
        assert (one.value, one.std_error) == (two.value, two.std_error)


class TestWeights:
    def test_presence_weights_sum_to_denominator(self):
        inst = randgen.random_instance(321, max_nodes=8)
        en = enumerate_presence(inst.graph.edges)
        assert sum(en.weights) == 1
        if en.weights_int is not None:
            assert int(en.weights_int.sum()) == en.denom

    def test_integer_weight_overflow_refused_for_searches(self):
        from fractions import Fraction as F
        from movnet.backend import WeightOverflowError
        from movnet.model import Instance, InfluenceGraph
        edges = [(i, i + 1, F(1, 65521)) for i in range(4)]
        inst = Instance(2, InfluenceGraph.of(5, edges),
                        tuple((0, 1) if i % 2 else (1, 0) for i in range(5)))
        en = enumerate_presence(inst.graph.edges)
        assert en.weights_int is None  # 65521^4 exceeds int64
        with pytest.raises(WeightOverflowError):
            en.require_int_weights()
        # exact evaluation still works through Fraction weights
        from movnet.evaluate import expected_mov
        from movnet.model import SeedAssignment
        ev = expected_mov(inst, SeedAssignment.of({0: (0, 1)}))
        assert ev.mode == "exact"


class TestCsv:
    def test_exact_row_format(self):
        from movnet.evaluate import Evaluation
        row = csv_row("demo", "brute-removal", Evaluation(Fraction(1, 2), "exact"), 12.5)
        assert row == "demo,brute-removal,exact,1/2,,,12.500"

    def test_mc_row_format(self):
        from movnet.evaluate import Evaluation
        row = csv_row("demo", "x", Evaluation(0.5, "mc", 100, 0.01), 1.0)
        assert row.startswith("demo,x,mc,0.5,100,0.01,")
