from fractions import Fraction

import pytest

from movnet import randgen
from movnet.errors import HardToManipulateError, SearchCapError
from movnet.evaluate import EXACT, expected_mov
from movnet.model import Instance, InfluenceGraph, SeedAssignment, delta
from movnet.seeding import (
    _PlanScorer,
    augmentations,
    brute_force_seeding,
    converting_message,
    greedy_augmentation,
    greedy_influence_max,
    greedy_seeding,
    greedy_seeding_bound,
    single_candidate_alphabet,
)


def star(leaves, scores_center=(0, 2), scores_leaf=(0, 2), p=1):
    edges = [(0, i + 1, p) for i in range(leaves)]
    scores = (scores_center,) + (scores_leaf,) * leaves
    return Instance(2, InfluenceGraph.of(leaves + 1, edges), scores)


class TestConvertingMessage:
    def test_carries_the_deficit(self):
        inst = star(3)
        assert delta(inst) == 2
        assert converting_message(inst) == (2, 0)

    def test_clamped_when_everyone_convinced(self):
        inst = Instance(2, InfluenceGraph.of(2, []), ((1, 0), (2, 0)))
        assert converting_message(inst) == (1, 0)

    def test_wins_exact_gap_voter(self):
        # scores (0, d): after the message candidate 0 leads by d * epsilon
        inst = Instance(2, InfluenceGraph.of(1, []), ((0, 3),))
        from movnet.diffusion import enumerate_live_graphs, revise_scores, tally
        (lg,) = enumerate_live_graphs(inst.graph.edges)
        plan = SeedAssignment.of({0: converting_message(inst)})
        t = tally(revise_scores(inst, plan, lg))
        assert t.votes == (1, 0)

    def test_converts_every_voter_alone(self):
        for i in range(50):
            inst = randgen.random_instance(1500 + i, max_nodes=6)
            msg = converting_message(inst)
            from movnet.diffusion import LiveGraph, revise_scores, tally
            lg = LiveGraph(frozenset())
            for v in range(inst.node_count):
                t = tally(revise_scores(inst, SeedAssignment.of({v: msg}), lg))
                final = revise_scores(inst, SeedAssignment.of({v: msg}), lg)
                assert max(range(inst.candidates),
                           key=lambda c: final.scores[v][c]) == 0


class TestBound:
    def test_formula_instantiation(self):
        rho = greedy_seeding_bound(1, 1, one_minus_inv_e=Fraction(1))
        assert rho == Fraction(1, 2)
        assert float(greedy_seeding_bound(1, 1)) == pytest.approx(0.316, abs=1e-3)

    def test_equal_budget_and_deficit(self):
        b = 4
        rho = greedy_seeding_bound(b, b, one_minus_inv_e=Fraction(1))
        assert rho == Fraction(1, 2 * b * b)

    def test_constant_at_unit_deficit(self):
        one = Fraction(1)
        assert {greedy_seeding_bound(b, 1, one_minus_inv_e=one)
                for b in (1, 10, 1000)} == {Fraction(1, 2)}

    def test_growing_budget_approaches_quarter(self):
        one = Fraction(1)
        vals = [greedy_seeding_bound(b, 2, one_minus_inv_e=one)
                for b in (2, 20, 2000)]
        assert vals[0] < vals[1] < vals[2] < Fraction(1, 4)

    def test_rejects_hard_regime(self):
        with pytest.raises(ValueError):
            greedy_seeding_bound(2, 3)


class TestGreedyInfluence:
    def test_all_nodes_when_k_equals_n(self):
        inst = star(3)
        assert set(greedy_influence_max(inst, 4)) == {0, 1, 2, 3}

    def test_two_disjoint_stars(self):
        edges = [(0, i, 1) for i in range(1, 6)] + [(6, i, 1) for i in range(7, 10)]
        inst = Instance(2, InfluenceGraph.of(10, edges), ((0, 1),) * 10)
        assert set(greedy_influence_max(inst, 2)) == {0, 6}

    def test_line_head_wins(self):
        edges = [(i, i + 1, 1) for i in range(4)]
        inst = Instance(2, InfluenceGraph.of(5, edges), ((0, 1),) * 5)
        assert greedy_influence_max(inst, 1) == (0,)

    def test_ties_break_to_lowest_id(self):
        inst = Instance(2, InfluenceGraph.of(4, []), ((0, 1),) * 4)
        assert greedy_influence_max(inst, 2) == (0, 1)

    def test_monte_carlo_mode_is_deterministic(self):
        from movnet.evaluate import EvalConfig
        from fractions import Fraction
        edges = [(0, i, Fraction(1, 2)) for i in range(1, 6)] \
            + [(6, i, Fraction(1, 2)) for i in range(7, 9)]
        inst = Instance(2, InfluenceGraph.of(9, edges), ((0, 1),) * 9)
        cfg = EvalConfig(mode="mc", samples=4000, seed=11)
        picks = greedy_influence_max(inst, 2, cfg)
        assert picks == greedy_influence_max(inst, 2, cfg)
        assert picks[0] == 0  # the five-leaf hub dominates in expectation


class TestGreedySeeding:
    def test_hard_regime_refusal(self):
        inst = star(3)  # deficit 2
        with pytest.raises(HardToManipulateError):
            greedy_seeding(inst, 1)

    def test_zero_budget_zero_deficit(self):
        inst = Instance(2, InfluenceGraph.of(2, []), ((1, 0), (2, 1)))
        plan = greedy_seeding(inst, 0)
        assert len(plan.assignment) == 0
        assert plan.claimed_value.value == 0

    def test_budget_accounting(self):
        for i in range(20):
            inst, budget = randgen.random_guaranteed_regime_instance(1600 + i)
            plan = greedy_seeding(inst, budget)
            assert plan.assignment.size() <= budget

    def test_star_center_selected(self):
        # center -> 9 leaves, every voter one article away from candidate 0
        inst = star(9, scores_center=(0, 1), scores_leaf=(0, 1))
        assert delta(inst) == 1
        plan = greedy_seeding(inst, 1)
        assert plan.assignment.seeds() == (0,)
        assert plan.claimed_value.value == expected_mov(
            inst, plan.assignment).value - expected_mov(
            inst, SeedAssignment()).value
        oracle = brute_force_seeding(inst, 1)
        assert oracle.claimed_value.value == plan.claimed_value.value
        assert oracle.assignment.seeds() == (0,)

    def test_bound_on_small_battery(self):
        for i in range(40):
            inst, budget = randgen.random_guaranteed_regime_instance(1700 + i)
            d = delta(inst)
            greedy = greedy_seeding(inst, budget)
            oracle = brute_force_seeding(inst, budget)
            rho = greedy_seeding_bound(budget, d)
            assert greedy.claimed_value.value >= rho * oracle.claimed_value.value


class TestAlphabet:
    def test_contents(self):
        alpha = single_candidate_alphabet(2, 2)
        assert (1, 0) in alpha and (-2, 0) in alpha and (0, 2) in alpha
        assert all(sum(1 for q in m if q) == 1 for m in alpha)

    def test_budget_cap(self):
        alpha = single_candidate_alphabet(3, 2, budget=1)
        assert all(abs(sum(m)) == 1 for m in alpha)


class TestGreedyAugmentation:
    def test_accepted_steps_improve_something(self):
        for i in range(10):
            inst = randgen.random_instance(1800 + i, max_nodes=6)
            scorer = _PlanScorer(inst, EXACT)
            alphabet = single_candidate_alphabet(inst.candidates, budget=2)
            current = []
            while True:
                options = augmentations(inst, current, 2, alphabet, scorer)
                if not options:
                    break
                cur_mov = int(scorer.weighted([current], 0)[0])
                cur_votes = int(scorer.weighted([current], 2)[0])
                options.sort(key=lambda o: (-o[0], -o[1], o[2], o[3]))
                mv, vt, node, news = options[0]
                assert mv > cur_mov or vt > cur_votes
                current.append((node, news, -1))

    def test_plan_respects_budget(self):
        for i in range(10):
            inst = randgen.random_instance(1900 + i, max_nodes=6)
            plan = greedy_augmentation(inst, 3)
            assert plan.assignment.size() <= 3

    def test_obvious_single_flip_taken_first(self):
        # one seed can flip one candidate-1 voter; greedy must take it
        inst = Instance(2, InfluenceGraph.of(3, []),
                        ((1, 0), (0, 1), (3, 0)))
        steps = []
        plan = greedy_augmentation(inst, 1, steps=steps)
        assert steps and steps[0][0] == 1
        assert plan.claimed_value.value >= 1

    def test_final_value_never_negative_on_random_instances(self):
        for i in range(15):
            inst = randgen.random_instance(2000 + i, max_nodes=6)
            plan = greedy_augmentation(inst, 2)
            assert plan.claimed_value.value >= 0

    def test_paths_trap_offers_no_augmentation_at_all(self):
        from movnet import gadgets
        g = gadgets.greedy_trap_paths()
        scorer = _PlanScorer(g.instance, EXACT)
        alphabet = single_candidate_alphabet(3, budget=2)
        assert augmentations(g.instance, [], 2, alphabet, scorer) == []


class TestBaselineGuards:
    def test_seeding_solvers_refuse_baseline_instances(self):
        from movnet.errors import PreconditionError
        inst = randgen.random_instance(2300, seeded=True)
        with pytest.raises(PreconditionError):
            greedy_seeding(inst, 5)
        with pytest.raises(PreconditionError):
            greedy_augmentation(inst, 2)
        with pytest.raises(PreconditionError):
            brute_force_seeding(inst, 1)


class TestBruteForce:
    def test_zero_budget(self):
        inst = randgen.random_instance(60)
        plan = brute_force_seeding(inst, 0)
        assert len(plan.assignment) == 0 and plan.claimed_value.value == 0

    def test_cap_refusal(self):
        inst = randgen.random_instance(61, max_nodes=9)
        with pytest.raises(SearchCapError):
            brute_force_seeding(inst, 4, search_cap=10)

    def test_beats_or_matches_greedy_family(self):
        for i in range(10):
            inst = randgen.random_instance(2100 + i, max_nodes=6)
            oracle = brute_force_seeding(inst, 2)
            fam = greedy_augmentation(inst, 2)
            assert oracle.claimed_value.value >= fam.claimed_value.value

    def test_deterministic_plan_bytes(self):
        import json
        inst = randgen.random_instance(2200, max_nodes=6)
        a = json.dumps(brute_force_seeding(inst, 2).to_dict(), sort_keys=True)
        b = json.dumps(brute_force_seeding(inst, 2).to_dict(), sort_keys=True)
        assert a == b

    def test_restricted_alphabet_is_honored(self):
        inst = Instance(2, InfluenceGraph.of(2, []), ((0, 1), (0, 1)))
        only_positive_c1 = ((0, 1),)
        plan = brute_force_seeding(inst, 2, alphabet=only_positive_c1)
        # boosting the rival is the only move available; it cannot help
        assert plan.claimed_value.value <= 0
        assert all(e.news == (0, 1) for e in plan.assignment.entries)
