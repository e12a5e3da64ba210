from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from movnet import gadgets
from movnet.model import (
    Instance,
    InfluenceGraph,
    SeedAssignment,
    delta,
    epsilon,
    has_unitary_distances,
    instance_from_json,
    instance_to_json,
    is_hard_to_manipulate,
    is_single_news_article,
    message_size,
    validate,
)


def make(scores, edges=(), candidates=None, **kw):
    candidates = candidates or len(scores[0])
    graph = InfluenceGraph.of(len(scores), edges)
    return Instance(candidates=candidates, graph=graph,
                    scores=tuple(tuple(r) for r in scores), **kw)


class TestValidate:
    def test_clean_instance(self):
        assert validate(make([(0, 1), (1, 0)], [(0, 1, 1)])) == []

    def test_non_injective_row(self):
        out = validate(make([(1, 1), (0, 1)]))
        assert any("non-injective" in v for v in out)

    def test_probability_out_of_range(self):
        out = validate(make([(0, 1), (1, 0)], [(0, 1, Fraction(6, 5))]))
        assert any("out of range" in v for v in out)

    def test_self_loop_and_duplicate(self):
        graph = InfluenceGraph(2, (InfluenceGraph.of(2, [(0, 0, 1)]).edges
                                   + InfluenceGraph.of(2, [(0, 1, 1)]).edges * 2))
        inst = Instance(2, graph, ((0, 1), (1, 0)))
        out = validate(inst)
        assert any("self-loop" in v for v in out)
        assert any("duplicate" in v for v in out)

    def test_generated_gadget_is_clean(self):
        g = gadgets.setcover_seeding(gadgets.SetCover.of(3, [{0, 1}, {1, 2}], 2))
        assert validate(g.instance) == []

    def test_bad_seed_reported(self):
        inst = make([(0, 1), (1, 0)], baseline=SeedAssignment.of({7: (1, 0)}))
        assert any("out of node range" in v for v in validate(inst))


class TestScalars:
    def test_epsilon_from_max_score(self):
        assert epsilon(make([(0, 1, 2), (2, 1, 0)])) == Fraction(1, 3)

    def test_epsilon_single_voter(self):
        assert epsilon(make([(0, 1)])) == Fraction(1, 2)

    def test_delta_direct(self):
        assert delta(make([(0, 3), (5, 1)])) == 3

    def test_delta_clamped_at_zero(self):
        assert delta(make([(3, 1), (5, 2)])) == 0

    def test_delta_on_covering_gadget(self):
        sc = gadgets.SetCover.of(3, [{0, 1}, {1, 2}], 1)
        g = gadgets.setcover_seeding(sc)
        assert delta(g.instance) == g.budget + 1
        assert is_hard_to_manipulate(g.instance, g.budget)

    def test_hard_to_manipulate_boundary(self):
        inst = make([(0, 3), (5, 1)])
        assert is_hard_to_manipulate(inst, 2)
        assert not is_hard_to_manipulate(inst, 3)

    @given(st.lists(st.permutations(range(3)), min_size=1, max_size=6))
    def test_delta_monotone_in_voters(self, rows):
        rows = [tuple(r) for r in rows]
        inst = make(rows)
        for cut in range(1, len(rows)):
            assert delta(make(rows[:cut])) <= delta(inst)


class TestTieBreakArithmetic:
    @given(st.lists(st.permutations(range(4)), min_size=1, max_size=5))
    def test_scaled_differences_never_integral(self, rows):
        inst = make([tuple(r) for r in rows])
        eps = epsilon(inst)
        for row in inst.scores:
            for i in range(4):
                for j in range(4):
                    if row[i] != row[j]:
                        value = (1 - eps) * (row[i] - row[j])
                        assert value.denominator != 1


class TestMessages:
    def test_message_size(self):
        assert message_size((1, -2, 0)) == 3

    def test_single_news_article(self):
        assert is_single_news_article((0, 1))
        assert is_single_news_article((-1, 0))
        assert not is_single_news_article((0, 2))
        assert not is_single_news_article((1, -1))

    def test_assignment_size_and_merge(self):
        a = SeedAssignment.of({0: (1, -1)})
        b = SeedAssignment.of({2: (0, 2)})
        assert a.size() == 2
        assert a.merged_with(b).size() == 4
        with pytest.raises(ValueError):
            a.merged_with(a)


class TestUnitaryDistances:
    def test_permutation_rows(self):
        assert has_unitary_distances(make([(0, 1, 2), (2, 0, 1)]))
        assert not has_unitary_distances(make([(0, 1, 3), (2, 0, 1)]))


class TestAddableCatalog:
    def test_default_is_complement(self):
        graph = InfluenceGraph.of(3, [(0, 1, 1)])
        addable = {(e.src, e.dst) for e in graph.addable_edges()}
        assert addable == {(0, 2), (1, 0), (1, 2), (2, 0), (2, 1)}
        assert all(e.p == 1 for e in graph.addable_edges())

    def test_explicit_catalog_preserved(self):
        graph = InfluenceGraph.of(3, [(0, 1, 1)], [(1, 2, Fraction(1, 2))])
        assert graph.addable_edges() == graph.addable


class TestJsonRoundTrip:
    def test_round_trip_identity(self):
        g = gadgets.setcover_removal(gadgets.SetCover.of(2, [{0}, {1}], 2))
        text = instance_to_json(g.instance)
        again = instance_from_json(text)
        assert again == g.instance
        assert instance_to_json(again) == text

    def test_probabilities_survive_exactly(self):
        inst = make([(0, 1), (1, 0)], [(0, 1, Fraction(1, 3))])
        again = instance_from_json(instance_to_json(inst))
        assert again.graph.edges[0].p == Fraction(1, 3)

    def test_generator_determinism(self):
        a = instance_to_json(gadgets.greedy_trap_trees(4).instance)
        b = instance_to_json(gadgets.greedy_trap_trees(4).instance)
        assert a == b


class TestWithProbability:
    def test_reweights_edge(self):
        inst = make([(0, 1), (1, 0)], [(0, 1, 1)])
        out = inst.with_probability((0, 1), Fraction(1, 2))
        assert out.graph.edges[0].p == Fraction(1, 2)

    def test_reweights_addable(self):
        graph = InfluenceGraph.of(2, [], [(0, 1, 1)])
        inst = Instance(2, graph, ((0, 1), (1, 0)))
        out = inst.with_probability((0, 1), 0)
        assert out.graph.addable[0].p == 0

    def test_unknown_edge(self):
        inst = make([(0, 1), (1, 0)], [(0, 1, 1)], )
        with pytest.raises(KeyError):
            inst.with_probability((5, 6), 1)
