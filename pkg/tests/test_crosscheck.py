"""Evaluator kernels against the plain-python diffusion reference."""

import random
from dataclasses import replace
from fractions import Fraction

from movnet import randgen
from movnet.diffusion import (
    enumerate_live_graphs,
    influenced_sets,
    revise_scores,
    tally,
)
from movnet.evaluate import expected_influence, expected_mov
from movnet.model import SeedAssignment


def reference_expected_mov(inst, assignment):
    total = Fraction(0)
    for lg in enumerate_live_graphs(inst.graph.edges):
        total += lg.probability * tally(revise_scores(inst, assignment, lg)).mov
    return total


def test_expected_mov_matches_reference():
    for i in range(40):
        inst = randgen.random_instance(90_000 + i, max_nodes=7, seeded=True)
        assert expected_mov(inst, inst.baseline).value == \
            reference_expected_mov(inst, inst.baseline)


def test_expected_influence_matches_reference():
    for i in range(40):
        inst = randgen.random_instance(91_000 + i, max_nodes=7, seeded=True)
        want = Fraction(0)
        for lg in enumerate_live_graphs(inst.graph.edges):
            _, union = influenced_sets(lg, inst.baseline)
            want += lg.probability * len(union)
        assert expected_influence(inst, inst.baseline.seeds()).value == want


def test_bribed_pins_match_reference():
    for i in range(30):
        base = randgen.random_instance(95_000 + i, max_nodes=6, seeded=True)
        rng = random.Random(i)
        pins = {e.node: rng.randrange(base.candidates)
                for e in base.baseline.entries}
        asg = SeedAssignment.of(
            {e.node: e.news for e in base.baseline.entries}, pins)
        inst = replace(base, baseline=asg, bribed_seeds=True)
        assert expected_mov(inst, inst.baseline).value == \
            reference_expected_mov(inst, inst.baseline)
