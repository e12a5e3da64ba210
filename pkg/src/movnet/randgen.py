"""Random instance generation for property batteries and oracle checks.

Everything is driven by a `random.Random` (or an integer seed), so batteries
are reproducible.  Instances stay small and enumerable by construction: few
nodes, few fractional edges.
"""

from __future__ import annotations

import random
from fractions import Fraction

from .model import Instance, InfluenceGraph, SeedAssignment
from .seeding import single_candidate_alphabet

FRACTIONAL_CHOICES = (Fraction(1, 2), Fraction(1, 3), Fraction(2, 3), Fraction(1, 4))


def _rng(seed) -> random.Random:
    return seed if isinstance(seed, random.Random) else random.Random(seed)


def random_scores(rng: random.Random, nodes: int, candidates: int,
                  max_score: int = 5) -> tuple[tuple[int, ...], ...]:
    rows = []
    for _ in range(nodes):
        values = rng.sample(range(max_score + 1), candidates)
        rows.append(tuple(values))
    return tuple(rows)


def random_instance(seed, max_nodes: int = 9, max_candidates: int = 4,
                    max_score: int = 5, max_fractional: int = 4,
                    extra_edges: int = 3, seeded: bool = False,
                    min_nodes: int = 2) -> Instance:
    """A small valid instance with enumerable randomness."""
    rng = _rng(seed)
    n = rng.randint(min_nodes, max_nodes)
    k = rng.randint(2, max_candidates)
    pairs = [(u, v) for u in range(n) for v in range(n) if u != v]
    rng.shuffle(pairs)
    m = rng.randint(0, min(len(pairs), n + extra_edges))
    chosen = pairs[:m]
    fractional_left = max_fractional
    edges = []
    for u, v in chosen:
        if fractional_left and rng.random() < 0.4:
            edges.append((u, v, rng.choice(FRACTIONAL_CHOICES)))
            fractional_left -= 1
        else:
            edges.append((u, v, 1))
    baseline = None
    if seeded:
        seeds = rng.sample(range(n), rng.randint(1, min(2, n)))
        alphabet = single_candidate_alphabet(k, 2)
        baseline = SeedAssignment.of({s: rng.choice(alphabet) for s in seeds})
    return Instance(
        candidates=k,
        graph=InfluenceGraph.of(n, edges),
        scores=random_scores(rng, n, k, max_score),
        baseline=baseline,
    )


def random_guaranteed_regime_instance(seed, max_nodes: int = 9,
                                      max_candidates: int = 4,
                                      max_budget: int = 4) -> tuple[Instance, int]:
    """Instance plus budget with 1 <= deficit <= budget <= max_budget."""
    from .model import delta
    rng = _rng(seed)
    while True:
        inst = random_instance(rng, max_nodes=max_nodes,
                               max_candidates=max_candidates,
                               max_score=max_budget + 1, max_fractional=3)
        d = delta(inst)
        if 1 <= d <= max_budget:
            return inst, rng.randint(d, max_budget)


def random_single_message_instance(seed, max_nodes: int = 8,
                                   positive: bool | None = None,
                                   with_addable: bool = False) -> Instance:
    """Two candidates, every seed sharing one single-article message.

    The precondition battery for the unlimited-budget closed forms; when
    `with_addable` is set a small explicit addable catalog is attached.
    """
    rng = _rng(seed)
    n = rng.randint(3, max_nodes)
    pairs = [(u, v) for u in range(n) for v in range(n) if u != v]
    rng.shuffle(pairs)
    m = rng.randint(1, min(len(pairs), n + 2))
    fractional_left = 3
    edges = []
    for u, v in pairs[:m]:
        if fractional_left and rng.random() < 0.4:
            edges.append((u, v, rng.choice(FRACTIONAL_CHOICES)))
            fractional_left -= 1
        else:
            edges.append((u, v, 1))
    addable = None
    if with_addable:
        rest = pairs[m:]
        rng.shuffle(rest)
        addable = []
        for u, v in rest[:rng.randint(1, 4)]:
            if fractional_left and rng.random() < 0.3:
                addable.append((u, v, rng.choice(FRACTIONAL_CHOICES)))
                fractional_left -= 1
            else:
                addable.append((u, v, 1))
    if positive is None:
        positive = rng.random() < 0.5
    message = rng.choice([(1, 0), (0, -1)] if positive else [(-1, 0), (0, 1)])
    seeds = rng.sample(range(n), rng.randint(1, 2))
    return Instance(
        candidates=2,
        graph=InfluenceGraph.of(n, edges, addable),
        scores=random_scores(rng, n, 2, max_score=3),
        baseline=SeedAssignment.of({s: message for s in seeds}),
    )
