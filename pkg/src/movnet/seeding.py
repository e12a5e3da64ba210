"""Seeding-side solvers.

Four ways to pick seeds and messages under a news-article budget:

* `greedy_seeding` implements the guaranteed algorithm for the easy regime
  (budget at least the worst deficit): floor(B/|m|) seeds chosen greedily
  for expected newly-influenced voters, each sending the converting message.
* `greedy_seeding_bound` is its proven approximation factor.
* `greedy_augmentation` is the augmenting-greedy family member: keep adding
  any (seed, message) pair that strictly raises the expected margin or
  candidate 0's expected votes.
* `brute_force_seeding` is the exact oracle over a finite message alphabet.

Exact evaluations compare integer-weighted sums over enumerated live
graphs, so every comparison made here is exact.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations, product
from math import comb

import numpy as np

from . import backend
from .backend import CHI, MOV, NEWCHI, VOTES0, ops
from .errors import HardToManipulateError, PreconditionError, SearchCapError
from .evaluate import EXACT, EvalConfig, Evaluation, delta_mov_seeding
from .model import Instance, SeedAssignment, delta, message_size

# certified lower bound of 1 - 1/e: keeps the asserted factor sound (never
# larger than the true irrational bound) while staying rational
ONE_MINUS_INV_E_LOWER = Fraction(632120558828, 10**12)


@dataclass(frozen=True)
class SeedingPlan:
    assignment: SeedAssignment
    claimed_value: Evaluation
    solver: str

    def to_dict(self) -> dict:
        from .evaluate import format_value
        return {
            "solver": self.solver,
            "seeds": [{"node": e.node, "news": list(e.news), "bribed_to": e.bribed_to}
                      for e in self.assignment.entries],
            "value": format_value(self.claimed_value.value),
            "mode": self.claimed_value.mode,
        }


def converting_message(instance: Instance) -> tuple[int, ...]:
    """Positive candidate-0 articles that win over any voter on their own.

    Carries max(deficit, 1) articles: the perturbation slack closes the
    exact-gap case, and a voter already favouring candidate 0 stays won.
    """
    q = max(delta(instance), 1)
    return (q,) + (0,) * (instance.candidates - 1)


def greedy_seeding_bound(budget: int, deficit: int,
                         one_minus_inv_e: Fraction = ONE_MINUS_INV_E_LOWER) -> Fraction:
    """Approximation factor (B - d + 1) / (2 d B) * (1 - 1/e)."""
    if not 1 <= deficit <= budget:
        raise ValueError(f"need 1 <= deficit <= budget, got {deficit}, {budget}")
    return Fraction(budget - deficit + 1, 2 * deficit * budget) * one_minus_inv_e


# ---------------------------------------------------------------------------
# shared exact machinery


class _PlanScorer:
    """Batch evaluator of seeding plans on one instance.

    Holds the enumerated (or sampled) live-graph closures once; plans are
    scored as integer weighted sums over them, all sharing `denom`.
    """

    def __init__(self, instance: Instance, config: EvalConfig = EXACT):
        self.instance = instance
        self.base, self.dm1, self.dmul = backend.base_arrays(instance)
        edges = instance.graph.edges
        esrc, edst = backend.edge_endpoint_arrays(edges)
        if config.exact():
            en = backend.enumerate_presence(edges, config.enumeration_cap)
            presence = en.presence
            self.weights = en.require_int_weights()
            self.denom = en.denom
        else:
            rng = np.random.default_rng(np.random.SeedSequence(config.seed))
            presence, counts = backend.sampled_presence(edges, rng, config.samples)
            self.weights = counts
            self.denom = config.samples
        self.reach = ops.closure_stack(instance.node_count, esrc, edst,
                                       np.ascontiguousarray(presence))

    def weighted(self, plans: list, objective: int) -> np.ndarray:
        """Integer weighted objective sums, one per plan of (node, news, pin)s."""
        ptr, seeds, msgs, bribed = backend.pack_plans(plans, self.instance.candidates)
        return self.weighted_arrays(ptr, seeds, msgs, bribed, objective)

    def weighted_arrays(self, ptr, seeds, msgs, bribed, objective: int) -> np.ndarray:
        return np.asarray(ops.plan_values(
            self.reach, self.weights, self.base, self.dm1, self.dmul,
            np.ascontiguousarray(ptr, dtype=np.int64),
            np.ascontiguousarray(seeds, dtype=np.int64),
            np.ascontiguousarray(msgs, dtype=np.int64).reshape(
                len(seeds), self.instance.candidates),
            np.ascontiguousarray(bribed, dtype=np.int64), objective))

    def expectation(self, weighted_sum: int) -> Fraction:
        return Fraction(int(weighted_sum), self.denom)


def _pin(instance: Instance) -> int:
    # bribed seeds default to voting for candidate 0
    return 0 if instance.bribed_seeds else -1


def _require_no_baseline(instance: Instance):
    if instance.baseline is not None:
        raise PreconditionError(
            "seeding solvers work on instances without a baseline assignment; "
            "this one already carries fixed seeds")


def _as_assignment(instance: Instance, plan) -> SeedAssignment:
    return SeedAssignment.of({node: news for node, news, _ in plan},
                             {node: pin for node, _, pin in plan if pin >= 0})


# ---------------------------------------------------------------------------
# greedy influence maximization and the guaranteed seeding algorithm


def _greedy_seed_selection(instance: Instance, k: int, objective: int,
                           config: EvalConfig) -> tuple[int, ...]:
    if k > instance.node_count:
        raise ValueError("more seeds than nodes")
    scorer = _PlanScorer(instance, config)
    zero = (0,) * instance.candidates
    chosen: list[int] = []
    for _ in range(k):
        rest = [v for v in range(instance.node_count) if v not in chosen]
        plans = [[(v, zero, -1) for v in chosen + [x]] for x in rest]
        vals = scorer.weighted(plans, objective)
        chosen.append(rest[int(np.argmax(vals))])
    return tuple(chosen)


def greedy_influence_max(instance: Instance, k: int,
                         config: EvalConfig = EXACT) -> tuple[int, ...]:
    """k seeds picked one at a time for maximal expected influence.

    Ties go to the lowest node id.  Exact mode enumerates live graphs; MC
    mode scores a deduplicated sample drawn from the master seed, so the
    result is deterministic either way.
    """
    return _greedy_seed_selection(instance, k, CHI, config)


def greedy_seeding(instance: Instance, budget: int,
                   config: EvalConfig = EXACT) -> SeedingPlan:
    """Guaranteed-regime algorithm: greedy seeds, converting message.

    Seeds maximize the expected count of newly influenced voters, i.e.
    influenced voters not already ranking candidate 0 first.  Counting
    already-won voters instead can spend the whole budget confirming safe
    votes and voids the approximation factor; the restricted count keeps
    every step of the guarantee argument intact.

    Refuses when the budget is below the deficit (the regime where no
    polynomial guarantee exists).  A zero budget yields the empty plan.
    """
    _require_no_baseline(instance)
    d = delta(instance)
    if budget < d:
        raise HardToManipulateError(budget, d)
    message = converting_message(instance)
    k = min(budget // message_size(message), instance.node_count)
    seeds = _greedy_seed_selection(instance, k, NEWCHI, config) if k else ()
    assignment = SeedAssignment.of({s: message for s in seeds})
    value = delta_mov_seeding(instance, assignment, config)
    return SeedingPlan(assignment, value, "greedy-seeding")


# ---------------------------------------------------------------------------
# the augmenting-greedy family


def single_candidate_alphabet(candidates: int, max_magnitude: int = 2,
                              budget: int | None = None) -> tuple[tuple[int, ...], ...]:
    """All messages holding q articles on one candidate, 1 <= |q| <= cap."""
    cap = max_magnitude if budget is None else min(max_magnitude, budget)
    out = []
    for c in range(candidates):
        for q in range(-cap, cap + 1):
            if q == 0:
                continue
            news = [0] * candidates
            news[c] = q
            out.append(tuple(news))
    return tuple(sorted(out))


def augmentations(instance: Instance, current: list, budget: int,
                  alphabet, scorer: _PlanScorer) -> list:
    """The strict-improvement set F of one augmenting-greedy round.

    Returns tuples (mov_ws, votes_ws, node, news) for every (seed, message)
    outside the current plan that fits the budget and strictly raises the
    weighted margin sum or the weighted candidate-0 vote sum.
    """
    used = sum(message_size(news) for _, news, _ in current)
    taken = {node for node, _, _ in current}
    pin = _pin(instance)
    cands = [(node, news) for node in range(instance.node_count)
             if node not in taken
             for news in alphabet if used + message_size(news) <= budget]
    if not cands:
        return []
    plans = [current + [(node, news, pin)] for node, news in cands]
    movs = scorer.weighted(plans, MOV)
    votes = scorer.weighted(plans, VOTES0)
    cur_mov = int(scorer.weighted([current], MOV)[0])
    cur_votes = int(scorer.weighted([current], VOTES0)[0])
    out = []
    for (node, news), mv, vt in zip(cands, movs, votes):
        if mv > cur_mov or vt > cur_votes:
            out.append((int(mv), int(vt), node, news))
    return out


def greedy_augmentation(instance: Instance, budget: int, alphabet=None,
                        config: EvalConfig = EXACT,
                        steps: list | None = None) -> SeedingPlan:
    """Augmenting greedy: add improving (seed, message) pairs until stuck.

    Selection among improvements: greatest margin sum, then greatest
    candidate-0 vote sum, then lowest node id, then fewest articles, then
    lexicographically smallest message.
    """
    _require_no_baseline(instance)
    if alphabet is None:
        alphabet = single_candidate_alphabet(instance.candidates, budget=budget)
    scorer = _PlanScorer(instance, config)
    current: list = []
    while True:
        options = augmentations(instance, current, budget, alphabet, scorer)
        if not options:
            break
        options.sort(key=lambda o: (-o[0], -o[1], o[2], message_size(o[3]), o[3]))
        mov_ws, votes_ws, node, news = options[0]
        current.append((node, news, _pin(instance)))
        if steps is not None:
            steps.append((node, news, scorer.expectation(mov_ws),
                          scorer.expectation(votes_ws)))
    assignment = _as_assignment(instance, current)
    value = delta_mov_seeding(instance, assignment, config)
    return SeedingPlan(assignment, value, "greedy-augmentation")


# ---------------------------------------------------------------------------
# brute force


def _plan_space_size(n: int, alphabet, budget: int) -> int:
    sizes = sorted({message_size(m) for m in alphabet})
    by_size = {s: sum(1 for m in alphabet if message_size(m) == s) for s in sizes}
    total = 0
    for seats in range(0, budget + 1):
        if seats > n:
            break
        # tuples of message sizes summing within budget
        counts = {0: 1}
        for _ in range(seats):
            nxt: dict[int, int] = {}
            for acc, ways in counts.items():
                for s in sizes:
                    if acc + s <= budget:
                        nxt[acc + s] = nxt.get(acc + s, 0) + ways * by_size[s]
            counts = nxt
        total += comb(n, seats) * sum(counts.values())
    return total


def brute_force_seeding(instance: Instance, budget: int, alphabet=None,
                        config: EvalConfig = EXACT,
                        search_cap: int = 1 << 20,
                        chunk: int = 1 << 15) -> SeedingPlan:
    """Exact oracle: exhaustively maximize the expected margin increase.

    Searches every seed subset and message assignment from the (finite)
    alphabet within the budget.  Ties break toward the earliest plan in
    canonical order: fewer seeds, then lexicographic seeds and messages,
    so the empty plan wins all-zero instances.  Plan blocks are built as
    flat arrays (seed combinations x message tuples) to keep the inner
    loop inside the kernel.
    """
    _require_no_baseline(instance)
    if alphabet is None:
        alphabet = single_candidate_alphabet(instance.candidates, budget=budget)
    space = _plan_space_size(instance.node_count, alphabet, budget)
    if space > search_cap:
        raise SearchCapError(space, search_cap)
    scorer = _PlanScorer(instance, config)
    pin = _pin(instance)
    n, k = instance.node_count, instance.candidates
    alpha = np.array(alphabet, dtype=np.int64).reshape(len(alphabet), k)
    sizes = [message_size(m) for m in alphabet]

    empty_val = int(scorer.weighted([[]], MOV)[0])
    best_val = empty_val
    best_plan: list = []
    for seats in range(1, min(budget, n) + 1):
        msg_combos = np.array(
            [c for c in product(range(len(alphabet)), repeat=seats)
             if sum(sizes[i] for i in c) <= budget],
            dtype=np.int64).reshape(-1, seats)
        if not len(msg_combos):
            continue
        seed_combos = np.array(list(combinations(range(n), seats)),
                               dtype=np.int64)
        m_count = len(msg_combos)
        step = max(1, chunk // m_count)
        for lo in range(0, len(seed_combos), step):
            block = seed_combos[lo:lo + step]
            rows = len(block) * m_count
            plan_seed = np.repeat(block, m_count, axis=0).reshape(-1)
            msg_idx = np.tile(msg_combos, (len(block), 1)).reshape(-1)
            ptr = np.arange(rows + 1, dtype=np.int64) * seats
            bribed = np.full(rows * seats, pin, dtype=np.int64)
            vals = scorer.weighted_arrays(ptr, plan_seed, alpha[msg_idx], bribed, MOV)
            j = int(np.argmax(vals))
            if int(vals[j]) > best_val:
                best_val = int(vals[j])
                seeds = block[j // m_count]
                msgs = msg_combos[j % m_count]
                best_plan = [(int(s), alphabet[m], pin)
                             for s, m in zip(seeds, msgs)]

    assignment = _as_assignment(instance, best_plan)
    value = Evaluation(scorer.expectation(best_val - empty_val), "exact")
    return SeedingPlan(assignment, value, "brute-seeding")
