"""Edge-side solvers: brute-force oracles, closed forms, reoptimization.

The four brute-force oracles maximize the exact expected margin increase
(or influence change) over every subset of candidate edges within budget.
The closed forms cover the solvable corner: two candidates, all seeds
sharing one single-article message, unlimited budget.  `reopt` replays a
known solution after one edge-probability change and re-solves.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from math import comb

import numpy as np

from . import backend
from .backend import CHI, MOV, ops
from .errors import PreconditionError, SearchCapError
from .evaluate import (
    EXACT,
    EvalConfig,
    Evaluation,
    delta_influence_addition,
    delta_influence_removal,
    delta_mov_edge_addition,
    delta_mov_edge_removal,
)
from .model import Instance, is_single_news_article

UNLIMITED = math.inf


@dataclass(frozen=True)
class EdgePlan:
    kind: str                     # "removal" | "addition"
    edge_set: tuple[tuple[int, int], ...]
    claimed_value: Evaluation
    solver: str

    def to_dict(self) -> dict:
        from .evaluate import format_value
        return {
            "solver": self.solver,
            "kind": self.kind,
            "edges": [list(e) for e in self.edge_set],
            "value": format_value(self.claimed_value.value),
            "mode": self.claimed_value.mode,
        }


def _baseline(instance: Instance):
    if instance.baseline is None:
        raise PreconditionError("instance carries no baseline assignment")
    return instance.baseline


# ---------------------------------------------------------------------------
# exhaustive subset search


class _SubsetSearch:
    """Exact search over subsets of candidate edges.

    The edge universe is the instance's edges plus (for additions) the
    addable catalog; random-edge outcomes are enumerated once and shared by
    every subset, so before/after comparisons are coupled.
    """

    def __init__(self, instance: Instance, kind: str, config: EvalConfig = EXACT):
        self.instance = instance
        self.kind = kind
        self.removal = kind == "removal"
        base_edges = instance.graph.edges
        self.cands = (base_edges if self.removal
                      else instance.graph.addable_edges())
        if len(self.cands) > 62:
            raise SearchCapError(2 ** len(self.cands), 2 ** 62)
        universe = list(base_edges) + ([] if self.removal else list(self.cands))
        self.universe = universe

        e_count = len(universe)
        det = np.full(e_count, -1, dtype=np.int8)
        rand_idx = np.full(e_count, -1, dtype=np.int64)
        cand_idx = np.full(e_count, -1, dtype=np.int64)
        base_live = np.zeros(e_count, dtype=np.uint8)
        rnd_edges = []
        for i, e in enumerate(universe):
            if e.p == 1:
                det[i] = 1
            elif e.p == 0:
                det[i] = 0
            else:
                det[i] = -1
                rand_idx[i] = len(rnd_edges)
                rnd_edges.append(e)
            base_live[i] = 1 if (self.removal or i < len(base_edges)) else 0
        cand_offset = 0 if self.removal else len(base_edges)
        for bit in range(len(self.cands)):
            cand_idx[cand_offset + bit] = bit

        if len(rnd_edges) > config.enumeration_cap:
            from .diffusion import EnumerationCapError
            raise EnumerationCapError(len(rnd_edges), config.enumeration_cap)
        self.denom = 1
        for e in rnd_edges:
            self.denom *= e.p.denominator
        if self.denom >= (1 << 62):
            raise backend.WeightOverflowError(
                f"live-graph denominator {self.denom} exceeds int64")
        a_count = 1 << len(rnd_edges)
        present = np.zeros((a_count, max(len(rnd_edges), 1)), dtype=np.uint8)
        weights = np.empty(a_count, dtype=np.int64)
        for a in range(a_count):
            w = Fraction(1)
            for j, e in enumerate(rnd_edges):
                if a >> j & 1:
                    present[a, j] = 1
                    w *= e.p
                else:
                    w *= 1 - e.p
            weights[a] = int(w * self.denom)
        self.assign_present = present
        self.assign_w = weights

        self.base, self.dm1, self.dmul = backend.base_arrays(instance)
        self.esrc, self.edst = backend.edge_endpoint_arrays(universe)
        self.det, self.rand_idx, self.cand_idx = det, rand_idx, cand_idx
        self.base_live = base_live
        asg = _baseline(instance)
        self.seed_ids, self.msgs, self.bribed = backend.assignment_arrays(instance, asg)

    def values(self, masks: np.ndarray, objective: int) -> np.ndarray:
        return np.asarray(ops.subset_values(
            self.instance.node_count, self.base, self.dm1, self.dmul,
            self.esrc, self.edst, self.det, self.rand_idx, self.cand_idx,
            self.base_live, int(self.removal), masks,
            self.assign_present, self.assign_w,
            self.seed_ids, self.msgs, self.bribed, objective))

    def mask_edges(self, mask: int) -> tuple[tuple[int, int], ...]:
        return tuple((self.cands[i].src, self.cands[i].dst)
                     for i in range(len(self.cands)) if mask >> i & 1)


def _masks_within_budget(n_cands: int, budget) -> tuple[np.ndarray, int]:
    """Canonically ordered subset masks: size ascending, then lexicographic."""
    limit = n_cands if budget is UNLIMITED or budget == math.inf else min(int(budget), n_cands)
    count = sum(comb(n_cands, s) for s in range(limit + 1))
    masks = np.empty(count, dtype=np.uint64)
    i = 0
    for size in range(limit + 1):
        for combo in combinations(range(n_cands), size):
            masks[i] = sum(1 << b for b in combo)
            i += 1
    return masks, count


def _brute_force(instance: Instance, kind: str, budget, objective: int,
                 config: EvalConfig, search_cap: int, solver: str,
                 chunk: int = 1 << 16) -> EdgePlan:
    search = _SubsetSearch(instance, kind, config)
    n_cands = len(search.cands)
    limit = n_cands if budget == UNLIMITED else min(int(budget), n_cands)
    space = sum(comb(n_cands, s) for s in range(limit + 1))
    if space > search_cap:
        raise SearchCapError(space, search_cap)
    masks, _ = _masks_within_budget(n_cands, budget)

    # removal lowers influence, addition raises it; margin objectives always
    # maximize (value(mask) - value(empty))
    flip = -1 if (objective == CHI and kind == "removal") else 1
    best_mask, best_val, empty_val = 0, None, None
    for lo in range(0, len(masks), chunk):
        part = masks[lo:lo + chunk]
        vals = search.values(part, objective)
        if empty_val is None:
            empty_val = int(vals[0])  # mask 0 is first in canonical order
        deltas = flip * (vals - empty_val)
        j = int(np.argmax(deltas))
        if best_val is None or int(deltas[j]) > best_val:
            best_val = int(deltas[j])
            best_mask = int(part[j])
    value = Evaluation(Fraction(best_val, search.denom), "exact")
    return EdgePlan(kind, search.mask_edges(best_mask), value, solver)


def brute_force_removal(instance: Instance, budget=UNLIMITED,
                        config: EvalConfig = EXACT,
                        search_cap: int = 1 << 20) -> EdgePlan:
    """Oracle for margin maximization by edge removal."""
    return _brute_force(instance, "removal", budget, MOV, config, search_cap,
                        "brute-removal")


def brute_force_addition(instance: Instance, budget=UNLIMITED,
                         config: EvalConfig = EXACT,
                         search_cap: int = 1 << 20) -> EdgePlan:
    """Oracle for margin maximization by edge addition."""
    return _brute_force(instance, "addition", budget, MOV, config, search_cap,
                        "brute-addition")


def brute_force_influence_removal(instance: Instance, budget=UNLIMITED,
                                  config: EvalConfig = EXACT,
                                  search_cap: int = 1 << 20) -> EdgePlan:
    """Oracle for influence minimization by edge removal."""
    return _brute_force(instance, "removal", budget, CHI, config, search_cap,
                        "brute-influence-removal")


def brute_force_influence_addition(instance: Instance, budget=UNLIMITED,
                                   config: EvalConfig = EXACT,
                                   search_cap: int = 1 << 20) -> EdgePlan:
    """Oracle for influence maximization by edge addition."""
    return _brute_force(instance, "addition", budget, CHI, config, search_cap,
                        "brute-influence-addition")


# ---------------------------------------------------------------------------
# unlimited-budget closed forms


def _shared_single_message(instance: Instance) -> tuple[int, ...]:
    asg = _baseline(instance)
    if instance.candidates != 2:
        raise PreconditionError(
            f"closed form needs exactly 2 candidates, got {instance.candidates}")
    if not asg.entries:
        raise PreconditionError("closed form needs at least one seed")
    news = {e.news for e in asg.entries}
    if len(news) != 1:
        raise PreconditionError("closed form needs all seeds sharing one message")
    message = next(iter(news))
    if not is_single_news_article(message):
        raise PreconditionError(
            f"closed form needs a single-news-article message, got {message}")
    return message


def _against_candidate0(message: tuple[int, ...]) -> bool:
    return message[0] < 0 or message[1] > 0


def two_candidate_removal(instance: Instance,
                          config: EvalConfig = EXACT) -> EdgePlan:
    """Unlimited-budget removal closed form for one shared +-1 message.

    A message against candidate 0 is contained by cutting every edge; a
    favourable one spreads best on the untouched graph.
    """
    message = _shared_single_message(instance)
    if _against_candidate0(message):
        edge_set = tuple((e.src, e.dst) for e in instance.graph.edges)
    else:
        edge_set = ()
    value = delta_mov_edge_removal(instance, edge_set, config)
    return EdgePlan("removal", edge_set, value, "two-candidate-removal")


def two_candidate_addition(instance: Instance,
                           config: EvalConfig = EXACT) -> EdgePlan:
    """Unlimited-budget addition closed form for one shared +-1 message."""
    message = _shared_single_message(instance)
    if _against_candidate0(message):
        edge_set = ()
    else:
        edge_set = tuple((e.src, e.dst) for e in instance.graph.addable_edges())
    value = delta_mov_edge_addition(instance, edge_set, config)
    return EdgePlan("addition", edge_set, value, "two-candidate-addition")


def unlimited_influence_removal(instance: Instance,
                                config: EvalConfig = EXACT) -> EdgePlan:
    """Remove every edge: only the seeds stay influenced."""
    edge_set = tuple((e.src, e.dst) for e in instance.graph.edges)
    value = delta_influence_removal(instance, edge_set, config)
    return EdgePlan("removal", edge_set, value, "remove-all")


def unlimited_influence_addition(instance: Instance,
                                 config: EvalConfig = EXACT) -> EdgePlan:
    """Add the whole addable catalog: influence is edge-monotone."""
    edge_set = tuple((e.src, e.dst) for e in instance.graph.addable_edges())
    value = delta_influence_addition(instance, edge_set, config)
    return EdgePlan("addition", edge_set, value, "add-all")


# ---------------------------------------------------------------------------
# reoptimization


@dataclass(frozen=True)
class ReoptResult:
    modified: Instance
    previous_value: Evaluation    # known solution re-evaluated after the change
    solution: object              # SeedingPlan or EdgePlan from the solver


def re_evaluate(instance: Instance, plan, config: EvalConfig = EXACT) -> Evaluation:
    """Value of an existing plan on a (possibly modified) instance."""
    from .seeding import SeedingPlan
    from .evaluate import delta_mov_seeding
    if isinstance(plan, SeedingPlan):
        return delta_mov_seeding(instance, plan.assignment, config)
    if isinstance(plan, EdgePlan):
        if plan.solver in ("brute-influence-removal", "remove-all"):
            return delta_influence_removal(instance, plan.edge_set, config)
        if plan.solver in ("brute-influence-addition", "add-all"):
            return delta_influence_addition(instance, plan.edge_set, config)
        if plan.kind == "removal":
            return delta_mov_edge_removal(instance, plan.edge_set, config)
        return delta_mov_edge_addition(instance, plan.edge_set, config)
    raise TypeError(f"cannot re-evaluate {type(plan).__name__}")


def reopt(instance: Instance, known_solution, edge: tuple[int, int],
          new_probability, solver, config: EvalConfig = EXACT,
          **solver_kwargs) -> ReoptResult:
    """Re-solve after changing one edge probability.

    `solver` is any plan-returning callable of (instance, ...); the known
    solution is re-evaluated on the modified instance for comparison.
    """
    modified = instance.with_probability(edge, new_probability)
    previous = re_evaluate(modified, known_solution, config)
    solution = solver(modified, config=config, **solver_kwargs)
    return ReoptResult(modified, previous, solution)
