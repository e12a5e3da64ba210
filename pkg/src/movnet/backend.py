"""Backend selection and array plumbing for the batch kernels.

The compiled Cython extension is preferred; the numpy fallback keeps the
package functional without a compiler.  Set MOVNET_BACKEND=pure to force the
fallback (the benchmark and parity tests do).
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from . import _purekernels
from .diffusion import EnumerationCapError
from .model import Instance, SeedAssignment

if os.environ.get("MOVNET_BACKEND", "").lower() == "pure":
    ops = _purekernels
else:
    try:
        from . import _kernels as ops  # type: ignore[no-redef]
    except ImportError:
        ops = _purekernels

BACKEND = ops.NAME

MOV, CHI, VOTES0, NEWCHI = (_purekernels.MOV, _purekernels.CHI,
                            _purekernels.VOTES0, _purekernels.NEWCHI)

# searches need integer live-graph weights; beyond this the common
# denominator cannot be carried in int64 arithmetic
_WEIGHT_LIMIT = 1 << 62


class WeightOverflowError(ValueError):
    """Exact search weights exceed the integer range; use Monte Carlo."""


@dataclass(frozen=True)
class EdgeEnumeration:
    """All live graphs of an edge list, in kernel-ready form.

    presence[g, e] says whether edge e is on in live graph g.  weights are
    exact; weights_int holds them over the common denominator `denom` when
    that fits in int64, else None.
    """

    edges: tuple
    presence: np.ndarray          # (G, E) uint8
    weights: tuple[Fraction, ...]
    denom: int
    weights_int: np.ndarray | None

    @property
    def count(self) -> int:
        return self.presence.shape[0]

    def require_int_weights(self) -> np.ndarray:
        if self.weights_int is None:
            raise WeightOverflowError(
                f"common live-graph denominator {self.denom} exceeds int64; "
                "exact search is infeasible here, use Monte Carlo")
        return self.weights_int


def enumerate_presence(edges, cap: int = 20) -> EdgeEnumeration:
    edges = tuple(edges)
    rnd = [i for i, e in enumerate(edges) if 0 < e.p < 1]
    if len(rnd) > cap:
        raise EnumerationCapError(len(rnd), cap)
    e_count = len(edges)
    g_count = 1 << len(rnd)
    presence = np.zeros((g_count, e_count), dtype=np.uint8)
    for i, e in enumerate(edges):
        if e.p == 1:
            presence[:, i] = 1
    denom = 1
    for i in rnd:
        denom *= edges[i].p.denominator
    weights = []
    ints = np.empty(g_count, dtype=np.int64)
    fits = denom < _WEIGHT_LIMIT
    for g in range(g_count):
        w = Fraction(1)
        for bit, i in enumerate(rnd):
            if g >> bit & 1:
                presence[g, i] = 1
                w *= edges[i].p
            else:
                w *= 1 - edges[i].p
        weights.append(w)
        if fits:
            ints[g] = int(w * denom)
    return EdgeEnumeration(edges, presence, tuple(weights), denom,
                           ints if fits else None)


def sampled_presence(edges, rng, samples: int) -> tuple[np.ndarray, np.ndarray]:
    """Monte Carlo twin of enumerate_presence: deduplicated live graphs.

    Returns (presence (G, E), counts (G,)) with counts summing to `samples`.
    """
    edges = tuple(edges)
    rnd = [i for i, e in enumerate(edges) if 0 < e.p < 1]
    draws = np.empty((samples, len(rnd)), dtype=np.uint8)
    for j, i in enumerate(rnd):
        draws[:, j] = rng.random(samples) < float(edges[i].p)
    if rnd:
        uniq, counts = np.unique(draws, axis=0, return_counts=True)
    else:
        uniq = np.zeros((1, 0), dtype=np.uint8)
        counts = np.array([samples])
    presence = np.zeros((uniq.shape[0], len(edges)), dtype=np.uint8)
    for i, e in enumerate(edges):
        if e.p == 1:
            presence[:, i] = 1
    for j, i in enumerate(rnd):
        presence[:, i] = uniq[:, j]
    return presence, counts.astype(np.int64)


def base_arrays(instance: Instance) -> tuple[np.ndarray, int, int]:
    """(base scores (n,k) int64, D-1, D): integer form of the revision rule."""
    base = np.array(instance.scores, dtype=np.int64)
    d = instance.score_scale
    return base, d - 1, d


def edge_endpoint_arrays(edges) -> tuple[np.ndarray, np.ndarray]:
    esrc = np.array([e.src for e in edges], dtype=np.int64)
    edst = np.array([e.dst for e in edges], dtype=np.int64)
    return esrc, edst


def assignment_arrays(instance: Instance, assignment: SeedAssignment):
    """(seed_ids, msgs, bribed) arrays for one assignment."""
    k = instance.candidates
    seed_ids = np.array([e.node for e in assignment.entries], dtype=np.int64)
    msgs = np.array([list(e.news) for e in assignment.entries],
                    dtype=np.int64).reshape(len(assignment.entries), k)
    if instance.bribed_seeds:
        bribed = np.array([e.bribed_to for e in assignment.entries], dtype=np.int64)
    else:
        bribed = np.full(len(assignment.entries), -1, dtype=np.int64)
    return seed_ids, msgs, bribed


def pack_plans(plans, k: int) -> tuple[np.ndarray, np.ndarray, np.ndarray, np.ndarray]:
    """Flatten [(seed_ids, msgs, bribed)] plans into kernel arrays.

    Each plan is a sequence of (node, news, bribed_to_or_minus1) triples.
    """
    ptr = [0]
    seeds, msgs, bribed = [], [], []
    for plan in plans:
        for node, news, pin in plan:
            seeds.append(node)
            msgs.append(list(news))
            bribed.append(pin)
        ptr.append(len(seeds))
    return (np.array(ptr, dtype=np.int64),
            np.array(seeds, dtype=np.int64),
            np.array(msgs, dtype=np.int64).reshape(len(seeds), k),
            np.array(bribed, dtype=np.int64))


def plan_triples(instance: Instance, assignment: SeedAssignment):
    pin_active = instance.bribed_seeds
    return [(e.node, e.news, e.bribed_to if pin_active else -1)
            for e in assignment.entries]


def graph_values_for_assignment(instance: Instance, edges,
                                assignment: SeedAssignment,
                                presence: np.ndarray,
                                objective: int) -> np.ndarray:
    """Per-live-graph objective values for one assignment."""
    base, dm1, dmul = base_arrays(instance)
    esrc, edst = edge_endpoint_arrays(edges)
    seed_ids, msgs, bribed = assignment_arrays(instance, assignment)
    reach = ops.seed_reach_stack(instance.node_count, esrc, edst,
                                 np.ascontiguousarray(presence), seed_ids)
    return ops.assignment_graph_values(reach, base, dm1, dmul,
                                       seed_ids, msgs, bribed, objective)
