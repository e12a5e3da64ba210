"""Expected-value evaluation of margins, margin increases and influence.

Exact mode enumerates live graphs and carries rational weights, so every
value it reports is exact.  Monte Carlo mode averages integer per-sample
values; accumulators are exact integer sums, which makes results bit-stable
under any chunking or worker count for a fixed master seed.

Increase-style quantities (seeding delta, removal/addition deltas) are
computed per live graph and then averaged, coupling the before/after worlds
through the shared random-edge outcomes.
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass
from fractions import Fraction
from multiprocessing import Pool

import numpy as np

from . import backend
from .backend import CHI, MOV, VOTES0
from .model import EMPTY_ASSIGNMENT, Edge, Instance, SeedAssignment


@dataclass(frozen=True)
class EvalConfig:
    mode: str = "exact"          # "exact" | "mc"
    samples: int = 10_000
    seed: int = 0
    enumeration_cap: int = 20
    workers: int = 1
    chunk: int = 4096

    def exact(self) -> bool:
        if self.mode not in ("exact", "mc"):
            raise ValueError(f"unknown mode {self.mode!r}")
        return self.mode == "exact"


EXACT = EvalConfig()


@dataclass(frozen=True)
class Evaluation:
    """A computed expectation with its provenance.

    Exact evaluations carry a Fraction and no sampling fields; Monte Carlo
    evaluations carry the sample mean, the sample count and the standard
    error (sample standard deviation / sqrt(samples)).
    """

    value: Fraction | float
    mode: str
    samples: int | None = None
    std_error: float | None = None

    def as_float(self) -> float:
        return float(self.value)


def effective_edges(instance: Instance, removals=(), additions=()) -> tuple[Edge, ...]:
    """The instance's edge list after an optional removal/addition delta."""
    removals = {(int(u), int(v)) for u, v in removals}
    additions = {(int(u), int(v)) for u, v in additions}
    if removals & additions:
        raise ValueError("removals and additions overlap")
    present = {(e.src, e.dst) for e in instance.graph.edges}
    if not removals <= present:
        raise ValueError(f"removals not a subset of edges: {sorted(removals - present)}")
    addable = {(e.src, e.dst): e for e in instance.graph.addable_edges()}
    if not additions <= set(addable):
        raise ValueError("additions not a subset of the addable catalog")
    kept = [e for e in instance.graph.edges if (e.src, e.dst) not in removals]
    kept.extend(addable[a] for a in sorted(additions))
    return tuple(kept)


# ---------------------------------------------------------------------------
# evaluation jobs: one description drives both exact and MC paths


@dataclass(frozen=True)
class _Job:
    instance: Instance
    edges: tuple[Edge, ...]
    objective: int
    plus: SeedAssignment
    minus: SeedAssignment | None = None
    zero_plus: tuple[int, ...] = ()
    zero_minus: tuple[int, ...] = ()


def _masked(presence: np.ndarray, cols: tuple[int, ...]) -> np.ndarray:
    if not cols:
        return presence
    out = presence.copy()
    out[:, list(cols)] = 0
    return out


def _per_graph(job: _Job, presence: np.ndarray) -> np.ndarray:
    vals = backend.graph_values_for_assignment(
        job.instance, job.edges, job.plus, _masked(presence, job.zero_plus),
        job.objective)
    vals = np.asarray(vals, dtype=np.int64)
    if job.minus is not None:
        neg = backend.graph_values_for_assignment(
            job.instance, job.edges, job.minus, _masked(presence, job.zero_minus),
            job.objective)
        vals = vals - np.asarray(neg, dtype=np.int64)
    return vals


def _run_exact(job: _Job, config: EvalConfig) -> Evaluation:
    en = backend.enumerate_presence(job.edges, config.enumeration_cap)
    vals = _per_graph(job, en.presence)
    total = sum((w * int(v) for w, v in zip(en.weights, vals)), Fraction(0))
    return Evaluation(total, "exact")


def _mc_chunk(args) -> tuple[int, int, int]:
    job, master_seed, chunk_index, size = args
    rng = np.random.default_rng(np.random.SeedSequence(master_seed, spawn_key=(chunk_index,)))
    presence, counts = backend.sampled_presence(job.edges, rng, size)
    vals = _per_graph(job, presence)
    counts = [int(c) for c in counts]
    total = sum(c * int(v) for c, v in zip(counts, vals))
    total_sq = sum(c * int(v) ** 2 for c, v in zip(counts, vals))
    return size, total, total_sq


def _run_mc(job: _Job, config: EvalConfig) -> Evaluation:
    n = config.samples
    sizes = [config.chunk] * (n // config.chunk)
    if n % config.chunk:
        sizes.append(n % config.chunk)
    args = [(job, config.seed, i, size) for i, size in enumerate(sizes)]
    if config.workers > 1 and len(args) > 1:
        with Pool(config.workers) as pool:
            parts = pool.map(_mc_chunk, args)
    else:
        parts = [_mc_chunk(a) for a in args]
    total = sum(p[1] for p in parts)
    total_sq = sum(p[2] for p in parts)
    mean = total / n
    if n > 1:
        var = (total_sq - total * total / n) / (n - 1)
        se = math.sqrt(max(var, 0.0) / n)
    else:
        se = float("nan")
    return Evaluation(mean, "mc", samples=n, std_error=se)


def _run(job: _Job, config: EvalConfig) -> Evaluation:
    return _run_exact(job, config) if config.exact() else _run_mc(job, config)


# ---------------------------------------------------------------------------
# public evaluators


def expected_mov(instance: Instance, assignment: SeedAssignment,
                 removals=(), additions=(), config: EvalConfig = EXACT) -> Evaluation:
    """E[margin of victory] under an assignment and an optional edge delta."""
    edges = effective_edges(instance, removals, additions)
    return _run(_Job(instance, edges, MOV, assignment), config)


def expected_votes_c0(instance: Instance, assignment: SeedAssignment,
                      config: EvalConfig = EXACT) -> Evaluation:
    return _run(_Job(instance, instance.graph.edges, VOTES0, assignment), config)


def delta_mov_seeding(instance: Instance, assignment: SeedAssignment,
                      config: EvalConfig = EXACT) -> Evaluation:
    """Expected margin increase of a seeding plan over the empty plan."""
    if instance.baseline is not None:
        raise ValueError("seeding delta is defined for instances without a baseline")
    job = _Job(instance, instance.graph.edges, MOV, assignment, EMPTY_ASSIGNMENT)
    return _run(job, config)


def _baseline(instance: Instance) -> SeedAssignment:
    if instance.baseline is None:
        raise ValueError("instance carries no baseline assignment")
    return instance.baseline


def _delta_edges_job(instance: Instance, assignment, removal_set, addition_set,
                     objective: int) -> _Job:
    removal_set = sorted({(int(u), int(v)) for u, v in removal_set})
    addition_set = sorted({(int(u), int(v)) for u, v in addition_set})
    edges = effective_edges(instance, additions=addition_set)
    index = {(e.src, e.dst): i for i, e in enumerate(edges)}
    removed_cols = tuple(index[a] for a in removal_set)
    added_cols = tuple(index[a] for a in addition_set)
    # positive term: delta applied; negative term: original edge set
    return _Job(instance, edges, objective, assignment, assignment,
                zero_plus=removed_cols, zero_minus=added_cols)


def delta_mov_edge_removal(instance: Instance, removal_set,
                           config: EvalConfig = EXACT) -> Evaluation:
    """E[MoV after removing removal_set - MoV before], coupled per live graph."""
    job = _delta_edges_job(instance, _baseline(instance), removal_set, (), MOV)
    return _run(job, config)


def delta_mov_edge_addition(instance: Instance, addition_set,
                            config: EvalConfig = EXACT) -> Evaluation:
    job = _delta_edges_job(instance, _baseline(instance), (), addition_set, MOV)
    return _run(job, config)


def _seed_only_assignment(seed_set, k: int) -> SeedAssignment:
    # influence ignores message content; a zero vector is a placeholder
    return SeedAssignment.of({int(s): (0,) * k for s in seed_set})


def expected_influence(instance: Instance, seed_set,
                       removals=(), additions=(),
                       config: EvalConfig = EXACT) -> Evaluation:
    """E[number of influenced nodes] for a seed set (messages irrelevant)."""
    edges = effective_edges(instance, removals, additions)
    asg = _seed_only_assignment(seed_set, instance.candidates)
    return _run(_Job(instance, edges, CHI, asg), config)


def delta_influence_removal(instance: Instance, removal_set,
                            config: EvalConfig = EXACT) -> Evaluation:
    """E[chi before - chi after removal]: the influence suppressed."""
    asg = _seed_only_assignment(_baseline(instance).seeds(), instance.candidates)
    job = _delta_edges_job(instance, asg, removal_set, (), CHI)
    ev = _run(job, config)
    # job computes after - before; the removal objective is the negation
    if ev.mode == "exact":
        return Evaluation(-ev.value, "exact")
    return Evaluation(-ev.value, "mc", ev.samples, ev.std_error)


def delta_influence_addition(instance: Instance, addition_set,
                             config: EvalConfig = EXACT) -> Evaluation:
    """E[chi after addition - chi before]: the influence gained."""
    asg = _seed_only_assignment(_baseline(instance).seeds(), instance.candidates)
    job = _delta_edges_job(instance, asg, (), addition_set, CHI)
    return _run(job, config)


# ---------------------------------------------------------------------------
# result rows

CSV_VERSION = "movnet-results v1"
CSV_HEADER = "instance_id,manipulation,mode,value,samples,std_error,wall_time_ms"


def csv_comment() -> str:
    return f"# {CSV_VERSION}"


def format_value(value) -> str:
    if isinstance(value, Fraction):
        return f"{value.numerator}/{value.denominator}"
    return repr(float(value))


def csv_row(instance_id: str, manipulation: str, ev: Evaluation,
            wall_time_ms: float) -> str:
    samples = "" if ev.samples is None else str(ev.samples)
    se = "" if ev.std_error is None else repr(ev.std_error)
    return (f"{instance_id},{manipulation},{ev.mode},{format_value(ev.value)},"
            f"{samples},{se},{wall_time_ms:.3f}")


class StopwatchResult:
    def __init__(self, value, wall_ms):
        self.value = value
        self.wall_ms = wall_ms


def timed(fn, *args, **kwargs) -> StopwatchResult:
    t0 = time.perf_counter()
    value = fn(*args, **kwargs)
    return StopwatchResult(value, (time.perf_counter() - t0) * 1000.0)
