"""Single-realization diffusion: live graphs, message spread, vote revision.

A live graph fixes the outcome of every random edge.  Each seed's message
then reaches exactly the nodes reachable from the seed in the live graph
(seeds included), all messages sharing the one realization.  Votes are
recast from the revised scores

    pi*_v(i) = (1 - eps) * pi_v(i) + sum of m_s(i) over messages reaching v

with eps = 1/(1 + max initial score), which breaks every potential tie in
favor of the candidate ranked lower before the diffusion.  All arithmetic
here is exact.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from fractions import Fraction

from .model import Instance, SeedAssignment, epsilon


class TieError(AssertionError):
    """A revised score row contains a tie; impossible for valid instances."""


class EnumerationCapError(ValueError):
    """Too many random edges to enumerate live graphs exactly."""

    def __init__(self, random_edges: int, cap: int):
        super().__init__(
            f"{random_edges} random edges exceed the enumeration cap {cap}; "
            "use Monte Carlo evaluation instead")
        self.random_edges = random_edges
        self.cap = cap


@dataclass(frozen=True)
class LiveGraph:
    """One deterministic realization of the random edge set.

    `probability` is set only when the realization comes from exhaustive
    enumeration; sampled realizations leave it None.
    """

    arcs: frozenset[tuple[int, int]]
    probability: Fraction | None = None

    def serial(self) -> list[tuple[int, int]]:
        """Canonical sorted arc list, the golden-test form."""
        return sorted(self.arcs)


def split_edges(edges) -> tuple[list, list]:
    """Partition an edge list into (deterministic, random) parts.

    Deterministic edges have probability 0 or 1; only p=1 edges matter for
    reachability, but p=0 edges are kept out of both lists' live parts.
    """
    fixed, random_edges = [], []
    for e in edges:
        if e.p == 1:
            fixed.append(e)
        elif e.p == 0:
            continue
        else:
            random_edges.append(e)
    return fixed, random_edges


def enumerate_live_graphs(edges, cap: int = 20) -> list[LiveGraph]:
    """All 2^r live graphs of an edge list with r random edges.

    Probabilities are exact and sum to one.  Raises EnumerationCapError when
    r exceeds `cap`.
    """
    fixed, rnd = split_edges(edges)
    if len(rnd) > cap:
        raise EnumerationCapError(len(rnd), cap)
    base = tuple((e.src, e.dst) for e in fixed)
    out = []
    for mask in range(1 << len(rnd)):
        arcs = list(base)
        p = Fraction(1)
        for i, e in enumerate(rnd):
            if mask >> i & 1:
                arcs.append((e.src, e.dst))
                p *= e.p
            else:
                p *= 1 - e.p
        if p > 0:
            out.append(LiveGraph(frozenset(arcs), p))
    return out


def sample_live_graph(edges, rng) -> LiveGraph:
    """Draw one live graph; each random edge joins independently with its p."""
    fixed, rnd = split_edges(edges)
    arcs = [(e.src, e.dst) for e in fixed]
    for e in rnd:
        if rng.random() < float(e.p):
            arcs.append((e.src, e.dst))
    return LiveGraph(frozenset(arcs))


def _reachable(adjacency, start: int) -> frozenset[int]:
    seen = {start}
    queue = deque([start])
    while queue:
        u = queue.popleft()
        for v in adjacency.get(u, ()):
            if v not in seen:
                seen.add(v)
                queue.append(v)
    return frozenset(seen)


def influenced_sets(live: LiveGraph, assignment: SeedAssignment):
    """Per-seed influenced node sets and their union.

    The timed activation fronts of the cascade collapse, on a fixed live
    graph, to plain reachability from each seed (the seed activates itself
    at time zero), so that is what we compute.
    """
    adjacency: dict[int, list[int]] = {}
    for u, v in live.arcs:
        adjacency.setdefault(u, []).append(v)
    per_seed = {e.node: _reachable(adjacency, e.node) for e in assignment.entries}
    union = frozenset().union(*per_seed.values()) if per_seed else frozenset()
    return per_seed, union


def chi(live: LiveGraph, assignment: SeedAssignment) -> int:
    """Number of influenced nodes (union over seeds, seeds included)."""
    _, union = influenced_sets(live, assignment)
    return len(union)


@dataclass(frozen=True)
class FinalScores:
    """Exact post-revision scores and the received-article counts."""

    scores: tuple[tuple[Fraction, ...], ...]
    received: tuple[tuple[int, ...], ...]
    # seed -> forced candidate, set only under bribed seeds
    pinned: dict[int, int]


def revise_scores(instance: Instance, assignment: SeedAssignment,
                  live: LiveGraph) -> FinalScores:
    """Apply every delivered message to every voter's score row."""
    n, k = instance.node_count, instance.candidates
    per_seed, _ = influenced_sets(live, assignment)
    received = [[0] * k for _ in range(n)]
    for entry in assignment.entries:
        for v in per_seed[entry.node]:
            row = received[v]
            for c, q in enumerate(entry.news):
                row[c] += q
    keep = 1 - epsilon(instance)
    scores = tuple(
        tuple(keep * instance.scores[v][c] + received[v][c] for c in range(k))
        for v in range(n)
    )
    pinned = {}
    if instance.bribed_seeds:
        pinned = {e.node: e.bribed_to for e in assignment.entries}
    return FinalScores(scores, tuple(tuple(r) for r in received), pinned)


@dataclass(frozen=True)
class Tally:
    votes: tuple[int, ...]
    winner: int
    mov: int


def tally(final: FinalScores) -> Tally:
    """Count plurality votes and the margin of victory of candidate 0.

    A tie inside any revised row is a broken invariant and raises TieError
    rather than being silently resolved.
    """
    k = len(final.scores[0]) if final.scores else 0
    votes = [0] * k
    for v, row in enumerate(final.scores):
        if v in final.pinned:
            votes[final.pinned[v]] += 1
            continue
        best = max(row)
        if sum(1 for s in row if s == best) > 1:
            raise TieError(f"tie in revised scores of voter {v}: {row}")
        votes[row.index(best)] += 1
    mov = votes[0] - max(votes[1:])
    winner = votes.index(max(votes))
    return Tally(tuple(votes), winner, mov)


def mov_of(instance: Instance, assignment: SeedAssignment, live: LiveGraph) -> int:
    return tally(revise_scores(instance, assignment, live)).mov
