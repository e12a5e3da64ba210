"""Domain types for election-manipulation instances.

An instance bundles a weighted directed influence graph, one integer score
row per voter (the voter's strict preference over candidates, argmax wins),
an optional baseline seeding (fixed seeds with their messages, used by the
edge-manipulation problems) and the catalog of edges the manipulator may add.

Candidate 0 is always the manipulator's candidate.  Scores are plain
integers and edge probabilities are exact `Fraction`s so that enumeration
weights and perturbed scores never suffer floating-point ties.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, replace
from fractions import Fraction
from functools import cached_property
from typing import Iterable, NamedTuple


class Edge(NamedTuple):
    src: int
    dst: int
    p: Fraction


class SeedEntry(NamedTuple):
    node: int
    news: tuple[int, ...]
    # vote forced on this seed when Instance.bribed_seeds is set
    bribed_to: int = 0


def as_fraction(value) -> Fraction:
    """Coerce ints, "num/den" strings, floats and Fractions to Fraction.

    Floats convert to their exact binary rational, which is the documented
    concession for the one gadget family with irrational edge weights.
    """
    if isinstance(value, Fraction):
        return value
    if isinstance(value, (int, str)):
        return Fraction(value)
    if isinstance(value, float):
        return Fraction(value)
    raise TypeError(f"cannot interpret {value!r} as an exact probability")


def make_edge(src: int, dst: int, p=1) -> Edge:
    return Edge(int(src), int(dst), as_fraction(p))


def message_size(news: Iterable[int]) -> int:
    """Number of news articles in a message: sum of absolute entries."""
    return sum(abs(int(q)) for q in news)


def is_single_news_article(news: Iterable[int]) -> bool:
    """True when exactly one entry is nonzero and that entry is +-1."""
    nonzero = [q for q in news if q != 0]
    return len(nonzero) == 1 and abs(nonzero[0]) == 1


@dataclass(frozen=True)
class SeedAssignment:
    """A set of seeds with the message each one injects.

    `entries` is kept sorted by node id so equal assignments serialize to
    identical bytes.
    """

    entries: tuple[SeedEntry, ...] = ()

    @classmethod
    def of(cls, mapping, bribed_to=None) -> "SeedAssignment":
        """Build from {node: news tuple}; `bribed_to` maps node -> candidate."""
        bribed_to = bribed_to or {}
        entries = tuple(
            SeedEntry(int(node), tuple(int(q) for q in news), int(bribed_to.get(node, 0)))
            for node, news in sorted(mapping.items())
        )
        return cls(entries)

    def seeds(self) -> tuple[int, ...]:
        return tuple(e.node for e in self.entries)

    def news_of(self, node: int) -> tuple[int, ...]:
        for e in self.entries:
            if e.node == node:
                return e.news
        raise KeyError(node)

    def size(self) -> int:
        """Total number of news articles |M|."""
        return sum(message_size(e.news) for e in self.entries)

    def merged_with(self, other: "SeedAssignment") -> "SeedAssignment":
        nodes = {e.node for e in self.entries}
        if nodes & {e.node for e in other.entries}:
            raise ValueError("assignments share seeds")
        return SeedAssignment(tuple(sorted(self.entries + other.entries)))

    def __len__(self) -> int:
        return len(self.entries)


EMPTY_ASSIGNMENT = SeedAssignment()


@dataclass(frozen=True)
class InfluenceGraph:
    """Directed influence graph plus the catalog of addable edges.

    `addable` lists the edges the manipulator may create, disjoint from
    `edges`.  `None` means the default catalog: every absent non-loop edge,
    with probability one.
    """

    node_count: int
    edges: tuple[Edge, ...] = ()
    addable: tuple[Edge, ...] | None = None

    @classmethod
    def of(cls, node_count, edges, addable=None) -> "InfluenceGraph":
        norm = tuple(sorted(make_edge(*e) for e in edges))
        norm_add = None if addable is None else tuple(sorted(make_edge(*e) for e in addable))
        return cls(int(node_count), norm, norm_add)

    def addable_edges(self) -> tuple[Edge, ...]:
        """Resolve the addable catalog (complement with p=1 when unset)."""
        if self.addable is not None:
            return self.addable
        present = {(e.src, e.dst) for e in self.edges}
        out = []
        for u in range(self.node_count):
            for v in range(self.node_count):
                if u != v and (u, v) not in present:
                    out.append(Edge(u, v, Fraction(1)))
        return tuple(out)

    def arcs(self) -> tuple[tuple[int, int], ...]:
        return tuple((e.src, e.dst) for e in self.edges)


@dataclass(frozen=True)
class Instance:
    """One election scenario.

    candidates: number of candidates (>= 2); index 0 is the manipulator's.
    scores: one integer row per voter, injective within each row.
    baseline: fixed seeds and messages, required by the edge problems.
    bribed_seeds: seeds vote for their pre-assigned candidate no matter
        what messages they send or receive.
    """

    candidates: int
    graph: InfluenceGraph
    scores: tuple[tuple[int, ...], ...]
    baseline: SeedAssignment | None = None
    bribed_seeds: bool = False

    @property
    def node_count(self) -> int:
        return self.graph.node_count

    @cached_property
    def max_score(self) -> int:
        return max(max(row) for row in self.scores)

    @cached_property
    def score_scale(self) -> int:
        """Denominator D of the tie-break factor: epsilon = 1/D."""
        return 1 + self.max_score

    def with_probability(self, edge: tuple[int, int], p) -> "Instance":
        """Copy of the instance with one edge (or addable edge) reweighted."""
        p = as_fraction(p)
        key = (int(edge[0]), int(edge[1]))
        edges = self.graph.edges
        addable = self.graph.addable
        if key in {(e.src, e.dst) for e in edges}:
            edges = tuple(Edge(e.src, e.dst, p) if (e.src, e.dst) == key else e
                          for e in edges)
        elif addable is not None and key in {(e.src, e.dst) for e in addable}:
            addable = tuple(Edge(e.src, e.dst, p) if (e.src, e.dst) == key else e
                            for e in addable)
        else:
            raise KeyError(f"edge {key} is neither present nor addable")
        return replace(self, graph=replace(self.graph, edges=edges, addable=addable))


def epsilon(instance: Instance) -> Fraction:
    """Tie-break constant 1 / (1 + largest initial score)."""
    return Fraction(1, instance.score_scale)


def delta(instance: Instance) -> int:
    """Largest score deficit of candidate 0 against any rival, clamped at 0."""
    worst = 0
    for row in instance.scores:
        for i in range(1, instance.candidates):
            worst = max(worst, row[i] - row[0])
    return worst


def is_hard_to_manipulate(instance: Instance, budget: int) -> bool:
    return budget < delta(instance)


def validate(instance: Instance) -> list[str]:
    """Collect every invariant violation; an empty list means valid.

    Validation never raises: downstream modules require a clean report as a
    precondition and tests assert emptiness on every generated instance.
    """
    out = []
    n = instance.graph.node_count
    k = instance.candidates
    if k < 2:
        out.append(f"need at least two candidates, got {k}")
    if len(instance.scores) != n:
        out.append(f"score rows ({len(instance.scores)}) != node count ({n})")
    for v, row in enumerate(instance.scores):
        if len(row) != k:
            out.append(f"voter {v}: row length {len(row)} != candidates {k}")
            continue
        if any(s < 0 for s in row):
            out.append(f"voter {v}: negative score in {row}")
        if len(set(row)) != len(row):
            out.append(f"voter {v}: non-injective score row {row}")
    seen = {}
    addable = instance.graph.addable or ()
    for origin, edges in (("edge", instance.graph.edges), ("addable", addable)):
        for e in edges:
            if not (0 <= e.src < n and 0 <= e.dst < n):
                out.append(f"{origin} ({e.src},{e.dst}) out of node range")
            if e.src == e.dst:
                out.append(f"{origin} self-loop at node {e.src}")
            if not (0 <= e.p <= 1):
                out.append(f"{origin} ({e.src},{e.dst}): probability {e.p} out of range")
            key = (e.src, e.dst)
            if key in seen:
                out.append(f"duplicate edge {key} in {seen[key]} + {origin}")
            seen[key] = origin
    if instance.baseline is not None:
        for entry in instance.baseline.entries:
            if not 0 <= entry.node < n:
                out.append(f"seed {entry.node} out of node range")
            if len(entry.news) != k:
                out.append(f"seed {entry.node}: news length {len(entry.news)} != {k}")
            elif message_size(entry.news) < 1:
                out.append(f"seed {entry.node}: empty message")
            if not 0 <= entry.bribed_to < k:
                out.append(f"seed {entry.node}: bribed vote for unknown candidate")
    return out


def has_unitary_distances(instance: Instance) -> bool:
    """Every row is a permutation of 0..candidates-1 (adjacent ranks differ by one)."""
    want = set(range(instance.candidates))
    return all(set(row) == want for row in instance.scores)


# ---------------------------------------------------------------------------
# JSON interchange (the CLI / golden-file contract)


def _frac_str(p: Fraction) -> str:
    return f"{p.numerator}/{p.denominator}"


def instance_to_dict(instance: Instance) -> dict:
    doc = {
        "candidates": instance.candidates,
        "nodes": instance.graph.node_count,
        "edges": [[e.src, e.dst, _frac_str(e.p)] for e in instance.graph.edges],
        "addable_edges": None if instance.graph.addable is None
        else [[e.src, e.dst, _frac_str(e.p)] for e in instance.graph.addable],
        "scores": [list(row) for row in instance.scores],
        "seeds": None if instance.baseline is None else [
            {"node": e.node, "news": list(e.news), "bribed_to": e.bribed_to}
            for e in instance.baseline.entries
        ],
        "bribed": instance.bribed_seeds,
    }
    return doc


def instance_to_json(instance: Instance) -> str:
    return json.dumps(instance_to_dict(instance), indent=1, sort_keys=True)


def instance_from_dict(doc: dict) -> Instance:
    graph = InfluenceGraph.of(
        doc["nodes"],
        [(s, d, Fraction(p)) for s, d, p in doc["edges"]],
        None if doc.get("addable_edges") is None
        else [(s, d, Fraction(p)) for s, d, p in doc["addable_edges"]],
    )
    baseline = None
    if doc.get("seeds") is not None:
        baseline = SeedAssignment(tuple(sorted(
            SeedEntry(int(s["node"]), tuple(int(q) for q in s["news"]),
                      int(s.get("bribed_to", 0)))
            for s in doc["seeds"]
        )))
    return Instance(
        candidates=int(doc["candidates"]),
        graph=graph,
        scores=tuple(tuple(int(x) for x in row) for row in doc["scores"]),
        baseline=baseline,
        bribed_seeds=bool(doc.get("bribed", False)),
    )


def instance_from_json(text: str) -> Instance:
    return instance_from_dict(json.loads(text))
