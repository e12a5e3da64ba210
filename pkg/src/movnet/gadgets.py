"""Deterministic instance generators: demos, solver traps, reduction gadgets.

Each generator builds an election instance whose optimal manipulation value
certifies the answer of a source combinatorial problem (covering, independent
set, subset intersection, partition, densest subgraph), plus the two worked
demo instances and the two instances on which every augmenting-greedy solver
provably underperforms.  Generators are pure: identical inputs produce
byte-identical instances.

The asymptotic padding blocks in the reductions (isolated-voter blocks,
replicated element nodes, line lengths) are exposed as parameters with the
constructions' own sizes as defaults, so desk-scale batteries can stay below
the brute-force search caps without touching the certified structure.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations

from .model import (
    EMPTY_ASSIGNMENT,
    InfluenceGraph,
    Instance,
    SeedAssignment,
    make_edge,
)

UNLIMITED = math.inf


# ---------------------------------------------------------------------------
# source combinatorial inputs


@dataclass(frozen=True)
class SetCover:
    """Cover all of {0..n_elements-1} with at most `target` of the given sets."""

    n_elements: int
    sets: tuple[frozenset, ...]
    target: int

    def __post_init__(self):
        universe = set(range(self.n_elements))
        for s in self.sets:
            if not s or not set(s) <= universe:
                raise ValueError(f"set {sorted(s)} is empty or escapes the universe")
        if not 1 <= self.target <= len(self.sets):
            raise ValueError("target must be between 1 and the number of sets")

    @classmethod
    def of(cls, n_elements, sets, target) -> "SetCover":
        return cls(int(n_elements), tuple(frozenset(s) for s in sets), int(target))


class MSI(SetCover):
    """Pick exactly `target` sets maximizing the intersection size."""


class MaxCover(SetCover):
    """Pick at most `target` sets maximizing the union size."""


@dataclass(frozen=True)
class UndirectedGraph:
    n_vertices: int
    edges: tuple[tuple[int, int], ...]

    def __post_init__(self):
        for u, v in self.edges:
            if u == v or not (0 <= u < self.n_vertices and 0 <= v < self.n_vertices):
                raise ValueError(f"bad edge ({u},{v})")

    @classmethod
    def of(cls, n_vertices, edges) -> "UndirectedGraph":
        norm = tuple(sorted((min(u, v), max(u, v)) for u, v in edges))
        if len(set(norm)) != len(norm):
            raise ValueError("duplicate edges")
        return cls(int(n_vertices), norm)


@dataclass(frozen=True)
class PartitionMultiset:
    """Is there a k-subset of `values` summing to half the total?"""

    values: tuple[int, ...]
    k: int

    def __post_init__(self):
        if sum(self.values) % 2:
            raise ValueError("total must be even")
        t = sum(self.values) // 2
        if any(a >= t for a in self.values):
            raise ValueError("every value must be below half the total")
        if not 1 <= self.k <= len(self.values) // 2:
            raise ValueError("k must be between 1 and n/2")

    @property
    def half(self) -> int:
        return sum(self.values) // 2


# small exact solvers for the source problems (oracle side of the batteries)


def set_cover_exists(sc: SetCover) -> bool:
    universe = frozenset(range(sc.n_elements))
    for size in range(1, sc.target + 1):
        for combo in combinations(sc.sets, size):
            if frozenset().union(*combo) == universe:
                return True
    return False


def msi_optimum(m: MSI) -> int:
    best = 0
    for combo in combinations(m.sets, m.target):
        inter = frozenset.intersection(*combo)
        best = max(best, len(inter))
    return best


def max_cover_optimum(m: MaxCover) -> int:
    best = 0
    for size in range(1, m.target + 1):
        for combo in combinations(m.sets, size):
            best = max(best, len(frozenset().union(*combo)))
    return best


def max_independent_set(g: UndirectedGraph) -> int:
    best = 0
    for size in range(g.n_vertices, 0, -1):
        if size <= best:
            break
        for combo in combinations(range(g.n_vertices), size):
            chosen = set(combo)
            if all(not (u in chosen and v in chosen) for u, v in g.edges):
                best = max(best, size)
                break
    return best


def densest_subgraph_value(g: UndirectedGraph, k: int) -> int:
    best = 0
    for combo in combinations(range(g.n_vertices), k):
        chosen = set(combo)
        best = max(best, sum(1 for u, v in g.edges if u in chosen and v in chosen))
    return best


# ---------------------------------------------------------------------------
# generator output


@dataclass(frozen=True)
class Gadget:
    instance: Instance
    budget: int | float | None
    extras: dict


def _clique_arcs(nodes) -> list:
    return [(u, v, 1) for u in nodes for v in nodes if u != v]


def _path_arcs(nodes, undirected=False) -> list:
    out = []
    for a, b in zip(nodes, nodes[1:]):
        out.append((a, b, 1))
        if undirected:
            out.append((b, a, 1))
    return out


# ---------------------------------------------------------------------------
# worked demos


def demo_clique() -> Gadget:
    """Five voters on a complete graph, five candidates, budget two.

    Any plan whose articles all concern one candidate ends at best in a
    two-vote tie, while one positive article on candidate 0 plus one
    negative article on candidate 2 makes candidate 0 the unique winner.
    The score rows are a reconstruction pinned by exactly those facts.
    """
    scores = (
        (4, 3, 2, 1, 0),
        (1, 3, 4, 2, 0),
        (0, 1, 4, 3, 2),
        (3, 4, 0, 1, 2),
        (1, 2, 0, 3, 4),
    )
    graph = InfluenceGraph.of(5, _clique_arcs(range(5)))
    inst = Instance(candidates=5, graph=graph, scores=scores)
    winning = SeedAssignment.of({0: (1, 0, 0, 0, 0), 1: (0, 0, -1, 0, 0)})
    return Gadget(inst, 2, {"winning_plan": winning})


def demo_diamond() -> Gadget:
    """Five nodes, one random edge, three seeded messages.

    Node 1's message reaches node 2 only in one of the two equiprobable
    live graphs; node 3 then votes candidate 1 or candidate 0 accordingly,
    giving margins 0 and 2 and expected margin 1.
    """
    # nodes: 0..4 = A, B, C, D, E
    edges = [(0, 2, 1), (1, 2, Fraction(1, 2)), (2, 3, 1), (4, 3, 1)]
    scores = ((0, 2, 1), (2, 1, 0), (0, 1, 9), (0, 1, 2), (2, 1, 0))
    seeds = SeedAssignment.of({0: (0, 1, 0), 1: (1, 0, 0), 4: (1, 0, 0)})
    inst = Instance(candidates=3, graph=InfluenceGraph.of(5, edges),
                    scores=scores, baseline=seeds)
    return Gadget(inst, None, {"random_edge": (1, 2)})


# ---------------------------------------------------------------------------
# seeding-side constructions


def setcover_seeding(sc: SetCover) -> Gadget:
    """Hard-to-manipulate seeding gadget built from a covering instance.

    Three disconnected blocks; with budget target+1 the optimal expected
    margin increase is 1 exactly when a cover of at most `target` sets
    exists, and no plan is positive otherwise.  One score row family of the
    source construction is perturbed by +1 on two entries to restore
    injectivity; both decisive score gaps stay above the budget.
    """
    n, g, h = sc.n_elements, len(sc.sets), sc.target
    budget = h + 1
    b = budget
    nodes = 0
    set_ids = list(range(nodes, nodes + g)); nodes += g
    elem_ids = list(range(nodes, nodes + n)); nodes += n
    block2 = list(range(nodes, nodes + n + h + 1)); nodes += n + h + 1
    block3_main = list(range(nodes, nodes + n + g + 2)); nodes += n + g + 2
    block3_aux = list(range(nodes, nodes + g - h + 1)); nodes += g - h + 1

    edges = []
    for i, s in enumerate(sc.sets):
        for z in sorted(s):
            edges.append((set_ids[i], elem_ids[z], 1))
    edges += _clique_arcs(block2)
    edges += _clique_arcs(block3_main + block3_aux)

    scores = {}
    for v in set_ids + elem_ids:
        scores[v] = (0, b, b + 1)
    for v in block2:
        scores[v] = (0, b + 1, b)
    for v in block3_main:
        scores[v] = (b, b - 1, b - 2)
    for v in block3_aux:
        scores[v] = (1, b + 2, 0)

    inst = Instance(candidates=3, graph=InfluenceGraph.of(nodes, edges),
                    scores=tuple(scores[v] for v in range(nodes)))
    return Gadget(inst, budget, {
        "set_nodes": set_ids, "element_nodes": elem_ids,
        "block2": block2, "block3": block3_main + block3_aux,
    })


def greedy_trap_paths() -> Gadget:
    """Undirected degree-two network where augmenting greedies stall at zero.

    No single seed/message strictly improves the expected margin or the
    vote count of candidate 0, yet a two-seed plan worth 1 exists: flip the
    two-voter path toward candidate 2 and the singleton toward candidate 1.
    """
    nodes = 0
    g1 = list(range(nodes, nodes + 7)); nodes += 7
    g21 = list(range(nodes, nodes + 5)); nodes += 5
    g22 = list(range(nodes, nodes + 2)); nodes += 2
    g31 = list(range(nodes, nodes + 4)); nodes += 4
    g32 = list(range(nodes, nodes + 1)); nodes += 1
    edges = (_path_arcs(g1, True) + _path_arcs(g21, True) + _path_arcs(g22, True)
             + _path_arcs(g31, True))
    scores = {}
    for v in g1:
        scores[v] = (5, 1, 0)
    for v in g21:
        scores[v] = (0, 5, 3)
    for v in g22:
        scores[v] = (0, 4, 3)
    for v in g31:
        scores[v] = (0, 3, 5)
    for v in g32:
        scores[v] = (0, 4, 5)
    inst = Instance(candidates=3, graph=InfluenceGraph.of(nodes, edges),
                    scores=tuple(scores[v] for v in range(nodes)))
    best = SeedAssignment.of({g22[0]: (0, 0, 1), g32[0]: (0, 1, 0)})
    return Gadget(inst, 2, {"optimal_plan": best})


def greedy_trap_trees(r: int) -> Gadget:
    """Directed star forest plus a long line; greedy reaches 2, optimum r.

    Candidate-1 voters sit in stars of sizes 2r and 5r, candidate-2 voters
    in stars of sizes r and 4r, candidate-0 voters on a directed line of
    7r.  Seeding a star root floods its whole star; every augmentation a
    greedy accepts is a single leaf flip worth one, while flipping the 2r
    star toward candidate 2 and the r star toward candidate 1 is worth r.
    """
    if r < 3:
        raise ValueError("r must be at least 3")
    nodes = 0

    def star(size):
        nonlocal nodes
        ids = list(range(nodes, nodes + size))
        nodes += size
        return ids

    line = star(7 * r)
    star_c1_small = star(2 * r)
    star_c1_big = star(5 * r)
    star_c2_small = star(r)
    star_c2_big = star(4 * r)
    edges = _path_arcs(line)
    for ids in (star_c1_small, star_c1_big, star_c2_small, star_c2_big):
        root = ids[0]
        edges += [(root, child, 1) for child in ids[1:]]
    scores = {}
    for v in line:
        scores[v] = (5, 1, 0)
    for v in star_c1_small + star_c1_big:
        scores[v] = (0, 4, 3)
    for v in star_c2_small + star_c2_big:
        scores[v] = (0, 3, 4)
    inst = Instance(candidates=3, graph=InfluenceGraph.of(nodes, edges),
                    scores=tuple(scores[v] for v in range(nodes)))
    best = SeedAssignment.of({star_c1_small[0]: (0, 0, 1), star_c2_small[0]: (0, 1, 0)})
    return Gadget(inst, 2, {"optimal_plan": best, "optimal_value": r})


def partition_lines(pm: PartitionMultiset) -> Gadget:
    """Independent five-node lines encoding a cardinality-partition instance.

    Line i carries edge probabilities (1, 1-p_i, w_i, 1) with p_i = a_i/4t;
    the w_i are irrational, so they are stored as their closest binary
    rationals and evaluations on this gadget carry a documented 1e-9
    tolerance instead of exactness.  Seeding the k line heads whose p_i sum
    the closest to 1/4 maximizes the expected margin increase.

    The candidate-0 isolated block has 8n voters: the construction's vote
    totals and zero starting margin force that count.
    """
    n, k = len(pm.values), pm.k
    b = k
    t = pm.half
    ps = [Fraction(a, 4 * t) for a in pm.values]
    ws = []
    for p in ps:
        w = 2.0 ** (-4 * float(p)) / ((1 - float(p)) * (2 * math.log(2)) ** (1 / k))
        ws.append(Fraction(w))

    nodes = 0
    lines = []
    edges = []
    for i in range(n):
        ids = list(range(nodes, nodes + 5)); nodes += 5
        lines.append(ids)
        a, bb, c, d, e = ids
        edges += [(a, bb, 1), (bb, c, 1 - ps[i]), (c, d, ws[i]), (d, e, 1)]
    iso_c1 = list(range(nodes, nodes + 5 * n)); nodes += 5 * n
    iso_c2 = list(range(nodes, nodes + 8 * n + 1 - 8 * k)); nodes += 8 * n + 1 - 8 * k
    iso_c0 = list(range(nodes, nodes + 8 * n)); nodes += 8 * n

    scores = {}
    for ids in lines:
        for v in ids[:3]:
            scores[v] = (0, b + 2, b + 1, 1)
        for v in ids[3:]:
            scores[v] = (0, b, b + 1, b + 2)
    for v in iso_c1:
        scores[v] = (0, b + 2, b + 1, b)
    for v in iso_c2:
        scores[v] = (0, b + 1, b + 2, b)
    for v in iso_c0:
        scores[v] = (4, 3, 2, 1)

    inst = Instance(candidates=4, graph=InfluenceGraph.of(nodes, edges),
                    scores=tuple(scores[v] for v in range(nodes)))
    return Gadget(inst, k, {"lines": lines, "p": ps, "w": ws})


def dks_seeding(g: UndirectedGraph, budget: int) -> Gadget:
    """Two-candidate gadget whose seeding value doubles internal edge counts.

    One voter per source vertex (prefers candidate 0 by one point), one per
    source edge (prefers candidate 1 by two); each edge voter listens to its
    two endpoint voters.  Seeding a vertex subset with single positive
    articles on candidate 0 raises the margin by exactly twice the number of
    source edges inside the subset.
    """
    v_ids = list(range(g.n_vertices))
    e_ids = list(range(g.n_vertices, g.n_vertices + len(g.edges)))
    arcs = []
    for eid, (u, v) in zip(e_ids, g.edges):
        arcs.append((u, eid, 1))
        arcs.append((v, eid, 1))
    scores = [(1, 0)] * g.n_vertices + [(0, 2)] * len(g.edges)
    inst = Instance(candidates=2,
                    graph=InfluenceGraph.of(len(scores), arcs),
                    scores=tuple(scores))
    return Gadget(inst, budget, {"vertex_nodes": v_ids, "edge_nodes": e_ids})


# ---------------------------------------------------------------------------
# edge-removal constructions


def msi_removal(m: MSI, replication: int) -> Gadget:
    """Influence-minimization gadget from subset intersection.

    Every element is replicated `replication` times; each source set
    contributes a seeded two-node relay whose second node feeds all element
    copies outside the set.  With removal budget g-h, cutting the relays of
    the sets outside the best intersecting family suppresses exactly
    g - h + optimum * replication influenced nodes.

    Scores make this double as the companion election instance: two
    candidates, every voter one point from flipping, every seed spreading a
    single negative article on candidate 0, so each influenced voter
    defects and the margin increase is twice the influence reduction.
    """
    n, g, h = m.n_elements, len(m.sets), m.target
    nodes = 0
    relay1, relay2 = [], []
    for _ in range(g):
        relay1.append(nodes); nodes += 1
        relay2.append(nodes); nodes += 1
    elem = [[nodes + i * replication + j for j in range(replication)]
            for i in range(n)]
    nodes += n * replication

    edges = []
    for i in range(g):
        edges.append((relay1[i], relay2[i], 1))
    for i, s in enumerate(m.sets):
        for z in range(n):
            if z not in s:
                for copy in elem[z]:
                    edges.append((relay2[i], copy, 1))

    seeds = SeedAssignment.of({r: (-1, 0) for r in relay1})
    inst = Instance(candidates=2, graph=InfluenceGraph.of(nodes, edges),
                    scores=tuple((1, 0) for _ in range(nodes)), baseline=seeds)
    return Gadget(inst, g - h, {
        "relay_edges": [(relay1[i], relay2[i]) for i in range(g)],
        "element_nodes": elem,
    })


def independent_set_removal(g: UndirectedGraph, line_len: int | None = None,
                            isolated: int | None = None) -> Gadget:
    """Unlimited-budget removal gadget from an independent-set instance.

    A seeded feeder line broadcasts one positive article on candidate 2 to
    one vertex node per source vertex and onward into one listener line per
    source edge.  Protecting a vertex node (cutting its feeder edge) keeps
    its candidate-0 vote but silences no listener line only while the
    protected set stays independent, so the optimal margin increase equals
    the maximum independent set size.

    `line_len` and `isolated` default to the construction's own sizes
    (n*g - g and n^2*g^2); any line length in [1, n*g-g+1] and any isolated
    block comfortably above the non-isolated count preserve the identity.
    """
    gv, ne = g.n_vertices, len(g.edges)
    if ne == 0:
        raise ValueError("source graph needs at least one edge")
    l1 = line_len if line_len is not None else ne * gv - gv
    if l1 < 1:
        raise ValueError("line length must be positive")
    iso = isolated if isolated is not None else ne * ne * gv * gv

    nodes = 0
    line = list(range(nodes, nodes + l1)); nodes += l1
    vert = list(range(nodes, nodes + gv)); nodes += gv
    listeners = []
    for _ in range(ne):
        ids = list(range(nodes, nodes + gv)); nodes += gv
        listeners.append(ids)
    iso_c0 = list(range(nodes, nodes + iso)); nodes += iso
    iso_c1 = list(range(nodes, nodes + iso)); nodes += iso

    edges = _path_arcs(line)
    edges += [(line[-1], v, 1) for v in vert]
    for ids, (u, v) in zip(listeners, g.edges):
        edges.append((vert[u], ids[0], 1))
        edges.append((vert[v], ids[0], 1))
        edges += _path_arcs(ids)

    scores = {}
    for v in line + vert:
        scores[v] = (2, 0, 1)
    for ids in listeners:
        for v in ids:
            scores[v] = (0, 2, 1)
    for v in iso_c0:
        scores[v] = (2, 1, 0)
    for v in iso_c1:
        scores[v] = (1, 2, 0)

    seeds = SeedAssignment.of({line[0]: (0, 0, 1)})
    inst = Instance(candidates=3, graph=InfluenceGraph.of(nodes, edges),
                    scores=tuple(scores[v] for v in range(nodes)), baseline=seeds)
    return Gadget(inst, UNLIMITED, {
        "feeder_edges": [(line[-1], v) for v in vert],
        "vertex_nodes": vert,
    })


def setcover_removal(sc: SetCover) -> Gadget:
    """Unlimited-budget two-candidate removal gadget from a covering instance.

    Two seeded relays inject cancelling article pairs; a third seeded line
    injects the only uncancelled article.  Every voter stands pat until the
    cancellation is broken by cutting the deterministic relay edge, after
    which the margin increase averages to 1 over the two live graphs of the
    surviving half-probability edge exactly when a cover exists.
    """
    n, g, h = sc.n_elements, len(sc.sets), sc.target
    if n * n - h - 1 < 1:
        raise ValueError("needs n^2 >= target + 2 for a nonempty feeder line")
    nodes = 0
    v1 = nodes; nodes += 1
    v2 = nodes; nodes += 1
    line = list(range(nodes, nodes + n * n - h - 1)); nodes += n * n - h - 1
    sets_ids = list(range(nodes, nodes + g)); nodes += g
    listeners = []
    for _ in range(n):
        ids = list(range(nodes, nodes + n)); nodes += n
        listeners.append(ids)
    iso = list(range(nodes, nodes + g - h + 1)); nodes += g - h + 1

    edges = [(v1, v2, 1), (v1, line[0], Fraction(1, 2)), (v2, line[0], 1)]
    edges += _path_arcs(line)
    edges += [(line[-1], s, 1) for s in sets_ids]
    for z in range(n):
        for i, s in enumerate(sc.sets):
            if z in s:
                edges.append((sets_ids[i], listeners[z][0], 1))
        edges += _path_arcs(listeners[z])

    scores = {}
    for v in [v1, v2] + line + sets_ids:
        scores[v] = (1, 0)
    for ids in listeners:
        for v in ids:
            scores[v] = (0, 1)
    for v in iso:
        scores[v] = (0, 1)

    seeds = SeedAssignment.of({v1: (1, -1), v2: (-1, 0), line[0]: (0, 1)})
    inst = Instance(candidates=2, graph=InfluenceGraph.of(nodes, edges),
                    scores=tuple(scores[v] for v in range(nodes)), baseline=seeds)
    return Gadget(inst, UNLIMITED, {
        "cancel_edge": (v2, line[0]),
        "random_edge": (v1, line[0]),
        "set_feed_edges": {i: (line[-1], sets_ids[i]) for i in range(g)},
    })


# ---------------------------------------------------------------------------
# edge-addition constructions


def maxcover_addition(m: MaxCover, layers: int = 2, sink: int = 8,
                      link_p: Fraction = Fraction(1, 2)) -> Gadget:
    """Influence-maximization-by-addition gadget from maximum coverage.

    A chain of `layers` gate nodes; inside each layer the manipulator may
    wire the gate to set nodes (the only addable edges), sets reach their
    elements, and every element fires an independent `link_p` chance of
    opening the next gate.  The final gate owns a `sink`-node prize.
    Spreading the budget as a full cover in every layer maximizes the
    probability of the prize.  `layers`, `sink` and `link_p` replace the
    construction's polynomial blowups at desk scale.
    """
    n, g, h = m.n_elements, len(m.sets), m.target
    nodes = 0
    gates = [nodes]; nodes += 1
    layer_sets, layer_elems = [], []
    edges = []
    addable = []
    for _ in range(layers):
        sets_ids = list(range(nodes, nodes + g)); nodes += g
        elem_ids = list(range(nodes, nodes + n)); nodes += n
        gate = gates[-1]
        next_gate = nodes; nodes += 1
        for i, s in enumerate(m.sets):
            addable.append((gate, sets_ids[i], 1))
            for z in sorted(s):
                edges.append((sets_ids[i], elem_ids[z], 1))
        for z in elem_ids:
            edges.append((z, next_gate, link_p))
        gates.append(next_gate)
        layer_sets.append(sets_ids)
        layer_elems.append(elem_ids)
    prize = list(range(nodes, nodes + sink)); nodes += sink
    edges += [(gates[-1], p, 1) for p in prize]

    seeds = SeedAssignment.of({gates[0]: (1, 0)})
    inst = Instance(candidates=2,
                    graph=InfluenceGraph.of(nodes, edges, addable),
                    scores=tuple((1, 0) for _ in range(nodes)), baseline=seeds)
    return Gadget(inst, h * layers, {
        "gates": gates, "layer_sets": layer_sets, "prize": prize,
    })


def setcover_addition_single(sc: SetCover, isolated: int | None = None) -> Gadget:
    """Unlimited-budget single-article addition gadget from covering.

    The seed's positive article on candidate 2 can only enter the feeder
    line through one addable edge, then branch to set nodes through g more;
    wiring the line plus a covering family flips every listener line and
    nets a margin increase of exactly 1; any non-covering family cannot be
    positive.
    """
    n, g, h = sc.n_elements, len(sc.sets), sc.target
    if n * g - h - 1 < 1:
        raise ValueError("needs n*g >= target + 2 for a nonempty feeder line")
    iso = isolated if isolated is not None else n * n * g * g
    nodes = 0
    v1 = nodes; nodes += 1
    line = list(range(nodes, nodes + n * g - h - 1)); nodes += n * g - h - 1
    sets_ids = list(range(nodes, nodes + g)); nodes += g
    listeners = []
    for _ in range(n):
        ids = list(range(nodes, nodes + g)); nodes += g
        listeners.append(ids)
    iso_c0 = list(range(nodes, nodes + iso)); nodes += iso
    iso_c1 = list(range(nodes, nodes + iso)); nodes += iso

    edges = _path_arcs(line)
    addable = [(v1, line[0], 1)]
    addable += [(line[-1], s, 1) for s in sets_ids]
    for z in range(n):
        for i, s in enumerate(sc.sets):
            if z in s:
                edges.append((sets_ids[i], listeners[z][0], 1))
        edges += _path_arcs(listeners[z])

    scores = {v1: (0, 1, 2)}
    for v in line + sets_ids:
        scores[v] = (2, 0, 1)
    for ids in listeners:
        for v in ids:
            scores[v] = (0, 2, 1)
    for v in iso_c0:
        scores[v] = (2, 1, 0)
    for v in iso_c1:
        scores[v] = (1, 2, 0)

    seeds = SeedAssignment.of({v1: (0, 0, 1)})
    inst = Instance(candidates=3, graph=InfluenceGraph.of(nodes, edges, addable),
                    scores=tuple(scores[v] for v in range(nodes)), baseline=seeds)
    return Gadget(inst, UNLIMITED, {
        "entry_edge": (v1, line[0]),
        "set_feed_edges": {i: (line[-1], sets_ids[i]) for i in range(g)},
    })


def setcover_addition_multi(sc: SetCover) -> Gadget:
    """Unlimited-budget two-candidate addition gadget from covering.

    The cancelling-article relay of the removal twin, but the half-chance
    edge now joins the two seeds, and the manipulator must wire the second
    seed into the line (plus a covering family into the sets) to average a
    margin increase of 1 over the two live graphs.
    """
    n, g, h = sc.n_elements, len(sc.sets), sc.target
    if n * n - h - 1 < 1:
        raise ValueError("needs n^2 >= target + 2 for a nonempty feeder line")
    nodes = 0
    v1 = nodes; nodes += 1
    v2 = nodes; nodes += 1
    line = list(range(nodes, nodes + n * n - h - 1)); nodes += n * n - h - 1
    sets_ids = list(range(nodes, nodes + g)); nodes += g
    listeners = []
    for _ in range(n):
        ids = list(range(nodes, nodes + n)); nodes += n
        listeners.append(ids)
    iso = list(range(nodes, nodes + g - h + 1)); nodes += g - h + 1

    edges = [(v1, v2, Fraction(1, 2))]
    edges += _path_arcs(line)
    addable = [(v2, line[0], 1)]
    addable += [(line[-1], s, 1) for s in sets_ids]
    for z in range(n):
        for i, s in enumerate(sc.sets):
            if z in s:
                edges.append((sets_ids[i], listeners[z][0], 1))
        edges += _path_arcs(listeners[z])

    scores = {}
    for v in [v1, v2] + line + sets_ids:
        scores[v] = (1, 0)
    for ids in listeners:
        for v in ids:
            scores[v] = (0, 1)
    for v in iso:
        scores[v] = (0, 1)

    seeds = SeedAssignment.of({v1: (1, -1), v2: (0, 1)})
    inst = Instance(candidates=2, graph=InfluenceGraph.of(nodes, edges, addable),
                    scores=tuple(scores[v] for v in range(nodes)), baseline=seeds)
    return Gadget(inst, UNLIMITED, {
        "entry_edge": (v2, line[0]),
        "random_edge": (v1, v2),
        "set_feed_edges": {i: (line[-1], sets_ids[i]) for i in range(g)},
    })


# ---------------------------------------------------------------------------
# reoptimization wrapper


def reopt_wrapper(inner: Instance) -> tuple[Instance, tuple[int, int]]:
    """Wrap an edge-manipulation instance behind a flooding bridge.

    d+1 seeded feeder nodes (d = the widest score spread of the inner
    instance) pour positive candidate-0 articles through a two-node bridge
    onto every inner node, so before any change all voters back candidate 0
    and the empty manipulation is optimal.  Zeroing the returned bridge edge
    silences the flood and leaves exactly the inner problem.

    The bridge tail links to every inner node: partial coverage would leave
    inner components unflooded and break the pre-change optimality.
    """
    d = max(max(row) - min(row) for row in inner.scores)
    k = inner.candidates
    n0 = inner.node_count
    feeders = list(range(n0, n0 + d + 1))
    bridge_head = n0 + d + 1
    bridge_tail = n0 + d + 2
    edges = list(inner.graph.edges)
    edges += [make_edge(f, bridge_head, 1) for f in feeders]
    edges.append(make_edge(bridge_head, bridge_tail, 1))
    edges += [make_edge(bridge_tail, v, 1) for v in range(n0)]

    c0_top = (k - 1,) + tuple(range(k - 1))  # candidate 0 strictly on top
    scores = tuple(inner.scores) + tuple([c0_top] * (d + 3))

    plus_one = (1,) + (0,) * (k - 1)
    entries = {f: plus_one for f in feeders}
    baseline = inner.baseline or EMPTY_ASSIGNMENT
    merged = SeedAssignment.of(
        {e.node: e.news for e in baseline.entries} | entries,
        {e.node: e.bribed_to for e in baseline.entries},
    )

    addable = inner.graph.addable
    if addable is None:
        addable = inner.graph.addable_edges()
    wrapped = Instance(
        candidates=k,
        graph=InfluenceGraph.of(n0 + d + 3, edges, addable),
        scores=scores,
        baseline=merged,
        bribed_seeds=inner.bribed_seeds,
    )
    return wrapped, (bridge_head, bridge_tail)
