"""Verification suites: every headline claim as a named pass/fail check.

Shared by the acceptance test module and the CLI `verify` subcommand.  Each
suite returns CheckRow records; exact checks compare rationals with zero
tolerance, the one float-weighted gadget family carries an absolute 1e-9
tolerance, and Monte Carlo gates are statistical (documented per check).
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

from . import gadgets, randgen
from .evaluate import (
    EXACT,
    EvalConfig,
    delta_influence_addition,
    delta_influence_removal,
    delta_mov_edge_addition,
    delta_mov_edge_removal,
    delta_mov_seeding,
    expected_mov,
)
from .diffusion import enumerate_live_graphs, revise_scores, tally
from .edges import (
    brute_force_addition,
    brute_force_influence_removal,
    brute_force_removal,
    reopt,
    two_candidate_addition,
    two_candidate_removal,
)
from .model import EMPTY_ASSIGNMENT, Instance, InfluenceGraph, SeedAssignment, delta, validate
from .seeding import (
    brute_force_seeding,
    greedy_augmentation,
    greedy_seeding,
    greedy_seeding_bound,
    single_candidate_alphabet,
)


@dataclass(frozen=True)
class CheckRow:
    name: str
    expected: str
    got: str
    ok: bool


def _row(name, expected, got, ok=None) -> CheckRow:
    if ok is None:
        ok = expected == got
    return CheckRow(name, str(expected), str(got), bool(ok))


# ---------------------------------------------------------------------------
# worked examples


def check_diamond() -> list[CheckRow]:
    g = gadgets.demo_diamond()
    inst = g.instance
    rows = [_row("diamond validates", "[]", str(validate(inst)))]
    lgs = enumerate_live_graphs(inst.graph.edges)
    movs = sorted(tally(revise_scores(inst, inst.baseline, lg)).mov for lg in lgs)
    rows.append(_row("diamond per-graph margins", "[0, 2]", str(movs)))
    ev = expected_mov(inst, inst.baseline)
    rows.append(_row("diamond expected margin", "1", str(ev.value)))
    # the high-scoring middle voter never flips
    for tag, lg in zip(("off", "on"), lgs):
        t = tally(revise_scores(inst, inst.baseline, lg))
        final = revise_scores(inst, inst.baseline, lg)
        winner_c = max(range(3), key=lambda c: final.scores[2][c])
        rows.append(_row(f"diamond voter C stays (bridge {tag})", "2", str(winner_c)))
    return rows


def check_clique() -> list[CheckRow]:
    g = gadgets.demo_clique()
    inst = g.instance
    rows = [_row("clique validates", "[]", str(validate(inst)))]
    base = expected_mov(inst, EMPTY_ASSIGNMENT).value
    best = None
    for c in range(5):
        alphabet = tuple(m for m in single_candidate_alphabet(5, 2, 2) if m[c] != 0)
        plan = brute_force_seeding(inst, 2, alphabet=alphabet)
        final = plan.claimed_value.value + base
        best = final if best is None or final > best else best
    rows.append(_row("clique best single-candidate final margin <= 0",
                     True, best <= 0, best <= 0))
    win = g.extras["winning_plan"]
    lg = enumerate_live_graphs(inst.graph.edges)[0]
    t = tally(revise_scores(inst, win, lg))
    rows.append(_row("clique mixed plan winner", "0", str(t.winner)))
    unique = t.votes[0] == 2 and max(t.votes[1:]) < 2
    rows.append(_row("clique mixed plan unique two-vote win", True, unique, unique))
    return rows


# ---------------------------------------------------------------------------
# greedy traps


def check_trap_paths() -> list[CheckRow]:
    g = gadgets.greedy_trap_paths()
    inst = g.instance
    rows = [_row("paths trap validates", "[]", str(validate(inst)))]
    gp = greedy_augmentation(inst, g.budget)
    rows.append(_row("paths trap greedy value", "0", str(gp.claimed_value.value)))
    rows.append(_row("paths trap greedy plan empty", "0", str(len(gp.assignment))))
    bp = brute_force_seeding(inst, g.budget)
    rows.append(_row("paths trap optimum", "1", str(bp.claimed_value.value)))
    return rows


def check_trap_trees(r: int = 3) -> list[CheckRow]:
    g = gadgets.greedy_trap_trees(r)
    inst = g.instance
    rows = [_row("trees trap validates", "[]", str(validate(inst)))]
    lg = enumerate_live_graphs(inst.graph.edges)[0]
    votes = tally(revise_scores(inst, EMPTY_ASSIGNMENT, lg)).votes
    rows.append(_row("trees trap initial votes",
                     str((7 * r, 7 * r, 5 * r)), str(votes)))
    gp = greedy_augmentation(inst, g.budget)
    rows.append(_row("trees trap greedy value", "2", str(gp.claimed_value.value)))
    bp = brute_force_seeding(inst, g.budget)
    rows.append(_row("trees trap optimum", str(r), str(bp.claimed_value.value)))
    return rows


# ---------------------------------------------------------------------------
# guaranteed-regime bound battery


def check_seeding_bound(count: int = 200, seed: int = 11000) -> list[CheckRow]:
    holds = 0
    worst = None
    for i in range(count):
        inst, budget = randgen.random_guaranteed_regime_instance(seed + i)
        d = delta(inst)
        gp = greedy_seeding(inst, budget)
        bp = brute_force_seeding(inst, budget)
        rho = greedy_seeding_bound(budget, d)
        lhs = gp.claimed_value.value
        rhs = rho * bp.claimed_value.value
        if lhs >= rhs:
            holds += 1
            slack = lhs - rhs
            worst = slack if worst is None or slack < worst else worst
    return [_row(f"greedy bound holds on {count} random instances",
                 f"{count}/{count}", f"{holds}/{count}"),
            _row("worst slack nonnegative", True,
                 worst is not None and worst >= 0, worst is not None and worst >= 0)]


# ---------------------------------------------------------------------------
# gadget batteries


SEEDING_YES = [
    gadgets.SetCover.of(2, [{0}, {1}], 2),
    gadgets.SetCover.of(2, [{0, 1}], 1),
    gadgets.SetCover.of(2, [{0}, {0, 1}], 1),
    gadgets.SetCover.of(3, [{0, 1}, {1, 2}, {0, 2}], 2),
    gadgets.SetCover.of(3, [{0, 1}, {2}], 2),
]
SEEDING_NO = [
    gadgets.SetCover.of(2, [{0}, {1}], 1),
    gadgets.SetCover.of(3, [{0, 1}, {1, 2}, {0, 2}], 1),
    gadgets.SetCover.of(3, [{0}, {1}, {2}], 2),
    gadgets.SetCover.of(3, [{0, 1}, {2}], 1),
    gadgets.SetCover.of(3, [{0}, {1, 2}], 1),
]

REMOVAL_YES = [
    gadgets.SetCover.of(2, [{0}, {1}], 2),
    gadgets.SetCover.of(2, [{0, 1}], 1),
    gadgets.SetCover.of(2, [{0}, {0, 1}], 1),
    gadgets.SetCover.of(3, [{0, 1, 2}], 1),
    gadgets.SetCover.of(3, [{0, 1}, {1, 2}, {0, 2}], 2),
]
REMOVAL_NO = [
    gadgets.SetCover.of(2, [{0}, {1}], 1),
    gadgets.SetCover.of(3, [{0, 1}, {1, 2}], 1),
    gadgets.SetCover.of(3, [{0}, {1}, {2}], 2),
    gadgets.SetCover.of(3, [{0, 1}, {2}], 1),
    gadgets.SetCover.of(3, [{0, 2}], 1),
]

# the addition gadgets need n*g >= target + 2 (nonempty feeder line)
ADDITION_YES = [
    gadgets.SetCover.of(2, [{0}, {1}], 2),
    gadgets.SetCover.of(2, [{0}, {0, 1}], 1),
    gadgets.SetCover.of(3, [{0, 1, 2}], 1),
    gadgets.SetCover.of(3, [{0, 1}, {1, 2}, {0, 2}], 2),
    gadgets.SetCover.of(3, [{0, 1}, {2}], 2),
]
ADDITION_NO = [
    gadgets.SetCover.of(2, [{0}, {1}], 1),
    gadgets.SetCover.of(3, [{0, 1}, {1, 2}, {0, 2}], 1),
    gadgets.SetCover.of(3, [{0}, {1}, {2}], 2),
    gadgets.SetCover.of(3, [{0, 1}, {2}], 1),
    gadgets.SetCover.of(3, [{0}, {1, 2}], 1),
]

INDEPENDENT_SET_BATTERY = [
    # (graph, scale-down line length or None for the construction default)
    (gadgets.UndirectedGraph.of(3, [(0, 1), (1, 2)]), None),
    (gadgets.UndirectedGraph.of(3, [(0, 1), (1, 2), (0, 2)]), None),
    (gadgets.UndirectedGraph.of(4, [(0, 1), (1, 2), (2, 3)]), 2),
    (gadgets.UndirectedGraph.of(4, [(0, 1), (0, 2), (0, 3)]), 2),
    (gadgets.UndirectedGraph.of(4, [(0, 1), (1, 2), (0, 2)]), 2),
]


def _scaled_isolated(g: gadgets.UndirectedGraph, line_len):
    if line_len is None:
        return None
    # keep the isolated blocks just above the non-isolated population
    return line_len + g.n_vertices + len(g.edges) * g.n_vertices + 1


def check_seeding_gadget_battery() -> list[CheckRow]:
    rows = []
    for sc in SEEDING_YES:
        g = gadgets.setcover_seeding(sc)
        plan = brute_force_seeding(g.instance, g.budget)
        rows.append(_row(f"seeding gadget YES {_sc_tag(sc)} optimum", "1",
                         str(plan.claimed_value.value)))
    for sc in SEEDING_NO:
        g = gadgets.setcover_seeding(sc)
        plan = brute_force_seeding(g.instance, g.budget)
        ok = plan.claimed_value.value <= 0
        rows.append(_row(f"seeding gadget NO {_sc_tag(sc)} optimum <= 0",
                         True, ok, ok))
    return rows


def _sc_tag(sc: gadgets.SetCover) -> str:
    sets = ";".join("".join(str(z) for z in sorted(s)) for s in sc.sets)
    return f"n{sc.n_elements}[{sets}]h{sc.target}"


def check_independent_set_battery() -> list[CheckRow]:
    rows = []
    for src, line_len in INDEPENDENT_SET_BATTERY:
        g = gadgets.independent_set_removal(
            src, line_len=line_len, isolated=_scaled_isolated(src, line_len))
        plan = brute_force_removal(g.instance, search_cap=1 << 21)
        want = gadgets.max_independent_set(src)
        rows.append(_row(
            f"independent-set removal g{src.n_vertices}m{len(src.edges)} optimum",
            str(want), str(plan.claimed_value.value)))
    return rows


def check_removal_gadget_battery() -> list[CheckRow]:
    rows = []
    for sc in REMOVAL_YES:
        g = gadgets.setcover_removal(sc)
        plan = brute_force_removal(g.instance, search_cap=1 << 24)
        rows.append(_row(f"removal gadget YES {_sc_tag(sc)} optimum", "1",
                         str(plan.claimed_value.value)))
    for sc in REMOVAL_NO:
        g = gadgets.setcover_removal(sc)
        plan = brute_force_removal(g.instance, search_cap=1 << 24)
        ok = plan.claimed_value.value <= 0
        rows.append(_row(f"removal gadget NO {_sc_tag(sc)} optimum <= 0",
                         True, ok, ok))
    # per-live-graph values of a canonical optimal removal on a YES instance
    sc = gadgets.SetCover.of(3, [{0, 1}, {1, 2}, {0, 2}], 2)
    g = gadgets.setcover_removal(sc)
    estar = [g.extras["cancel_edge"], g.extras["set_feed_edges"][0]]
    per = _per_live_graph_delta(g.instance, removals=estar)
    n = sc.n_elements
    rows.append(_row("removal gadget per-graph deltas",
                     str(sorted([2 - 2 * n * n, 2 * n * n])), str(sorted(per))))
    rows.append(_row("removal gadget canonical expectation", "1",
                     str(delta_mov_edge_removal(g.instance, estar).value)))
    return rows


def check_addition_gadget_battery() -> list[CheckRow]:
    rows = []
    for sc in ADDITION_YES:
        g1 = gadgets.setcover_addition_single(sc)
        p1 = brute_force_addition(g1.instance)
        rows.append(_row(f"single-article addition YES {_sc_tag(sc)} optimum",
                         "1", str(p1.claimed_value.value)))
        g2 = gadgets.setcover_addition_multi(sc)
        p2 = brute_force_addition(g2.instance)
        rows.append(_row(f"multi-article addition YES {_sc_tag(sc)} optimum",
                         "1", str(p2.claimed_value.value)))
    for sc in ADDITION_NO:
        g1 = gadgets.setcover_addition_single(sc)
        p1 = brute_force_addition(g1.instance)
        rows.append(_row(f"single-article addition NO {_sc_tag(sc)} optimum",
                         "0", str(p1.claimed_value.value)))
        g2 = gadgets.setcover_addition_multi(sc)
        p2 = brute_force_addition(g2.instance)
        ok = p2.claimed_value.value <= 0
        rows.append(_row(f"multi-article addition NO {_sc_tag(sc)} optimum <= 0",
                         True, ok, ok))
    # per-live-graph values of the canonical addition on a YES instance
    sc = gadgets.SetCover.of(3, [{0, 1}, {1, 2}, {0, 2}], 2)
    g = gadgets.setcover_addition_multi(sc)
    estar = [g.extras["entry_edge"], g.extras["set_feed_edges"][0],
             g.extras["set_feed_edges"][1]]
    per = _per_live_graph_delta(g.instance, additions=estar)
    n = sc.n_elements
    rows.append(_row("addition gadget per-graph deltas",
                     str(sorted([2 - 2 * n * n, 2 * n * n])), str(sorted(per))))
    return rows


def _per_live_graph_delta(instance: Instance, removals=(), additions=()) -> list[int]:
    from . import backend
    from .evaluate import _delta_edges_job, _per_graph
    job = _delta_edges_job(instance, instance.baseline, removals, additions, 0)
    en = backend.enumerate_presence(job.edges)
    return [int(v) for v in _per_graph(job, en.presence)]


def check_dks_identity(graphs: int = 20, seed: int = 500) -> list[CheckRow]:
    import random
    rng = random.Random(seed)
    failures = 0
    checked = 0
    for _ in range(graphs):
        edges = [e for e in combinations(range(5), 2) if rng.random() < 0.5]
        if not edges:
            continue
        src = gadgets.UndirectedGraph.of(5, edges)
        g = gadgets.dks_seeding(src, budget=5)
        for size in range(6):
            for sub in combinations(range(5), size):
                plan = SeedAssignment.of({v: (1, 0) for v in sub})
                want = 2 * sum(1 for u, v in edges if u in sub and v in sub)
                got = delta_mov_seeding(g.instance, plan).value
                checked += 1
                if got != want:
                    failures += 1
    return [_row(f"densest-subgraph identity on {checked} subset seedings",
                 "0 failures", f"{failures} failures", failures == 0)]


# ---------------------------------------------------------------------------
# closed forms, influence removal, reopt


def check_closed_forms(count: int = 100, seed: int = 7000) -> list[CheckRow]:
    rem_ok = add_ok = 0
    for i in range(count):
        inst = randgen.random_single_message_instance(seed + i)
        if two_candidate_removal(inst).claimed_value.value == \
                brute_force_removal(inst).claimed_value.value:
            rem_ok += 1
        inst = randgen.random_single_message_instance(seed + count + i,
                                                      with_addable=True)
        if two_candidate_addition(inst).claimed_value.value == \
                brute_force_addition(inst).claimed_value.value:
            add_ok += 1
    return [_row(f"removal closed form optimal on {count} random instances",
                 f"{count}/{count}", f"{rem_ok}/{count}"),
            _row(f"addition closed form optimal on {count} random instances",
                 f"{count}/{count}", f"{add_ok}/{count}")]


def check_influence_removal() -> list[CheckRow]:
    rows = []
    msi = gadgets.MSI.of(3, [{0, 1}, {1, 2}, {0, 2}], 2)
    replication = 4
    g = gadgets.msi_removal(msi, replication)
    plan = brute_force_influence_removal(g.instance, budget=g.budget)
    want = len(msi.sets) - msi.target + gadgets.msi_optimum(msi) * replication
    rows.append(_row("subset-intersection removal optimum", str(want),
                     str(plan.claimed_value.value)))
    relay = set(g.extras["relay_edges"])
    ok = set(plan.edge_set) <= relay
    rows.append(_row("optimal removal cuts only relay edges", True, ok, ok))
    # companion identity: margin delta is twice the influence delta, all subsets
    edges = [(e.src, e.dst) for e in g.instance.graph.edges]
    mismatches = 0
    checked = 0
    for size in range(3):
        for sub in combinations(edges, size):
            dm = delta_mov_edge_removal(g.instance, sub).value
            di = delta_influence_removal(g.instance, sub).value
            checked += 1
            if dm != 2 * di:
                mismatches += 1
    rows.append(_row(f"margin = 2 x influence on {checked} removal subsets",
                     "0 mismatches", f"{mismatches} mismatches", mismatches == 0))
    return rows


def _reopt_inner() -> Instance:
    # seed 0 pushes one negative candidate-0 article down a two-hop chain
    return Instance(
        candidates=2,
        graph=InfluenceGraph.of(5, [(0, 1, 1), (1, 2, 1)]),
        scores=((0, 1), (1, 0), (1, 0), (0, 1), (0, 1)),
        baseline=SeedAssignment.of({0: (-1, 0)}),
    )


def check_reopt() -> list[CheckRow]:
    rows = []
    inner = _reopt_inner()
    inner_opt = brute_force_removal(inner)
    wrapped, bridge = gadgets.reopt_wrapper(inner)
    rows.append(_row("wrapper validates", "[]", str(validate(wrapped))))
    pre = brute_force_removal(wrapped)
    rows.append(_row("pre-change optimum value", "0", str(pre.claimed_value.value)))
    rows.append(_row("pre-change optimal plan", "()", str(pre.edge_set)))
    res = reopt(wrapped, pre, bridge, 0, brute_force_removal)
    rows.append(_row("post-change optimum equals inner optimum",
                     str(inner_opt.claimed_value.value),
                     str(res.solution.claimed_value.value)))
    rows.append(_row("post-change optimal edges equal inner's",
                     str(inner_opt.edge_set), str(res.solution.edge_set)))
    # identity change: re-evaluated known solution keeps its value
    same = reopt(wrapped, pre, bridge, 1, brute_force_removal)
    rows.append(_row("identity reopt keeps known value", "0",
                     str(same.previous_value.value)))
    return rows


# ---------------------------------------------------------------------------
# property suites (tie-freeness, submodularity, MC gates)


def _canonical_manipulations():
    """(name, instance, exact evaluator, mc evaluator) per enumerable gadget."""
    out = []

    def seeding_case(name, inst, assignment):
        out.append((name, inst,
                    lambda cfg, i=inst, a=assignment: expected_mov(i, a, config=cfg)))

    g = gadgets.demo_diamond()
    seeding_case("diamond", g.instance, g.instance.baseline)
    g = gadgets.demo_clique()
    seeding_case("clique", g.instance, g.extras["winning_plan"])
    g = gadgets.greedy_trap_paths()
    seeding_case("paths trap", g.instance, g.extras["optimal_plan"])

    sc = gadgets.SetCover.of(2, [{0}, {1}], 2)
    g = gadgets.setcover_removal(sc)
    estar = [g.extras["cancel_edge"]]
    out.append(("covering removal", g.instance,
                lambda cfg, i=g.instance, e=estar:
                delta_mov_edge_removal(i, e, config=cfg)))
    g = gadgets.setcover_addition_multi(sc)
    estar = [g.extras["entry_edge"], g.extras["set_feed_edges"][0],
             g.extras["set_feed_edges"][1]]
    out.append(("covering addition", g.instance,
                lambda cfg, i=g.instance, e=estar:
                delta_mov_edge_addition(i, e, config=cfg)))

    pm = gadgets.PartitionMultiset((1, 1, 2, 2), 1)
    g = gadgets.partition_lines(pm)
    plan = SeedAssignment.of({g.extras["lines"][2][0]: (0, 0, 1, 0)})
    out.append(("partition lines", g.instance,
                lambda cfg, i=g.instance, a=plan: delta_mov_seeding(i, a, config=cfg)))

    mc = gadgets.MaxCover.of(2, [{0}, {1}], 2)
    g = gadgets.maxcover_addition(mc, layers=2, sink=4)
    adds = [(e.src, e.dst) for e in g.instance.graph.addable_edges()]
    out.append(("coverage addition", g.instance,
                lambda cfg, i=g.instance, e=adds:
                delta_influence_addition(i, e, config=cfg)))
    return out


def check_mc_agreement(seeds: int = 20, samples: int = 100_000,
                       required: int = 19) -> list[CheckRow]:
    """MC within four standard errors of exact on every enumerable gadget."""
    rows = []
    for name, _inst, evaluator in _canonical_manipulations():
        exact_val = float(evaluator(EXACT).value)
        passes = 0
        for s in range(seeds):
            ev = evaluator(EvalConfig(mode="mc", samples=samples, seed=9000 + s))
            band = 4 * ev.std_error
            if abs(ev.value - exact_val) <= band + 1e-12:
                passes += 1
        rows.append(_row(f"mc agreement {name} ({seeds} seeds)",
                         f">= {required}", str(passes), passes >= required))
    return rows


def check_tie_freeness(random_instances: int = 1000, seed: int = 400) -> list[CheckRow]:
    from .diffusion import TieError
    failures = 0
    checked = 0
    cases = [(g.instance, asg) for g, asg in [
        (gadgets.demo_diamond(), gadgets.demo_diamond().instance.baseline),
        (gadgets.demo_clique(), gadgets.demo_clique().extras["winning_plan"]),
        (gadgets.greedy_trap_paths(), gadgets.greedy_trap_paths().extras["optimal_plan"]),
        (gadgets.greedy_trap_trees(3), gadgets.greedy_trap_trees(3).extras["optimal_plan"]),
    ]]
    for i in range(random_instances):
        inst = randgen.random_instance(seed + i, max_nodes=7, seeded=True)
        cases.append((inst, inst.baseline))
    for inst, asg in cases:
        for lg in enumerate_live_graphs(inst.graph.edges):
            checked += 1
            try:
                tally(revise_scores(inst, asg, lg))
            except TieError:
                failures += 1
    return [_row(f"tie-freeness over {checked} tallies", "0 ties",
                 f"{failures} ties", failures == 0)]


def check_chi_submodularity(triples: int = 500, seed: int = 600) -> list[CheckRow]:
    import random
    from .diffusion import chi, sample_live_graph
    rng = random.Random(seed)
    import numpy as np
    np_rng = np.random.default_rng(seed)
    failures = 0
    for _ in range(triples):
        inst = randgen.random_instance(rng, max_nodes=8, min_nodes=3)
        n = inst.node_count
        lg = sample_live_graph(inst.graph.edges, np_rng)
        t_size = rng.randint(1, n - 1)
        t_set = rng.sample(range(n), t_size)
        s_set = rng.sample(t_set, rng.randint(0, t_size))
        x = rng.choice([v for v in range(n) if v not in t_set])
        k = inst.candidates

        def as_plan(nodes):
            return SeedAssignment.of({v: (0,) * k for v in nodes})

        gain_s = chi(lg, as_plan(list(s_set) + [x])) - chi(lg, as_plan(s_set))
        gain_t = chi(lg, as_plan(list(t_set) + [x])) - chi(lg, as_plan(t_set))
        if gain_s < gain_t:
            failures += 1
    return [_row(f"influence submodularity on {triples} sampled triples",
                 "0 violations", f"{failures} violations", failures == 0)]


# ---------------------------------------------------------------------------
# suite registry


SUITES = {
    "examples": lambda: check_diamond() + check_clique(),
    "traps": lambda: check_trap_paths() + check_trap_trees(),
    "seeding-bound": check_seeding_bound,
    "gadgets-iff": lambda: (check_seeding_gadget_battery()
                            + check_independent_set_battery()
                            + check_removal_gadget_battery()
                            + check_addition_gadget_battery()
                            + check_dks_identity()),
    "closed-forms": check_closed_forms,
    "influence": check_influence_removal,
    "reopt": check_reopt,
    "properties": lambda: (check_tie_freeness() + check_chi_submodularity()
                           + check_mc_agreement()),
}


def run_suite(name: str) -> list[CheckRow]:
    if name == "all":
        rows = []
        for suite in SUITES.values():
            rows.extend(suite())
        return rows
    if name not in SUITES:
        raise KeyError(f"unknown suite {name!r}; choose from "
                       f"{sorted(SUITES) + ['all']}")
    return SUITES[name]()
