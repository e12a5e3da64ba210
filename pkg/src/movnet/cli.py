"""Command-line interface: generate instances, solve, evaluate, verify.

Exit codes: 0 success, 2 usage errors, 10 hard-to-manipulate refusal,
11 enumeration/search cap exceeded, 12 closed-form precondition failure,
1 verification failures.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from fractions import Fraction
from pathlib import Path

from . import checks, gadgets
from .backend import WeightOverflowError
from .diffusion import EnumerationCapError
from .edges import (
    EdgePlan,
    brute_force_addition,
    brute_force_influence_addition,
    brute_force_influence_removal,
    brute_force_removal,
    two_candidate_addition,
    two_candidate_removal,
    unlimited_influence_addition,
    unlimited_influence_removal,
)
from .errors import HardToManipulateError, PreconditionError, SearchCapError
from .evaluate import (
    CSV_HEADER,
    EvalConfig,
    Evaluation,
    csv_comment,
    csv_row,
    timed,
)
from .model import Instance, SeedAssignment, instance_from_json, instance_to_json
from .seeding import SeedingPlan, brute_force_seeding, greedy_augmentation, greedy_seeding

EXIT_HARD = 10
EXIT_CAP = 11
EXIT_PRECONDITION = 12


def _parse_sets(text: str):
    return [frozenset(int(x) for x in part.split(",")) for part in text.split(";")]


def _parse_edges(text: str):
    out = []
    for part in text.split(","):
        u, v = part.split("-")
        out.append((int(u), int(v)))
    return out


def _parse_values(text: str):
    return tuple(int(x) for x in text.split(","))


def _jsonable(value):
    if isinstance(value, Fraction):
        return f"{value.numerator}/{value.denominator}"
    if isinstance(value, dict):
        return {str(k): _jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_jsonable(v) for v in value]
    if isinstance(value, SeedAssignment):
        return [{"node": e.node, "news": list(e.news)} for e in value.entries]
    if value == math.inf:
        return "inf"
    return value


def _generators():
    return {
        "clique-demo": lambda a: gadgets.demo_clique(),
        "diamond-demo": lambda a: gadgets.demo_diamond(),
        "greedy-trap-paths": lambda a: gadgets.greedy_trap_paths(),
        "greedy-trap-trees": lambda a: gadgets.greedy_trap_trees(a.r),
        "setcover-seeding": lambda a: gadgets.setcover_seeding(
            gadgets.SetCover.of(a.elements, _parse_sets(a.sets), a.target)),
        "partition-lines": lambda a: gadgets.partition_lines(
            gadgets.PartitionMultiset(_parse_values(a.values), a.k)),
        "dks-seeding": lambda a: gadgets.dks_seeding(
            gadgets.UndirectedGraph.of(a.vertices, _parse_edges(a.edges)), a.budget),
        "msi-removal": lambda a: gadgets.msi_removal(
            gadgets.MSI.of(a.elements, _parse_sets(a.sets), a.target), a.replication),
        "indepset-removal": lambda a: gadgets.independent_set_removal(
            gadgets.UndirectedGraph.of(a.vertices, _parse_edges(a.edges)),
            line_len=a.line_len, isolated=a.isolated),
        "setcover-removal": lambda a: gadgets.setcover_removal(
            gadgets.SetCover.of(a.elements, _parse_sets(a.sets), a.target)),
        "maxcover-addition": lambda a: gadgets.maxcover_addition(
            gadgets.MaxCover.of(a.elements, _parse_sets(a.sets), a.target),
            layers=a.layers, sink=a.sink, link_p=Fraction(a.link_p)),
        "setcover-addition-single": lambda a: gadgets.setcover_addition_single(
            gadgets.SetCover.of(a.elements, _parse_sets(a.sets), a.target),
            isolated=a.isolated),
        "setcover-addition-multi": lambda a: gadgets.setcover_addition_multi(
            gadgets.SetCover.of(a.elements, _parse_sets(a.sets), a.target)),
    }


def _add_gen_parser(sub):
    p = sub.add_parser("gen", help="generate an instance")
    p.add_argument("generator", choices=sorted(_generators()) + ["reopt-wrap"])
    p.add_argument("--out", type=Path, help="write instance JSON here (default stdout)")
    p.add_argument("--meta", type=Path, help="write budget/layout metadata JSON here")
    p.add_argument("--r", type=int, default=3)
    p.add_argument("--elements", type=int, default=3)
    p.add_argument("--sets", default="0,1;1,2;0,2")
    p.add_argument("--target", type=int, default=2)
    p.add_argument("--values", default="1,1,2,2")
    p.add_argument("--k", type=int, default=2)
    p.add_argument("--vertices", type=int, default=3)
    p.add_argument("--edges", default="0-1,1-2")
    p.add_argument("--budget", type=int, default=2)
    p.add_argument("--replication", type=int, default=4)
    p.add_argument("--line-len", type=int, default=None)
    p.add_argument("--isolated", type=int, default=None)
    p.add_argument("--layers", type=int, default=2)
    p.add_argument("--sink", type=int, default=8)
    p.add_argument("--link-p", default="1/2")
    p.add_argument("--inner", type=Path, help="inner instance for reopt-wrap")


def _cmd_gen(args) -> int:
    if args.generator == "reopt-wrap":
        if args.inner is None:
            print("reopt-wrap requires --inner FILE", file=sys.stderr)
            return 2
        inner = instance_from_json(args.inner.read_text())
        wrapped, bridge = gadgets.reopt_wrapper(inner)
        gadget = gadgets.Gadget(wrapped, None, {"bridge_edge": list(bridge)})
    else:
        gadget = _generators()[args.generator](args)
    text = instance_to_json(gadget.instance)
    if args.out:
        args.out.write_text(text + "\n")
    else:
        print(text)
    if args.meta:
        meta = {"budget": _jsonable(gadget.budget),
                "extras": _jsonable(gadget.extras)}
        args.meta.write_text(json.dumps(meta, indent=1, sort_keys=True) + "\n")
    return 0


def _parse_budget(text: str):
    if text == "inf":
        return math.inf
    return int(text)


def _solvers():
    # name -> (callable(instance, budget, config, args), needs_finite_budget)
    def finite(budget, name):
        if budget == math.inf:
            raise PreconditionError(
                f"{name} needs a finite budget: with unlimited budget seeding "
                "is trivial (make every node a seed flooding positive articles "
                "for the preferred candidate)")
        return int(budget)

    def unlimited(budget, name):
        if budget != math.inf:
            raise PreconditionError(f"{name} is the unlimited-budget closed "
                                    "form; pass --budget inf")

    return {
        "greedy-seeding": lambda inst, b, cfg, a:
            greedy_seeding(inst, finite(b, "greedy-seeding"), cfg),
        "greedy-augmentation": lambda inst, b, cfg, a:
            greedy_augmentation(inst, finite(b, "greedy-augmentation"), config=cfg),
        "brute-seeding": lambda inst, b, cfg, a:
            brute_force_seeding(inst, finite(b, "brute-seeding"), config=cfg,
                                search_cap=a.search_cap),
        "brute-removal": lambda inst, b, cfg, a:
            brute_force_removal(inst, b, cfg, search_cap=a.search_cap),
        "brute-addition": lambda inst, b, cfg, a:
            brute_force_addition(inst, b, cfg, search_cap=a.search_cap),
        "brute-influence-removal": lambda inst, b, cfg, a:
            brute_force_influence_removal(inst, b, cfg, search_cap=a.search_cap),
        "brute-influence-addition": lambda inst, b, cfg, a:
            brute_force_influence_addition(inst, b, cfg, search_cap=a.search_cap),
        "two-candidate-removal": lambda inst, b, cfg, a:
            (unlimited(b, "two-candidate-removal"), two_candidate_removal(inst, cfg))[1],
        "two-candidate-addition": lambda inst, b, cfg, a:
            (unlimited(b, "two-candidate-addition"), two_candidate_addition(inst, cfg))[1],
        "remove-all": lambda inst, b, cfg, a:
            (unlimited(b, "remove-all"), unlimited_influence_removal(inst, cfg))[1],
        "add-all": lambda inst, b, cfg, a:
            (unlimited(b, "add-all"), unlimited_influence_addition(inst, cfg))[1],
    }


def _add_solve_parser(sub):
    p = sub.add_parser("solve", help="run a solver on an instance")
    p.add_argument("--instance", required=True,
                   help="instance JSON file, or - for stdin")
    p.add_argument("--solver", required=True, choices=sorted(_solvers()))
    p.add_argument("--budget", default="inf",
                   help="news-article or edge budget; integer or 'inf'")
    _add_eval_flags(p)
    p.add_argument("--search-cap", type=int, default=1 << 20)
    p.add_argument("--out", type=Path, help="write plan JSON here (default stdout)")
    p.add_argument("--csv", type=Path, help="append a result row here")
    p.add_argument("--id", default=None, help="instance id for the CSV row")


def _add_eval_flags(p):
    p.add_argument("--mode", choices=["exact", "mc"], default="exact")
    p.add_argument("--samples", type=int, default=10_000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--enumeration-cap", type=int, default=20)


def _config(args) -> EvalConfig:
    return EvalConfig(mode=args.mode, samples=args.samples, seed=args.seed,
                      workers=args.workers, enumeration_cap=args.enumeration_cap)


def _load_instance(spec: str) -> Instance:
    text = sys.stdin.read() if spec == "-" else Path(spec).read_text()
    return instance_from_json(text)


def _append_csv(path: Path, row: str):
    fresh = not path.exists() or not path.read_text().strip()
    with path.open("a") as fh:
        if fresh:
            fh.write(csv_comment() + "\n" + CSV_HEADER + "\n")
        fh.write(row + "\n")


def _cmd_solve(args) -> int:
    instance = _load_instance(args.instance)
    budget = _parse_budget(args.budget)
    config = _config(args)
    result = timed(_solvers()[args.solver], instance, budget, config, args)
    plan = result.value
    text = json.dumps(plan.to_dict(), indent=1, sort_keys=True)
    if args.out:
        args.out.write_text(text + "\n")
    else:
        print(text)
    if args.csv:
        instance_id = args.id or (Path(args.instance).stem
                                  if args.instance != "-" else "stdin")
        _append_csv(args.csv, csv_row(instance_id, args.solver,
                                      plan.claimed_value, result.wall_ms))
    return 0


def _add_eval_parser(sub):
    p = sub.add_parser("eval", help="re-evaluate a saved plan")
    p.add_argument("--instance", required=True)
    p.add_argument("--plan", required=True, type=Path)
    _add_eval_flags(p)
    p.add_argument("--csv", type=Path)
    p.add_argument("--id", default=None)


def plan_from_dict(doc: dict):
    """Rebuild a plan object from its JSON form."""
    value = doc.get("value", "0")
    ev = Evaluation(Fraction(value) if doc.get("mode", "exact") == "exact"
                    else float(Fraction(value)), doc.get("mode", "exact"))
    if "seeds" in doc:
        assignment = SeedAssignment.of(
            {s["node"]: tuple(s["news"]) for s in doc["seeds"]},
            {s["node"]: s.get("bribed_to", 0) for s in doc["seeds"]})
        return SeedingPlan(assignment, ev, doc.get("solver", "unknown"))
    return EdgePlan(doc["kind"], tuple(tuple(e) for e in doc["edges"]),
                    ev, doc.get("solver", "unknown"))


def _cmd_eval(args) -> int:
    from .edges import re_evaluate
    instance = _load_instance(args.instance)
    plan = plan_from_dict(json.loads(args.plan.read_text()))
    config = _config(args)
    result = timed(re_evaluate, instance, plan, config)
    ev = result.value
    row = csv_row(args.id or Path(args.instance).stem if args.instance != "-"
                  else "stdin", f"eval-{getattr(plan, 'solver', 'plan')}",
                  ev, result.wall_ms)
    if args.csv:
        _append_csv(args.csv, row)
    print(row)
    return 0


def _add_verify_parser(sub):
    p = sub.add_parser("verify", help="run a verification suite")
    p.add_argument("suite", choices=sorted(checks.SUITES) + ["all"])


def _cmd_verify(args) -> int:
    rows = checks.run_suite(args.suite)
    width = max(len(r.name) for r in rows)
    failures = 0
    for r in rows:
        status = "PASS" if r.ok else "FAIL"
        print(f"{r.name:<{width}}  expected {r.expected!s:<14} got {r.got!s:<14} {status}")
        failures += not r.ok
    print(f"{len(rows) - failures}/{len(rows)} checks passed")
    return 1 if failures else 0


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        prog="movnet",
        description="Election manipulation on social networks: generators, "
                    "solvers and verification suites.")
    sub = parser.add_subparsers(dest="command", required=True)
    _add_gen_parser(sub)
    _add_solve_parser(sub)
    _add_eval_parser(sub)
    _add_verify_parser(sub)
    args = parser.parse_args(argv)
    try:
        if args.command == "gen":
            return _cmd_gen(args)
        if args.command == "solve":
            return _cmd_solve(args)
        if args.command == "eval":
            return _cmd_eval(args)
        return _cmd_verify(args)
    except HardToManipulateError as exc:
        print(f"refused: {exc}", file=sys.stderr)
        return EXIT_HARD
    except (SearchCapError, EnumerationCapError, WeightOverflowError) as exc:
        print(f"refused: {exc}", file=sys.stderr)
        return EXIT_CAP
    except PreconditionError as exc:
        print(f"refused: {exc}", file=sys.stderr)
        return EXIT_PRECONDITION
    except (ValueError, KeyError, FileNotFoundError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
