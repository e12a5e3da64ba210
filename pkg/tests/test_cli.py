import json
from fractions import Fraction

import pytest

from movnet import gadgets
from movnet.cli import main, plan_from_dict
from movnet.model import instance_from_json, instance_to_json


def run(argv):
    return main([str(a) for a in argv])


@pytest.fixture
def diamond_file(tmp_path):
    path = tmp_path / "diamond.json"
    path.write_text(instance_to_json(gadgets.demo_diamond().instance))
    return path


class TestGen:
    def test_stdout_round_trips(self, capsys):
        assert run(["gen", "diamond-demo"]) == 0
        out = capsys.readouterr().out
        assert instance_from_json(out) == gadgets.demo_diamond().instance

    def test_out_and_meta_files(self, tmp_path):
        out = tmp_path / "inst.json"
        meta = tmp_path / "meta.json"
        rc = run(["gen", "setcover-seeding", "--elements", "3",
                  "--sets", "0,1;1,2;0,2", "--target", "2",
                  "--out", out, "--meta", meta])
        assert rc == 0
        doc = json.loads(meta.read_text())
        assert doc["budget"] == 3
        inst = instance_from_json(out.read_text())
        assert inst.node_count == 22

    def test_deterministic_bytes(self, tmp_path, capsys):
        run(["gen", "greedy-trap-trees", "--r", "3"])
        first = capsys.readouterr().out
        run(["gen", "greedy-trap-trees", "--r", "3"])
        assert capsys.readouterr().out == first

    def test_reopt_wrap(self, tmp_path, capsys):
        inner = tmp_path / "inner.json"
        from movnet.checks import _reopt_inner
        inner.write_text(instance_to_json(_reopt_inner()))
        meta = tmp_path / "meta.json"
        assert run(["gen", "reopt-wrap", "--inner", inner, "--meta", meta]) == 0
        wrapped = instance_from_json(capsys.readouterr().out)
        doc = json.loads(meta.read_text())
        assert tuple(doc["extras"]["bridge_edge"]) in \
            {(e.src, e.dst) for e in wrapped.graph.edges}


class TestSolve:
    def test_plan_json_and_csv(self, diamond_file, tmp_path, capsys):
        csv = tmp_path / "rows.csv"
        rc = run(["solve", "--instance", diamond_file, "--solver",
                  "brute-removal", "--budget", "2", "--csv", csv])
        assert rc == 0
        plan = json.loads(capsys.readouterr().out)
        assert plan["solver"] == "brute-removal"
        lines = csv.read_text().splitlines()
        assert lines[0].startswith("#") and "movnet-results" in lines[0]
        assert lines[1].startswith("instance_id,")
        assert lines[2].startswith("diamond,brute-removal,exact,")

    def test_hard_to_manipulate_exit_code(self, tmp_path, capsys):
        g = gadgets.setcover_seeding(gadgets.SetCover.of(2, [{0}, {1}], 1))
        path = tmp_path / "hard.json"
        path.write_text(instance_to_json(g.instance))
        rc = run(["solve", "--instance", path, "--solver", "greedy-seeding",
                  "--budget", str(g.budget)])
        assert rc == 10
        assert "hard-to-manipulate" in capsys.readouterr().err

    def test_cap_exit_code(self, tmp_path, capsys):
        path = tmp_path / "clique.json"
        path.write_text(instance_to_json(gadgets.demo_clique().instance))
        rc = run(["solve", "--instance", path, "--solver",
                  "brute-seeding", "--budget", "3", "--search-cap", "5"])
        assert rc == 11

    def test_precondition_exit_code(self, diamond_file, capsys):
        rc = run(["solve", "--instance", diamond_file, "--solver",
                  "two-candidate-removal", "--budget", "inf"])
        assert rc == 12  # three candidates

    def test_unlimited_seeding_rejected(self, tmp_path, capsys):
        path = tmp_path / "clique.json"
        path.write_text(instance_to_json(gadgets.demo_clique().instance))
        rc = run(["solve", "--instance", path, "--solver",
                  "brute-seeding", "--budget", "inf"])
        assert rc == 12
        assert "trivial" in capsys.readouterr().err

    def test_worker_count_does_not_change_bytes(self, tmp_path, capsys):
        inst = tmp_path / "cover.json"
        g = gadgets.setcover_removal(gadgets.SetCover.of(2, [{0}, {1}], 2))
        inst.write_text(instance_to_json(g.instance))
        plan = tmp_path / "plan.json"
        run(["solve", "--instance", inst, "--solver", "brute-removal",
             "--budget", "inf", "--out", plan])
        capsys.readouterr()
        rows = []
        for workers in (1, 2):
            rc = run(["eval", "--instance", inst, "--plan", plan,
                      "--mode", "mc", "--samples", "8192", "--seed", "7",
                      "--workers", workers, "--id", "c"])
            assert rc == 0
            row = capsys.readouterr().out.strip()
            rows.append(row.rsplit(",", 1)[0])  # strip wall time
        assert rows[0] == rows[1] and ",mc," in rows[0]


class TestEvalRoundTrip:
    def test_exact_row_reproduces_value(self, diamond_file, tmp_path, capsys):
        plan_path = tmp_path / "plan.json"
        run(["solve", "--instance", diamond_file, "--solver", "brute-removal",
             "--budget", "2", "--out", plan_path])
        capsys.readouterr()
        rc = run(["eval", "--instance", diamond_file, "--plan", plan_path])
        assert rc == 0
        row = capsys.readouterr().out.strip()
        recorded = json.loads(plan_path.read_text())["value"]
        assert row.split(",")[3] == recorded

    def test_plan_from_dict_round_trip(self):
        doc = {"solver": "brute-removal", "kind": "removal",
               "edges": [[0, 1]], "value": "3/2", "mode": "exact"}
        plan = plan_from_dict(doc)
        assert plan.edge_set == ((0, 1),)
        assert plan.claimed_value.value == Fraction(3, 2)


class TestBadInput:
    def test_malformed_sets_fail_cleanly(self, capsys):
        rc = run(["gen", "setcover-seeding", "--sets", "0,1;;2"])
        assert rc == 2
        assert "error:" in capsys.readouterr().err

    def test_missing_instance_file(self, capsys):
        rc = run(["solve", "--instance", "/nonexistent.json",
                  "--solver", "brute-removal"])
        assert rc == 2


class TestVerify:
    def test_examples_suite_passes(self, capsys):
        assert run(["verify", "examples"]) == 0
        out = capsys.readouterr().out
        assert "PASS" in out and "FAIL" not in out
