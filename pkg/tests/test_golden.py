"""Golden-file pins for the instance JSON wire format."""

from pathlib import Path

from movnet import gadgets
from movnet.model import instance_from_json, instance_to_json

GOLDEN = Path(__file__).parent / "golden"


def test_diamond_matches_golden():
    want = (GOLDEN / "diamond.json").read_text()
    assert instance_to_json(gadgets.demo_diamond().instance) + "\n" == want


def test_covering_removal_matches_golden():
    g = gadgets.setcover_removal(gadgets.SetCover.of(2, [{0}, {1}], 2))
    want = (GOLDEN / "covering_removal_n2.json").read_text()
    assert instance_to_json(g.instance) + "\n" == want


def test_golden_files_parse():
    for path in sorted(GOLDEN.glob("*.json")):
        inst = instance_from_json(path.read_text())
        assert inst.node_count > 0
