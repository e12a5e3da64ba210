"""Election manipulation on social networks.

Multi-issue independent-cascade diffusion with score-based vote revision,
margin-of-victory evaluation (exact enumeration or Monte Carlo), seeding and
edge-manipulation solvers with brute-force oracles, and generators for the
hardness-reduction and counterexample instances that certify them.
"""

from .model import (
    EMPTY_ASSIGNMENT,
    Edge,
    InfluenceGraph,
    Instance,
    SeedAssignment,
    SeedEntry,
    delta,
    epsilon,
    instance_from_json,
    instance_to_json,
    is_hard_to_manipulate,
    validate,
)
from .diffusion import (
    EnumerationCapError,
    FinalScores,
    LiveGraph,
    Tally,
    TieError,
    chi,
    enumerate_live_graphs,
    influenced_sets,
    mov_of,
    revise_scores,
    sample_live_graph,
    tally,
)
from .backend import BACKEND

__all__ = [
    "BACKEND",
    "EMPTY_ASSIGNMENT",
    "Edge",
    "EnumerationCapError",
    "FinalScores",
    "InfluenceGraph",
    "Instance",
    "LiveGraph",
    "SeedAssignment",
    "SeedEntry",
    "Tally",
    "TieError",
    "chi",
    "delta",
    "enumerate_live_graphs",
    "epsilon",
    "influenced_sets",
    "instance_from_json",
    "instance_to_json",
    "is_hard_to_manipulate",
    "mov_of",
    "revise_scores",
    "sample_live_graph",
    "tally",
    "validate",
]
