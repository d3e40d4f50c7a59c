"""Oriented diameter of complete tripartite graphs K(3, p, q).

Diameter-two constructions, exact BFS verification, class-structure analysis
of arbitrary orientations, closed-form thresholds, and exhaustive oracles for
small instances.
"""
from .constructions import (
    ConstructionError,
    ConstructionFault,
    ConstructionPlan,
    Kind,
    bipartite_lambda_orientation,
    construct_diameter2,
    even_orientation,
    near_bipartite_orientation,
    odd_orientation,
    singleton_orientation,
)
from .digraph import INFINITE, Digraph, DiameterReport, diameter_report, from_oriented_edges, reverse
from .multipartite import PartLayout, layout
from .search import exists_diam2_backtracking, f_bruteforce, far_pair_check, sperner_check
from .structure import IMPOSSIBLE, analyze, case_bound, check_class_constraints, verify_inequality_chains
from .thresholds import f_formula, threshold_3pq

__version__ = "0.1.0"

__all__ = [
    "ConstructionError",
    "ConstructionFault",
    "ConstructionPlan",
    "Kind",
    "bipartite_lambda_orientation",
    "construct_diameter2",
    "even_orientation",
    "near_bipartite_orientation",
    "odd_orientation",
    "singleton_orientation",
    "INFINITE",
    "Digraph",
    "DiameterReport",
    "diameter_report",
    "from_oriented_edges",
    "reverse",
    "PartLayout",
    "layout",
    "exists_diam2_backtracking",
    "f_bruteforce",
    "far_pair_check",
    "sperner_check",
    "IMPOSSIBLE",
    "analyze",
    "case_bound",
    "check_class_constraints",
    "verify_inequality_chains",
    "f_formula",
    "threshold_3pq",
]
