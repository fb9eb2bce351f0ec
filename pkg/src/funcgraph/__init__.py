"""Functional graphs of polynomials over prime fields: canonical labels,
linear-time isomorphism, censuses of non-isomorphic graphs and their bounds,
and statistics of the quadratic family."""

from .canon import (GENERAL, QUADRATIC, CanonLabel, GraphLabel, LabelTrie,
                    is_isomorphic, label_graph, label_tree_general,
                    label_tree_quadratic)
from .census import (CensusResult, bounds_report, enumerate_bruteforce,
                     enumerate_normalized, eta_lower_bound, eta_vector, rho,
                     upper_bound)
from .errors import (BadExponent, BudgetExceeded, FuncGraphError, NotPrime,
                     OutOfRange, PreconditionViolated, ShapeViolation,
                     UnknownFormat, Unsupported)
from .field import FieldSpec, field
from .graph import (Decomposition, FunctionalGraph, StatRecord, decompose,
                    graph_from_poly, graph_stats, read_map_file, write_map_file)
from .polyring import Poly, G_poly, iterate_F, poly_gcd
from .stats import FamilyStats, cyclic_extremes, emit_table, family_stats
from .theory import VerificationReport, run_suite

__version__ = "0.1.0"

__all__ = [
    "GENERAL",
    "QUADRATIC",
    "CanonLabel",
    "GraphLabel",
    "LabelTrie",
    "is_isomorphic",
    "label_graph",
    "label_tree_general",
    "label_tree_quadratic",
    "CensusResult",
    "bounds_report",
    "enumerate_bruteforce",
    "enumerate_normalized",
    "eta_lower_bound",
    "eta_vector",
    "rho",
    "upper_bound",
    "BadExponent",
    "BudgetExceeded",
    "FuncGraphError",
    "NotPrime",
    "OutOfRange",
    "PreconditionViolated",
    "ShapeViolation",
    "UnknownFormat",
    "Unsupported",
    "field",
    "FieldSpec",
    "Decomposition",
    "FunctionalGraph",
    "StatRecord",
    "decompose",
    "graph_from_poly",
    "graph_stats",
    "read_map_file",
    "write_map_file",
    "Poly",
    "G_poly",
    "iterate_F",
    "poly_gcd",
    "FamilyStats",
    "cyclic_extremes",
    "emit_table",
    "family_stats",
    "VerificationReport",
    "run_suite",
]
