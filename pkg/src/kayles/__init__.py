"""Exact solvers, kernelization and reduction gadgets for Arc-Kayles and
its non-disconnecting variants."""

from .graph import Graph, GraphError, format_graph, parse_graph
from .rulesets import NDAK, ArcKayles, NDNodeKayles, NodeKayles, Ruleset, csg, parse_ruleset
from .solver import CapExceeded, Outcome, solve_grundy, solve_outcome

__all__ = [
    "Graph", "GraphError", "format_graph", "parse_graph",
    "NDAK", "ArcKayles", "NDNodeKayles", "NodeKayles", "Ruleset", "csg", "parse_ruleset",
    "CapExceeded", "Outcome", "solve_grundy", "solve_outcome",
]
