"""Directed bisection with a certified minimum-semidegree guarantee."""

from .config import EngineConfig
from .constructions import eulerian_complete_odd, extremal_family, random_min_semidegree
from .digraph import Digraph, UndirectedGraph, cut_sizes, parse_digraph, serialize_digraph
from .engine import Bisection, Certificate, optimal_bisect, result_document

__all__ = [
    "Bisection",
    "Certificate",
    "Digraph",
    "EngineConfig",
    "UndirectedGraph",
    "cut_sizes",
    "eulerian_complete_odd",
    "extremal_family",
    "optimal_bisect",
    "parse_digraph",
    "random_min_semidegree",
    "result_document",
    "serialize_digraph",
]

__version__ = "0.1.0"
