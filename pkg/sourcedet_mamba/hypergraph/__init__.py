"""Hypergraph representation, incidence algebra, I/O and generation"""

from .core import Hypergraph, IncidenceSystem, PairwiseGraph, build_incidence, clique_expand
from .io import format_hypergraph, load_hypergraph, parse_hypergraph, save_hypergraph
from .operators import GraphOperators, build_operators, pseudo_inverse
from .synthetic import generate_synthetic

__all__ = (
    "GraphOperators",
    "Hypergraph",
    "IncidenceSystem",
    "PairwiseGraph",
    "build_incidence",
    "build_operators",
    "clique_expand",
    "format_hypergraph",
    "generate_synthetic",
    "load_hypergraph",
    "parse_hypergraph",
    "pseudo_inverse",
    "save_hypergraph",
)
