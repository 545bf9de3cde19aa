"""Rumour propagation on hypergraphs and coverage-triggered snapshot capture"""

from .simulator import (
    CascadeState,
    Topology,
    initial_state,
    run_until_coverage,
    select_sources,
    step,
    transition_probabilities,
)

__all__ = (
    "CascadeState",
    "Topology",
    "initial_state",
    "run_until_coverage",
    "select_sources",
    "step",
    "transition_probabilities",
)
