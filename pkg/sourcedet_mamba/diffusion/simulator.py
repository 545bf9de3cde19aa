"""Stochastic rumour propagation on hypergraphs with low- and high-order interactions"""

import logging
import math
from typing import List, Optional, Tuple, Union

import numpy as np
from attrs import define, evolve
from tenacity import RetryCallState, Retrying, retry_if_exception_type, stop_after_attempt, wait_none

from ..errors import ContractError, SimulationError, ValidationError
from ..hypergraph import Hypergraph, IncidenceSystem, PairwiseGraph, build_incidence, clique_expand
from ..models import Cascade, CascadeConfig, SnapshotSeries
from ..seeding import derive_seed
from ..types import NEVER, DiffusionModel, FloatArray, IntArray, NodeState

logger = logging.getLogger(__name__)

# Slack when comparing informed fractions against coverage targets
_COVERAGE_EPS = 1e-9

# Models under which an informed node can never become uninformed again
_MONOTONE = (DiffusionModel.SI, DiffusionModel.IC)


class CascadeStalled(Exception):
    """A single attempt failed to reach ``target`` (internal; retried)"""

    def __init__(self, target: float, step: int):
        self.target = target
        self.step = step
        super().__init__(f"coverage {target:g} not reached by step {step}")


@define(frozen=True, eq=False)
class Topology:
    """Hypergraph plus the structures the simulator reads every round"""

    hypergraph: Hypergraph
    clique: PairwiseGraph
    incidence: IncidenceSystem

    @classmethod
    def of(cls, hg: Union[Hypergraph, "Topology"]) -> "Topology":
        if isinstance(hg, Topology):
            return hg
        return cls(hypergraph=hg, clique=clique_expand(hg), incidence=build_incidence(hg))

    @property
    def n(self) -> int:
        return self.hypergraph.n


@define(frozen=True, eq=False)
class CascadeState:
    """Node states after ``step`` synchronous rounds.

    Attributes:
        states: ``NodeState`` code per node.
        infection_time: first infection round per node, ``NEVER`` otherwise.
        fresh: nodes informed during the latest round (IC spreaders).
        rates: per-node low-order transmission rates pᵢ.
        step: rounds elapsed.
    """

    states: IntArray
    infection_time: IntArray
    fresh: np.ndarray
    rates: FloatArray
    step: int = 0

    @property
    def infectious(self) -> np.ndarray:
        return self.states == NodeState.INFORMED

    @property
    def informed(self) -> np.ndarray:
        return (self.states == NodeState.INFORMED) | (self.states == NodeState.RECOVERED)

    def informed_count(self) -> int:
        return int(self.informed.sum())


def select_sources(hg: Hypergraph, fraction: float, rng: np.random.Generator) -> Tuple[int, ...]:
    """Sample ``⌈fraction·n⌉`` distinct nodes uniformly"""
    if not 0 < fraction < 1:
        raise ValidationError(f"source fraction must lie in (0, 1), got {fraction}")
    count = math.ceil(fraction * hg.n - _COVERAGE_EPS)
    if count < 1:
        raise ValidationError(f"source fraction {fraction} selects no node out of {hg.n}")
    return tuple(sorted(int(v) for v in rng.choice(hg.n, size=count, replace=False)))


def initial_state(n: int, sources: Tuple[int, ...], rates: FloatArray) -> CascadeState:
    states = np.full(n, NodeState.UNINFORMED, dtype=np.int64)
    infection_time = np.full(n, NEVER, dtype=np.int64)
    fresh = np.zeros(n, dtype=bool)
    idx = list(sources)
    states[idx] = NodeState.INFORMED
    infection_time[idx] = 0
    fresh[idx] = True
    return CascadeState(states=states, infection_time=infection_time, fresh=fresh, rates=rates, step=0)


def transition_probabilities(incidence: IncidenceSystem, infectious: np.ndarray, coefficient: float) -> FloatArray:
    """Per-hyperedge ``p_Δ(e) = coefficient · |e ∩ v⁺| / |e|``"""
    counts = incidence.edge_major @ infectious.astype(np.float64)
    return coefficient * counts / incidence.edge_degrees


def _low_order(topology: Topology, state: CascadeState, spreaders: np.ndarray, rng: np.random.Generator) -> IntArray:
    rows = np.flatnonzero(spreaders)
    if rows.size == 0:
        return np.empty(0, dtype=np.int64)
    block = topology.clique.adjacency[rows]
    targets = block.indices
    probs = np.repeat(state.rates[rows], np.diff(block.indptr))
    draws = rng.random(targets.size)
    susceptible = state.states == NodeState.UNINFORMED
    return targets[(draws < probs) & susceptible[targets]]


def _high_order(topology: Topology, state: CascadeState, coefficient: float, rng: np.random.Generator) -> IntArray:
    incidence = topology.incidence
    p_delta = transition_probabilities(incidence, state.infectious, coefficient)
    members = incidence.edge_major.indices
    probs = np.repeat(p_delta, np.diff(incidence.edge_major.indptr))
    draws = rng.random(members.size)
    susceptible = state.states == NodeState.UNINFORMED
    return members[(draws < probs) & susceptible[members]]


def step(
    hg: Union[Hypergraph, Topology], state: CascadeState, config: CascadeConfig, rng: np.random.Generator
) -> CascadeState:
    """Advance one synchronous round.

    Every transition is decided from ``state``: low-order pairwise trials along clique-expansion
    edges, then one high-order trial per (hyperedge, uninformed member), then recovery for SIS/SIR.
    Under IC only nodes informed in the previous round attempt low-order transmission.
    """
    topology = Topology.of(hg)
    spreaders = state.fresh & state.infectious if config.model is DiffusionModel.IC else state.infectious

    low = _low_order(topology, state, spreaders, rng)
    high = _high_order(topology, state, config.high_order_coefficient, rng)

    states = state.states.copy()
    infection_time = state.infection_time.copy()
    if config.model in (DiffusionModel.SIS, DiffusionModel.SIR):
        recovering = state.infectious & (rng.random(states.size) < config.recovery_probability)
        states[recovering] = NodeState.UNINFORMED if config.model is DiffusionModel.SIS else NodeState.RECOVERED

    newly = np.unique(np.concatenate([low, high]))
    states[newly] = NodeState.INFORMED
    first = newly[infection_time[newly] == NEVER]
    infection_time[first] = state.step + 1
    fresh = np.zeros(states.size, dtype=bool)
    fresh[newly] = True

    return evolve(state, states=states, infection_time=infection_time, fresh=fresh, step=state.step + 1)


def _check_nested(earlier: IntArray, later: IntArray, step: int) -> None:
    lost = np.flatnonzero((earlier == NodeState.INFORMED) & (later != NodeState.INFORMED))
    if lost.size:
        raise ContractError(f"capture at step {step} lost informed nodes {lost[:5].tolist()}")


def _simulate_once(topology: Topology, config: CascadeConfig, seed: int) -> SnapshotSeries:
    rng = np.random.default_rng(seed)
    n = topology.n
    sources = select_sources(topology.hypergraph, config.source_fraction, rng)
    lo, hi = config.p_low_range
    rates = rng.uniform(lo, hi, size=n)
    state = initial_state(n, sources, rates)

    targets = config.coverage_targets
    times: List[int] = []
    captures: List[IntArray] = []

    def capture() -> None:
        count = state.informed_count()
        while len(times) < len(targets) and count >= targets[len(times)] * n - _COVERAGE_EPS:
            if captures and config.model in _MONOTONE:
                _check_nested(captures[-1], state.states, state.step)
            times.append(state.step)
            captures.append(state.states.copy())

    capture()
    while len(times) < len(targets):
        if state.step >= config.max_steps or not state.infectious.any():
            raise CascadeStalled(targets[len(times)], state.step)
        state = step(topology, state, config, rng)
        capture()

    cascade = Cascade(sources=sources, infection_time=state.infection_time, node_rates=rates)
    return SnapshotSeries(times=times, states=np.stack(captures), cascade=cascade, config=config)


def _log_retry(retry_state: RetryCallState) -> None:
    outcome = retry_state.outcome
    reason = outcome.exception() if outcome is not None else None
    logger.warning("cascade attempt %d stalled (%s); resampling", retry_state.attempt_number, reason)


def run_until_coverage(
    hg: Union[Hypergraph, Topology], config: CascadeConfig, cascade_index: Optional[int] = None
) -> SnapshotSeries:
    """Simulate until every coverage target has been captured.

    A snapshot is recorded at the first round whose informed fraction reaches each target. Stalled
    attempts (``max_steps`` exhausted, or no informed node left) are discarded and resampled with
    seed ``derive_seed(config.seed, "attempt", k)``.

    Raises:
        SimulationError: all ``config.max_attempts`` attempts stalled.
        ContractError: under SI or IC a capture lost a node an earlier capture held informed.
    """
    topology = Topology.of(hg)
    root = 0 if config.seed is None else config.seed
    series: Optional[SnapshotSeries] = None
    try:
        for attempt in Retrying(
            stop=stop_after_attempt(config.max_attempts),
            retry=retry_if_exception_type(CascadeStalled),
            wait=wait_none(),
            before_sleep=_log_retry,
            reraise=True,
        ):
            with attempt:
                seed = derive_seed(root, "attempt", attempt.retry_state.attempt_number - 1)
                series = _simulate_once(topology, config, seed)
    except CascadeStalled as exc:
        raise SimulationError(exc.target, config.max_attempts, cascade_index) from exc
    assert series is not None
    return series


__all__ = [
    "CascadeState",
    "Topology",
    "initial_state",
    "run_until_coverage",
    "select_sources",
    "step",
    "transition_probabilities",
]
