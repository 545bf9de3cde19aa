import networkx as nx
import numpy as np

from ..hypergraph import PairwiseGraph
from ..types import FloatArray


def jordan_center_baseline(graph: PairwiseGraph, informed: np.ndarray) -> FloatArray:
    """Score informed nodes by ``1 / (1 + eccentricity)`` inside their informed component.

    Uninformed nodes score 0, so every component's Jordan center gets the top score within it.
    """
    informed = np.asarray(informed, dtype=bool)
    scores = np.zeros(graph.n)
    subgraph = graph.to_networkx().subgraph(np.flatnonzero(informed).tolist())
    for component in nx.connected_components(subgraph):
        eccentricity = nx.eccentricity(subgraph.subgraph(component))
        for node, ecc in eccentricity.items():
            scores[node] = 1.0 / (1.0 + ecc)
    return scores
