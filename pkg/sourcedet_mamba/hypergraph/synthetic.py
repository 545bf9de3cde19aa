"""Random hypergraph generation"""

from typing import List

import numpy as np

from ..errors import ValidationError
from .core import Hypergraph


def generate_synthetic(n: int, m: int, size_min: int, size_max: int, seed: int) -> Hypergraph:
    """Draw ``m`` hyperedges whose sizes are uniform in ``[size_min, size_max]``.

    Members are sampled without replacement. A repair pass then appends every node that appears in
    no edge to a uniformly chosen edge, so the minimum node degree is 1.
    """
    if m < 1:
        raise ValidationError(f"edge count must be at least 1, got {m}")
    if not 2 <= size_min <= size_max <= n:
        raise ValidationError(f"edge-size bounds must satisfy 2 <= {size_min} <= {size_max} <= n={n}")

    rng = np.random.default_rng(seed)
    edges: List[List[int]] = []
    for _ in range(m):
        size = int(rng.integers(size_min, size_max + 1))
        edges.append([int(v) for v in rng.choice(n, size=size, replace=False)])

    placed = np.zeros(n, dtype=bool)
    for edge in edges:
        placed[edge] = True
    for v in np.flatnonzero(~placed):
        edges[int(rng.integers(m))].append(int(v))

    return Hypergraph(n=n, edges=edges)


__all__ = ["generate_synthetic"]
