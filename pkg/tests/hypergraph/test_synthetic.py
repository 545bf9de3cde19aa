import numpy as np
import pytest

from sourcedet_mamba.errors import ValidationError
from sourcedet_mamba.hypergraph import build_incidence, generate_synthetic


class TestGenerateSynthetic:
    def test_deterministic(self):
        assert generate_synthetic(10, 5, 2, 4, seed=7) == generate_synthetic(10, 5, 2, 4, seed=7)

    def test_seed_matters(self):
        assert generate_synthetic(50, 20, 2, 5, seed=1) != generate_synthetic(50, 20, 2, 5, seed=2)

    @pytest.mark.parametrize("seed", range(10))
    def test_every_node_covered(self, seed):
        hg = generate_synthetic(40, 6, 2, 3, seed=seed)

        assert hg.n == 40
        assert hg.m == 6
        assert build_incidence(hg).node_degrees.min() >= 1
        assert all(len(edge) >= 2 for edge in hg.edges)

    def test_sizes_without_repair(self):
        # 200 draws of size 3..5 over 20 nodes cover every node, so no edge is extended
        hg = generate_synthetic(20, 200, 3, 5, seed=0)
        sizes = np.array([len(edge) for edge in hg.edges])
        assert sizes.min() >= 3
        assert sizes.max() <= 5

    def test_repeated_member_sets_are_kept(self):
        # 4 nodes give only six distinct pairs, so 30 pair draws must repeat some
        hg = generate_synthetic(4, 30, 2, 2, seed=0)

        assert hg.m == 30
        assert len(set(hg.edges)) < hg.m
        np.testing.assert_array_equal(build_incidence(hg).node_degrees.sum(), 60)

    @pytest.mark.parametrize(
        "n, m, size_min, size_max",
        [(10, 0, 2, 3), (10, 5, 1, 3), (10, 5, 4, 3), (10, 5, 2, 11)],
    )
    def test_invalid_bounds(self, n, m, size_min, size_max):
        with pytest.raises(ValidationError):
            generate_synthetic(n, m, size_min, size_max, seed=0)
