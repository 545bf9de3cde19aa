import numpy as np
import pytest

from sourcedet_mamba.errors import ValidationError
from sourcedet_mamba.hypergraph import Hypergraph, build_incidence, clique_expand


@pytest.fixture
def path_hypergraph() -> Hypergraph:
    return Hypergraph(n=3, edges=[[0, 1], [1, 2]])


class TestHypergraph:
    def test_basic_initialization(self, path_hypergraph):
        assert path_hypergraph.n == 3
        assert path_hypergraph.m == 2
        assert path_hypergraph.edges == ((0, 1), (1, 2))
        assert path_hypergraph.edge_weights == (1.0, 1.0)

    def test_edges_are_sorted(self):
        hg = Hypergraph(n=4, edges=[[3, 0, 2]])
        assert hg.edges == ((0, 2, 3),)

    def test_weights_array(self):
        hg = Hypergraph(n=3, edges=[[0, 1], [1, 2]], edge_weights=[0.5, 2.0])
        np.testing.assert_array_equal(hg.weights, [0.5, 2.0])

    @pytest.mark.parametrize(
        "n, edges, weights",
        [
            (3, [[]], None),
            (3, [[0, 0, 1]], None),
            (2, [[0, 2]], None),
            (3, [[0, 1]], [1.0, 1.0]),
            (3, [[0, 1]], [0.0]),
            (3, [[0, 1]], [float("nan")]),
            (-1, [], None),
        ],
    )
    def test_invalid_input(self, n, edges, weights):
        with pytest.raises(ValidationError):
            Hypergraph(n=n, edges=edges, edge_weights=weights)

    def test_relabel(self, path_hypergraph):
        relabelled = path_hypergraph.relabel([2, 1, 0])
        assert relabelled.edges == ((1, 2), (0, 1))

    def test_frozen(self, path_hypergraph):
        with pytest.raises(AttributeError):
            path_hypergraph.n = 5


class TestBuildIncidence:
    def test_path(self, path_hypergraph):
        incidence = build_incidence(path_hypergraph)

        np.testing.assert_array_equal(incidence.node_major.toarray(), [[1, 0], [1, 1], [0, 1]])
        np.testing.assert_array_equal(incidence.node_degrees, [1, 2, 1])
        np.testing.assert_array_equal(incidence.edge_degrees, [2, 2])
        np.testing.assert_array_equal(incidence.edge_major.toarray(), incidence.node_major.toarray().T)

    def test_single_edge(self):
        incidence = build_incidence(Hypergraph(n=3, edges=[[0, 1, 2]]))
        np.testing.assert_array_equal(incidence.node_degrees, [1, 1, 1])
        np.testing.assert_array_equal(incidence.edge_degrees, [3])

    def test_isolated_node_has_degree_zero(self):
        incidence = build_incidence(Hypergraph(n=2, edges=[[0]]))
        np.testing.assert_array_equal(incidence.node_degrees, [1, 0])
        np.testing.assert_array_equal(incidence.edge_degrees, [1])

    def test_members_and_edges(self, path_hypergraph):
        incidence = build_incidence(path_hypergraph)
        np.testing.assert_array_equal(incidence.edge_members(1), [1, 2])
        np.testing.assert_array_equal(incidence.node_edges(1), [0, 1])
        assert incidence.edges() == path_hypergraph.edges

    def test_tile_is_block_diagonal(self, path_hypergraph):
        tiled = build_incidence(path_hypergraph).tile(2)

        assert (tiled.n, tiled.m) == (6, 4)
        assert tiled.edges() == ((0, 1), (1, 2), (3, 4), (4, 5))
        np.testing.assert_array_equal(tiled.node_degrees, [1, 2, 1, 1, 2, 1])

    def test_tile_once_is_identity(self, path_hypergraph):
        incidence = build_incidence(path_hypergraph)
        assert incidence.tile(1) is incidence


class TestCliqueExpand:
    def test_triangle(self):
        graph = clique_expand(Hypergraph(n=3, edges=[[0, 1, 2]]))
        np.testing.assert_array_equal(graph.adjacency.toarray(), [[0, 1, 1], [1, 0, 1], [1, 1, 0]])

    def test_path_has_no_shortcut(self, path_hypergraph):
        graph = clique_expand(path_hypergraph)
        np.testing.assert_array_equal(graph.adjacency.toarray(), [[0, 1, 0], [1, 0, 1], [0, 1, 0]])
        np.testing.assert_array_equal(graph.neighbors(1), [0, 2])

    def test_singleton_edge_adds_nothing(self):
        graph = clique_expand(Hypergraph(n=2, edges=[[0]]))
        assert graph.adjacency.nnz == 0

    def test_overlapping_edges_stay_simple(self):
        graph = clique_expand(Hypergraph(n=3, edges=[[0, 1], [0, 1, 2]]))
        assert set(np.unique(graph.adjacency.data)) == {1.0}

    def test_to_networkx_keeps_isolated_nodes(self):
        nx_graph = clique_expand(Hypergraph(n=4, edges=[[0, 1]])).to_networkx()
        assert sorted(nx_graph.nodes) == [0, 1, 2, 3]
        assert sorted(nx_graph.edges) == [(0, 1)]
