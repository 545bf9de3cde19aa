import numpy as np
import pytest

from sourcedet_mamba.autodiff import Tensor, gradcheck
from sourcedet_mamba.errors import ContractError, ShapeError
from sourcedet_mamba.hypergraph import build_incidence, build_operators, generate_synthetic
from sourcedet_mamba.models import Activation, Selection
from sourcedet_mamba.ssm import SSMBlock, inverse_softplus, selective_params
from sourcedet_mamba.ssm.block import DT_MAX, DT_MIN


def _block(rng: np.random.Generator, **kwargs) -> SSMBlock:
    return SSMBlock(channels=3, d_state=4, edge_hidden=5, activation=Activation.RELU, rng=rng, **kwargs)


@pytest.fixture
def rng() -> np.random.Generator:
    return np.random.default_rng(0)


class TestInverseSoftplus:
    def test_round_trip(self):
        values = np.array([1e-3, 0.05, 1.0, 7.5])
        np.testing.assert_allclose(np.logaddexp(0.0, inverse_softplus(values)), values, rtol=1e-12)


class TestSSMBlock:
    def test_initial_state_matrix(self, rng):
        np.testing.assert_allclose(_block(rng).a().data, [-1.0, -2.0, -3.0, -4.0])

    def test_initial_steps_in_range(self, rng):
        block = _block(rng)
        steps = np.logaddexp(0.0, block.w_delta.bias.data)
        assert ((steps >= DT_MIN * (1 - 1e-12)) & (steps <= DT_MAX * (1 + 1e-12))).all()

    def test_parameter_sets(self, rng):
        names = {name for name, _ in _block(rng).named_parameters()}
        assert {"a_log", "d_skip", "w_b.weight", "w_c.weight", "w_delta.weight", "w_delta.bias"} <= names
        assert any(name.startswith("edge_head.") for name in names)

    def test_time_invariant_parameters(self, rng):
        names = {name for name, _ in _block(rng, selective=False, graph_coupling=False).named_parameters()}
        assert names == {"a_log", "d_skip", "b", "c", "dt"}

    @pytest.mark.parametrize("coupling, weights", [(False, True), (True, False)])
    def test_no_edge_head(self, rng, coupling, weights):
        assert _block(rng, graph_coupling=coupling, edge_weights=weights).edge_head is None


class TestSelectiveParams:
    def test_zero_input_and_bias(self, rng):
        block = _block(rng)
        block.w_delta.bias.data = np.zeros(3)

        b, c, delta = selective_params(block, Tensor(np.zeros((2, 3))))

        np.testing.assert_array_equal(b.data, np.zeros((2, 4)))
        np.testing.assert_array_equal(c.data, np.zeros((2, 4)))
        np.testing.assert_allclose(delta.data, np.full((2, 3), np.log(2.0)))

    def test_shapes_follow_input(self, rng):
        b, c, delta = selective_params(_block(rng), Tensor(rng.normal(size=(7, 3))))
        assert (b.shape, c.shape, delta.shape) == ((7, 4), (7, 4), (7, 3))
        assert (delta.data > 0).all()

    def test_time_invariant_rows_agree(self, rng):
        block = _block(rng, selective=False, graph_coupling=False)
        b, c, delta = selective_params(block, Tensor(rng.normal(size=(5, 3))))
        for tensor in (b, c, delta):
            np.testing.assert_array_equal(tensor.data, np.broadcast_to(tensor.data[0], tensor.shape))

    def test_graph_selection_is_per_copy(self, rng):
        block = _block(rng, selection=Selection.GRAPH)
        operators = build_operators(build_incidence(generate_synthetic(4, 2, 2, 3, seed=1)), copies=2)

        b, _, delta = selective_params(block, Tensor(rng.normal(size=(8, 3))), operators)

        for rows in (slice(0, 4), slice(4, 8)):
            np.testing.assert_allclose(b.data[rows], np.broadcast_to(b.data[rows][0], (4, 4)))
            np.testing.assert_allclose(delta.data[rows], np.broadcast_to(delta.data[rows][0], (4, 3)))
        assert not np.allclose(b.data[0], b.data[4])

    def test_graph_selection_needs_operators(self, rng):
        with pytest.raises(ContractError):
            selective_params(_block(rng, selection=Selection.GRAPH), Tensor(np.zeros((2, 3))))

    def test_wrong_width(self, rng):
        with pytest.raises(ShapeError):
            selective_params(_block(rng), Tensor(np.zeros((2, 4))))

    @pytest.mark.parametrize("seed", range(20))
    def test_gradcheck(self, seed):
        rng = np.random.default_rng(seed)
        block = _block(rng)
        x = Tensor(rng.normal(size=(4, 3)), requires_grad=True)

        def f(x, *params):
            b, c, delta = selective_params(block, x)
            return (b * c).sum() + delta.sum()

        result = gradcheck(f, [x, block.w_b.weight, block.w_c.weight, block.w_delta.weight, block.w_delta.bias])
        assert result.passed, result
