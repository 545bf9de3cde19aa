import numpy as np
import pytest

from sourcedet_mamba.autodiff import Tensor, gradcheck
from sourcedet_mamba.errors import DataError, ShapeError
from sourcedet_mamba.hypergraph import Hypergraph, build_incidence, build_operators, generate_synthetic
from sourcedet_mamba.models import Activation
from sourcedet_mamba.nn import HGNNLayer, Linear, MLPHead, Module, activation_fn, edge_weight_head, hgnn_forward


@pytest.fixture
def rng() -> np.random.Generator:
    return np.random.default_rng(0)


def _propagation(hg: Hypergraph):
    return build_operators(build_incidence(hg)).hgnn_propagation


class TestActivationFn:
    @pytest.mark.parametrize(
        "activation, expected",
        [("relu", [0.0, 2.0]), ("tanh", [np.tanh(-1.0), np.tanh(2.0)]), ("identity", [-1.0, 2.0])],
    )
    def test_values(self, activation, expected):
        out = activation_fn(Activation(activation))(Tensor([-1.0, 2.0]))
        np.testing.assert_allclose(out.data, expected)

    def test_softplus(self):
        assert activation_fn(Activation.SOFTPLUS)(Tensor(0.0)).item() == pytest.approx(np.log(2.0))


class TestLinear:
    def test_shapes_and_zero_bias(self, rng):
        layer = Linear(3, 2, rng)

        assert layer.weight.shape == (3, 2)
        np.testing.assert_array_equal(layer.bias.data, [0.0, 0.0])
        assert layer(Tensor(np.ones((5, 3)))).shape == (5, 2)

    def test_without_bias(self, rng):
        layer = Linear(3, 2, rng, bias=False)
        assert [name for name, _ in layer.named_parameters()] == ["weight"]
        np.testing.assert_array_equal(layer(Tensor(np.zeros((1, 3)))).data, [[0.0, 0.0]])

    def test_glorot_bounds(self, rng):
        layer = Linear(10, 6, rng)
        assert np.abs(layer.weight.data).max() <= np.sqrt(6.0 / 16)

    def test_wrong_width(self, rng):
        with pytest.raises(ShapeError):
            Linear(3, 2, rng)(Tensor(np.ones((5, 4))))


class TestModule:
    def test_named_parameters_order(self, rng):
        head = MLPHead(4, 8, Activation.RELU, rng)
        names = [name for name, _ in head.named_parameters()]
        assert names == ["hidden.weight", "hidden.bias", "output.weight", "output.bias"]

    def test_lists_of_modules(self, rng):
        class Stack(Module):
            def __init__(self):
                self.layers = [Linear(2, 2, rng), Linear(2, 1, rng)]

        names = [name for name, _ in Stack().named_parameters()]
        assert names == ["layers.0.weight", "layers.0.bias", "layers.1.weight", "layers.1.bias"]

    def test_state_round_trip(self, rng):
        source = MLPHead(4, 8, Activation.RELU, rng)
        target = MLPHead(4, 8, Activation.RELU, np.random.default_rng(99))

        target.load_state_dict(source.state_dict())

        for (_, a), (_, b) in zip(source.named_parameters(), target.named_parameters()):
            np.testing.assert_array_equal(a.data, b.data)
            assert a.data is not b.data
        assert target.n_parameters() == 4 * 8 + 8 + 8 + 1

    def test_state_dict_is_a_copy(self, rng):
        layer = Linear(2, 2, rng)
        state = layer.state_dict()
        state["weight"][:] = 0.0
        assert np.abs(layer.weight.data).sum() > 0

    def test_missing_and_unexpected(self, rng):
        layer = Linear(2, 2, rng)
        with pytest.raises(DataError, match="missing \\['bias'\\], unexpected \\['other'\\]"):
            layer.load_state_dict({"weight": np.zeros((2, 2)), "other": np.zeros(1)})

    def test_shape_mismatch(self, rng):
        layer = Linear(2, 2, rng)
        with pytest.raises(DataError, match="'weight'"):
            layer.load_state_dict({"weight": np.zeros((3, 2)), "bias": np.zeros(2)})

    def test_zero_grad(self, rng):
        layer = Linear(2, 1, rng)
        layer(Tensor(np.ones((3, 2)))).sum().backward()
        assert layer.weight.grad is not None
        layer.zero_grad()
        assert layer.weight.grad is None

    def test_forward_is_abstract(self):
        with pytest.raises(NotImplementedError):
            Module()(Tensor(1.0))


class TestHGNNLayer:
    def test_two_node_closed_form(self, rng):
        layer = HGNNLayer(1, 1, Activation.IDENTITY, rng)
        layer.weight.data = np.eye(1)

        out = layer(Tensor([[1.0], [0.0]]), _propagation(Hypergraph(n=2, edges=[[0, 1]])))

        np.testing.assert_allclose(out.data, [[0.5], [0.5]])

    def test_zero_input(self, rng):
        layer = HGNNLayer(3, 4, Activation.SOFTPLUS, rng)
        out = hgnn_forward(layer, Tensor(np.zeros((3, 3))), _propagation(Hypergraph(n=3, edges=[[0, 1, 2]])))
        np.testing.assert_allclose(out.data, np.full((3, 4), np.log(2.0)))

    def test_isolated_node(self, rng):
        layer = HGNNLayer(2, 3, Activation.IDENTITY, rng)
        out = layer(Tensor(rng.normal(size=(3, 2))), _propagation(Hypergraph(n=3, edges=[[0, 1]])))
        np.testing.assert_array_equal(out.data[2], [0.0, 0.0, 0.0])

    def test_wrong_width(self, rng):
        layer = HGNNLayer(2, 3, Activation.RELU, rng)
        with pytest.raises(ShapeError):
            layer(Tensor(np.zeros((2, 3))), _propagation(Hypergraph(n=2, edges=[[0, 1]])))

    @pytest.mark.parametrize("seed", range(20))
    def test_gradcheck(self, seed):
        rng = np.random.default_rng(seed)
        propagation = _propagation(generate_synthetic(6, 3, 2, 3, seed=seed))
        layer = HGNNLayer(3, 2, Activation.SOFTPLUS, rng)
        x = Tensor(rng.normal(size=(6, 3)), requires_grad=True)

        result = gradcheck(lambda x, w: layer(x, propagation).sum(), [x, layer.weight])
        assert result.passed, result


class TestEdgeWeightHead:
    def test_zero_parameters_give_one_half(self, rng):
        head = MLPHead(4, 8, Activation.RELU, rng)
        for p in head.parameters():
            p.data = np.zeros_like(p.data)

        out = edge_weight_head(head, Tensor(rng.normal(size=(5, 4))))

        np.testing.assert_array_equal(out.data, np.full((5, 1), 0.5))

    def test_range(self, rng):
        head = MLPHead(4, 8, Activation.TANH, rng)
        out = edge_weight_head(head, Tensor(rng.normal(scale=3.0, size=(20, 4))))
        assert out.shape == (20, 1)
        assert ((out.data > 0) & (out.data < 1)).all()

    def test_wrong_width(self, rng):
        head = MLPHead(4, 8, Activation.RELU, rng)
        with pytest.raises(ShapeError):
            edge_weight_head(head, Tensor(np.zeros((5, 3))))

    @pytest.mark.parametrize("seed", range(20))
    def test_gradcheck(self, seed):
        rng = np.random.default_rng(seed)
        head = MLPHead(3, 4, Activation.SOFTPLUS, rng)
        h_edge = Tensor(rng.normal(size=(5, 3)), requires_grad=True)

        result = gradcheck(lambda h, *params: edge_weight_head(head, h).sum(), [h_edge, *head.parameters()])
        assert result.passed, result
