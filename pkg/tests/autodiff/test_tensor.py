import numpy as np
import pytest
import scipy.sparse as sp

from sourcedet_mamba.autodiff import Parameter, Tensor, gradcheck, no_grad
from sourcedet_mamba.autodiff import ops as F
from sourcedet_mamba.autodiff.tensor import is_grad_enabled
from sourcedet_mamba.errors import ContractError, NumericError, ShapeError


def _leaf(rng: np.random.Generator, *shape: int, low: float = -1.0, high: float = 1.0) -> Tensor:
    return Tensor(rng.uniform(low, high, size=shape), requires_grad=True)


class TestForward:
    def test_matmul_identity(self):
        a = Tensor([[1.0, 2.0], [3.0, 4.0]])
        np.testing.assert_array_equal((a @ Tensor(np.eye(2))).data, a.data)

    def test_sigmoid_at_zero(self):
        assert F.sigmoid(Tensor(0.0)).item() == 0.5

    def test_softplus_at_zero(self):
        assert F.softplus(Tensor(0.0)).item() == pytest.approx(np.log(2.0), abs=1e-12)

    def test_softplus_large_input_is_finite(self):
        np.testing.assert_allclose(F.softplus(Tensor([800.0, -800.0])).data, [800.0, 0.0])

    def test_exprel_removable_singularity(self):
        np.testing.assert_allclose(F.exprel(Tensor([0.0, 1e-12])).data, [1.0, 1.0], atol=1e-12)
        np.testing.assert_allclose(F.exprel(Tensor(-0.1)).item(), (np.exp(-0.1) - 1) / -0.1, rtol=1e-14)

    def test_operators_with_constants(self):
        x = Tensor([1.0, 2.0])
        np.testing.assert_array_equal((2 * x + 1).data, [3.0, 5.0])
        np.testing.assert_array_equal((1 - x).data, [0.0, -1.0])
        np.testing.assert_array_equal((-x / 2).data, [-0.5, -1.0])

    def test_row_bias(self):
        out = Tensor(np.zeros((2, 3))) + Tensor([1.0, 2.0, 3.0])
        np.testing.assert_array_equal(out.data, [[1, 2, 3], [1, 2, 3]])

    def test_leaf_repr_and_item(self):
        assert "leaf" in repr(Tensor(1.0))
        assert Parameter(np.zeros(2), name="w").name == "w"


class TestShapeErrors:
    def test_add_mismatch_names_both_shapes(self):
        with pytest.raises(ShapeError) as excinfo:
            Tensor(np.zeros((2, 3))) + Tensor(np.zeros((3, 2)))

        assert excinfo.value.left == (2, 3)
        assert excinfo.value.right == (3, 2)
        assert "(2, 3)" in str(excinfo.value)

    def test_matmul_mismatch(self):
        with pytest.raises(ShapeError):
            Tensor(np.zeros((2, 3))) @ Tensor(np.zeros((2, 3)))

    def test_mul_has_no_bias_broadcast(self):
        with pytest.raises(ShapeError):
            Tensor(np.zeros((2, 3))) * Tensor(np.zeros(3))

    def test_spmm_mismatch(self):
        with pytest.raises(ShapeError):
            F.spmm(sp.eye(3, format="csr"), Tensor(np.zeros((2, 2))))

    def test_reshape_mismatch(self):
        with pytest.raises(ShapeError):
            F.reshape(Tensor(np.zeros(6)), (4, 2))

    def test_divide_by_tensor(self):
        with pytest.raises(ContractError):
            Tensor(1.0) / Tensor(2.0)


class TestNumericErrors:
    def test_log_of_zero(self):
        with pytest.raises(NumericError) as excinfo:
            F.log(Tensor([1.0, 0.0]))
        assert excinfo.value.op == "log"

    def test_exp_overflow(self):
        with pytest.raises(NumericError, match="exp"):
            F.exp(Tensor(1000.0))


class TestBackward:
    def test_sum_gives_ones(self):
        w = Parameter(np.arange(6.0).reshape(2, 3))
        w.sum().backward()
        np.testing.assert_array_equal(w.grad, np.ones((2, 3)))

    def test_square_gives_twice(self):
        w = Parameter(np.arange(6.0).reshape(2, 3))
        (w * w).sum().backward()
        np.testing.assert_array_equal(w.grad, 2 * w.data)

    def test_reused_node_accumulates(self):
        x = Parameter([3.0])
        (x * x + x).sum().backward()
        np.testing.assert_allclose(x.grad, [7.0])

    def test_bias_gradient_sums_rows(self):
        bias = Parameter([0.0, 0.0, 0.0])
        (Tensor(np.ones((4, 3))) + bias).sum().backward()
        np.testing.assert_array_equal(bias.grad, [4.0, 4.0, 4.0])

    def test_gradients_accumulate_across_calls(self):
        x = Parameter([1.0, 2.0])
        x.sum().backward()
        x.sum().backward()
        np.testing.assert_array_equal(x.grad, [2.0, 2.0])
        x.zero_grad()
        assert x.grad is None

    def test_non_scalar(self):
        with pytest.raises(ContractError, match="scalar"):
            (Parameter([1.0, 2.0]) * 2).backward()

    def test_graph_is_consumed(self):
        loss = (Parameter([1.0]) * 2).sum()
        loss.backward()
        with pytest.raises(ContractError, match="consumed"):
            loss.backward()

    def test_constant_loss(self):
        with pytest.raises(ContractError):
            Tensor([1.0, 2.0]).sum().backward()

    def test_constants_receive_no_gradient(self):
        x = Parameter([1.0, 2.0])
        c = Tensor([3.0, 4.0])
        (x * c).sum().backward()
        assert c.grad is None
        np.testing.assert_array_equal(x.grad, [3.0, 4.0])


class TestNoGrad:
    def test_disables_recording(self):
        x = Parameter([1.0])
        with no_grad():
            y = x * 2
            assert not is_grad_enabled()
        assert is_grad_enabled()
        assert not y.requires_grad

    def test_nested(self):
        with no_grad():
            with no_grad():
                pass
            assert not is_grad_enabled()
        assert is_grad_enabled()

    def test_restored_after_exception(self):
        with pytest.raises(RuntimeError):
            with no_grad():
                raise RuntimeError("boom")
        assert is_grad_enabled()


OPERATIONS = {
    "exp": (lambda x: F.exp(x).sum(), (3, 2), (-1.0, 1.0)),
    "log": (lambda x: F.log(x).sum(), (3, 2), (0.5, 2.0)),
    "sigmoid": (lambda x: F.sigmoid(x).sum(), (3, 2), (-2.0, 2.0)),
    "softplus": (lambda x: F.softplus(x).sum(), (3, 2), (-2.0, 2.0)),
    "tanh": (lambda x: F.tanh(x).sum(), (3, 2), (-2.0, 2.0)),
    "relu": (lambda x: (F.relu(x) * F.relu(x)).sum(), (3, 2), (0.1, 1.0)),
    "clamp": (lambda x: (F.clamp(x, -2.0, 2.0) * x).sum(), (3, 2), (-1.0, 1.0)),
    "exprel": (lambda x: F.exprel(x).sum(), (4,), (-2.0, 2.0)),
    "exprel_near_zero": (lambda x: F.exprel(x).sum(), (4,), (-1e-6, 1e-6)),
    "transpose": (lambda x: (x.T @ x).sum(), (3, 2), (-1.0, 1.0)),
    "reshape": (lambda x: (F.reshape(x, (2, 3)) * F.reshape(x, (2, 3))).sum(), (3, 2), (-1.0, 1.0)),
    "sum_axis": (lambda x: F.exp(F.tensor_sum(x, axis=0)).sum(), (3, 2), (-1.0, 1.0)),
    "mean_axis": (lambda x: F.exp(F.mean(x, axis=1)).sum(), (3, 2), (-1.0, 1.0)),
    "broadcast_to": (lambda x: F.exp(F.broadcast_to(x, (4, 3, 2))).sum(), (1, 2), (-1.0, 1.0)),
    "concat": (lambda x: F.exp(F.concat([x, x * 2], axis=1)).sum(), (3, 2), (-1.0, 1.0)),
}


class TestGradients:
    @pytest.mark.parametrize("name", sorted(OPERATIONS))
    def test_elementwise_and_structural(self, name):
        f, shape, (low, high) = OPERATIONS[name]
        x = _leaf(np.random.default_rng(0), *shape, low=low, high=high)

        result = gradcheck(f, [x])
        assert result.passed, result

    @pytest.mark.parametrize("seed", range(5))
    def test_matmul_and_sub(self, seed):
        rng = np.random.default_rng(seed)
        a, b = _leaf(rng, 3, 4), _leaf(rng, 4, 2)
        assert gradcheck(lambda a, b: F.sigmoid(a @ b - 0.5).sum(), [a, b]).passed

    def test_spmm(self):
        rng = np.random.default_rng(1)
        matrix = sp.random(5, 4, density=0.5, random_state=1, format="csr")
        x = _leaf(rng, 4, 3)
        assert gradcheck(lambda x: F.tanh(F.spmm(matrix, x)).sum(), [x]).passed

    def test_exprel_derivative_branches_agree(self):
        z = np.array([-1.1e-5, -0.9e-5, 0.9e-5, 1.1e-5])
        x = Tensor(z, requires_grad=True)
        F.exprel(x).sum().backward()
        np.testing.assert_allclose(x.grad, 0.5 + z / 3.0, rtol=1e-9)
