import numpy as np
import pytest

from sourcedet_mamba.autodiff import Tensor, gradcheck
from sourcedet_mamba.autodiff import ops as F
from sourcedet_mamba.errors import ContractError


@pytest.fixture
def weight() -> Tensor:
    return Tensor(np.random.default_rng(4).normal(size=(4, 3)), requires_grad=True)


@pytest.fixture
def column() -> Tensor:
    return Tensor(np.random.default_rng(5).normal(size=(3, 1)))


class TestGradcheck:
    def test_passes_on_sigmoid_layer(self, weight, column):
        result = gradcheck(lambda w: F.sigmoid(w @ column).sum(), [weight])

        assert result.passed
        assert result.max_rel_error <= 1e-4

    def test_constant_function(self, weight):
        result = gradcheck(lambda w: Tensor(3.0), [weight])

        assert result.passed
        assert result.max_rel_error == 0.0
        assert result.worst is None

    def test_corrupted_gradient_fails(self, weight, column):
        f = lambda w: F.sigmoid(w @ column).sum()  # noqa: E731
        out = f(weight)
        out.backward()
        doubled = [2.0 * weight.grad]

        result = gradcheck(f, [weight], analytic=doubled)

        assert not result.passed
        assert result.max_rel_error == pytest.approx(0.5, rel=1e-3)
        assert result.worst[0] == 0

    def test_inputs_must_require_grad(self, column):
        with pytest.raises(ContractError):
            gradcheck(lambda c: c.sum(), [column])

    def test_non_scalar_function(self, weight):
        with pytest.raises(ContractError):
            gradcheck(lambda w: w * 2, [weight])

    def test_inputs_restored(self, weight, column):
        before = weight.data.copy()
        gradcheck(lambda w: F.tanh(w @ column).sum(), [weight])
        np.testing.assert_array_equal(weight.data, before)
