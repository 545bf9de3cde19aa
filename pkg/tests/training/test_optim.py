import numpy as np
import pytest

from sourcedet_mamba.autodiff import Parameter
from sourcedet_mamba.training import Adam


class TestAdam:
    def test_first_step_moves_by_learning_rate(self):
        w = Parameter([1.0, -2.0, 0.5])
        optimizer = Adam([w], lr=0.01)
        w.grad = np.array([4.0, -0.3, 0.0])

        optimizer.step()

        np.testing.assert_allclose(w.data, [0.99, -1.99, 0.5], atol=1e-8)
        assert optimizer.t == 1

    def test_replaces_data(self):
        w = Parameter([1.0])
        before = w.data
        optimizer = Adam([w], lr=0.1)
        w.grad = np.array([1.0])

        optimizer.step()

        assert before[0] == 1.0
        assert w.data is not before

    def test_parameters_without_gradient_are_skipped(self):
        a, b = Parameter([1.0]), Parameter([2.0])
        optimizer = Adam([a, b], lr=0.1)
        a.grad = np.array([1.0])

        optimizer.step()

        assert b.data[0] == 2.0
        assert a.data[0] == pytest.approx(0.9)

    def test_zero_grad(self):
        w = Parameter([1.0])
        w.grad = np.array([1.0])
        Adam([w]).zero_grad()
        assert w.grad is None

    def test_minimises_quadratic(self):
        w = Parameter([0.0])
        optimizer = Adam([w], lr=0.05)
        for _ in range(2000):
            optimizer.zero_grad()
            ((w - 3.0) * (w - 3.0)).sum().backward()
            optimizer.step()
        assert w.data[0] == pytest.approx(3.0, abs=0.05)
