"""Armijo descent behavior on toy objectives."""

import numpy as np
import pytest

from sentimen.errors import NonFiniteError
from sentimen.optim import minimize


def quadratic(center, scale=1.0):
    def value_and_grad(x):
        d = x - center
        return scale * float(d @ d), 2.0 * scale * d
    return value_and_grad


def test_minimize_converges_on_quadratic():
    center = np.array([3.0, -2.0, 0.5])
    res = minimize(quadratic(center), np.zeros(3), max_iter=500, tol=1e-10)
    assert res.converged
    assert res.params == pytest.approx(center, abs=1e-9)


def test_minimize_zero_iterations_when_tol_exceeds_gradient():
    res = minimize(quadratic(np.ones(2)), np.zeros(2), max_iter=100, tol=1e9)
    assert res.n_iter == 0
    assert res.converged
    assert res.params.tolist() == [0.0, 0.0]


def test_minimize_loss_history_non_increasing():
    res = minimize(quadratic(np.array([10.0, 10.0]), scale=7.0), np.zeros(2), max_iter=200, tol=1e-12)
    hist = res.loss_history
    assert all(b <= a for a, b in zip(hist, hist[1:]))
    assert hist[-1] <= hist[0]


def test_minimize_respects_max_iter():
    # Ill-conditioned bowl: plain gradient descent needs far more than 3 steps.
    def value_and_grad(x):
        return float(x[0] ** 2 + 1000.0 * x[1] ** 2), np.array([2.0 * x[0], 2000.0 * x[1]])

    res = minimize(value_and_grad, np.array([5.0, 5.0]), max_iter=3, tol=1e-14)
    assert res.n_iter == 3
    assert not res.converged


def test_minimize_rejects_non_finite_start():
    def bad(x):
        return np.inf, np.zeros_like(x)
    with pytest.raises(NonFiniteError):
        minimize(bad, np.zeros(2))
