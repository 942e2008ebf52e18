"""Deterministic full-batch gradient descent with Armijo backtracking.

No randomness anywhere: starting point, step schedule and acceptance rule are
fixed, so a given objective always yields the same iterates.  The search stops
when the infinity norm of the gradient falls below ``tol``, when ``max_iter``
accepted steps have been taken, or when backtracking underflows (the iterate
is then at numerical precision already).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import NonFiniteError

_ARMIJO_C = 1e-4
_SHRINK = 0.5
_GROW = 2.0
_MIN_STEP = 1e-20
_MAX_STEP = 1e12


@dataclass
class MinimizeResult:
    params: np.ndarray
    loss_history: list[float]
    n_iter: int
    converged: bool


def minimize(value_and_grad, x0, *, value=None, max_iter: int = 1000, tol: float = 1e-6) -> MinimizeResult:
    """Minimize a smooth objective from ``x0``.

    Args:
        value_and_grad: callable ``x -> (loss, grad)`` over flat parameters.
        x0: starting parameter vector.
        value: optional cheaper ``x -> loss`` used inside the line search;
            defaults to ``value_and_grad(x)[0]``.
        max_iter: cap on accepted descent steps.
        tol: infinity-norm gradient threshold.

    Each accepted step satisfies the Armijo condition
    ``f(x - t g) <= f(x) - c t <g, g>`` so the loss history is strictly
    non-increasing.  Raises :class:`NonFiniteError` if the objective itself
    evaluates to a non-finite value at an accepted point.
    """
    if value is None:
        value = lambda x: value_and_grad(x)[0]

    x = np.array(x0, dtype=np.float64, copy=True)
    loss, grad = value_and_grad(x)
    if not np.isfinite(loss):
        raise NonFiniteError(f"objective is non-finite at the starting point: {loss}")
    history = [float(loss)]

    step = 1.0
    n_iter = 0
    while n_iter < max_iter:
        grad_inf = float(np.max(np.abs(grad))) if grad.size else 0.0
        if grad_inf < tol:
            return MinimizeResult(x, history, n_iter, True)

        gg = float(np.dot(grad, grad))
        t = step
        accepted = False
        while t >= _MIN_STEP:
            candidate = x - t * grad
            f_cand = float(value(candidate))
            if np.isfinite(f_cand) and f_cand <= history[-1] - _ARMIJO_C * t * gg:
                accepted = True
                break
            t *= _SHRINK
        if not accepted:
            # Step underflow: we cannot make further progress in float64.
            break

        x = candidate
        loss, grad = value_and_grad(x)
        if not np.isfinite(loss):
            raise NonFiniteError(f"objective diverged to {loss} during descent")
        history.append(float(loss))
        step = min(t * _GROW, _MAX_STEP)
        n_iter += 1

    grad_inf = float(np.max(np.abs(grad))) if grad.size else 0.0
    return MinimizeResult(x, history, n_iter, grad_inf < tol)
