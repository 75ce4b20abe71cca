"""
Powell hybrid root finding through MINPACK (``scipy.optimize.root``, ``method="hybr"``).

The dogleg trust-region iteration, its rank-one Jacobian updates and the
Jacobian refresh after stalled progress are MINPACK's. This module
supplies the forward-difference Jacobian with per-parameter steps, keeps
an evaluation budget across residual and Jacobian calls, and turns
failing or non-finite residual evaluations into a large residual so the
trust region shrinks instead of the solve aborting.
"""

from __future__ import annotations

import logging

import numpy as np
from scipy.optimize import root

from src.domain.errors import ResidualEvaluationError

from .models import RootProblem, RootResult

logger = logging.getLogger("gainloss.rootfind")

_PENALTY = 1e6
_CONVERGED_STATUS = 1
_STATUS_REASONS = {
    2: "max_evals",
    3: "tolerance too small for further progress",
    4: "singular Jacobian, no progress",
    5: "trust region collapse, no progress",
}


class _BudgetExhausted(Exception):
    pass


class _Evaluator:
    """Counting, caching residual wrapper shared by function and Jacobian."""

    def __init__(self, problem: RootProblem) -> None:
        self._problem = problem
        self.evaluations = 0
        self.best_x = problem.initial_guess.copy()
        self.best_norm = np.inf
        self._last_x: np.ndarray | None = None
        self._last_value: np.ndarray | None = None

    def __call__(self, x: np.ndarray) -> np.ndarray:
        x = np.asarray(x, dtype=float)
        if self._last_x is not None and np.array_equal(x, self._last_x):
            return self._last_value.copy()
        if self.evaluations >= self._problem.max_evals:
            raise _BudgetExhausted()
        self.evaluations += 1
        value = self._evaluate(x)
        norm = float(np.linalg.norm(value))
        if norm < self.best_norm:
            self.best_norm, self.best_x = norm, x.copy()
        self._last_x, self._last_value = x.copy(), value
        return value.copy()

    def _evaluate(self, x: np.ndarray) -> np.ndarray:
        size = self._problem.dimension
        try:
            value = np.atleast_1d(np.asarray(self._problem.residual(x.copy()), dtype=float))
        except ResidualEvaluationError as exc:
            logger.debug("Residual evaluation failed", extra={"x": x.tolist(), "error": str(exc)})
            return np.full(size, _PENALTY)
        if value.shape != (size,):
            raise ValueError(f"residual returned shape {value.shape}, expected ({size},)")
        if not np.all(np.isfinite(value)):
            return np.full(size, _PENALTY)
        return value

    def jacobian(self, x: np.ndarray) -> np.ndarray:
        x = np.asarray(x, dtype=float)
        base = self(x)
        steps = self._problem.step_scale * np.maximum(1.0, np.abs(x))
        columns = []
        for index, step in enumerate(steps):
            shifted = x.copy()
            shifted[index] += step
            columns.append((self(shifted) - base) / step)
        return np.column_stack(columns)


def solve_hybrid(problem: RootProblem) -> RootResult:
    """Solve ``problem.residual(x) = 0`` starting from ``problem.initial_guess``.

    Never raises for numerical trouble. A root is reported as converged only
    when MINPACK stopped because its last step fell below ``x_tol`` relative
    to ``|x|`` and the residual norm there is at most ``f_tol``. A stall
    (singular Jacobian or collapsed trust region) is never certified, however
    small the residual it stopped at.
    """
    evaluator = _Evaluator(problem)
    initial = evaluator(problem.initial_guess)
    if np.all(initial == _PENALTY):
        return _result(
            evaluator, problem.initial_guess, float(np.linalg.norm(initial)),
            "residual not evaluable at initial guess",
        )

    try:
        solution = root(
            evaluator,
            problem.initial_guess.copy(),
            jac=evaluator.jacobian,
            method="hybr",
            options={"xtol": problem.x_tol, "maxfev": problem.max_evals, "factor": 1.0},
        )
    except _BudgetExhausted:
        return _result(evaluator, evaluator.best_x, evaluator.best_norm, "max_evals")

    x = np.asarray(solution.x, dtype=float)
    norm = float(np.linalg.norm(solution.fun))
    if evaluator.best_norm < norm:
        x, norm = evaluator.best_x, evaluator.best_norm

    if solution.status == _CONVERGED_STATUS:
        if norm <= problem.f_tol:
            return _result(evaluator, x, norm, None)
        return _result(evaluator, x, norm, "step tolerance reached with residual above f_tol")
    reason = _STATUS_REASONS.get(solution.status, str(solution.message))
    return _result(evaluator, x, norm, reason)


def _result(evaluator: _Evaluator, x: np.ndarray, norm: float, reason: str | None) -> RootResult:
    result = RootResult(
        solution=x,
        residual_norm=norm,
        evaluations=evaluator.evaluations,
        converged=reason is None,
        failure_reason=reason,
    )
    logger.debug(
        "Root search finished",
        extra={
            "evaluations": result.evaluations,
            "residualNorm": result.residual_norm,
            "converged": result.converged,
            "failureReason": result.failure_reason,
        },
    )
    return result
