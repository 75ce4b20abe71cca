"""
Square nonlinear systems and their solutions.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Optional

import numpy as np

DEFAULT_X_TOL = 1e-10
DEFAULT_F_TOL = 1e-10
DEFAULT_MAX_EVALS = 400
DEFAULT_STEP_SCALE = 1e-6

ResidualFunction = Callable[[np.ndarray], np.ndarray]


@dataclass(frozen=True, eq=False)
class RootProblem:
    """A residual map ``R^k -> R^k`` with start point and solver limits.

    Attributes:
        residual: Pure function of the parameter vector.
        initial_guess: Start point, ``k`` reals.
        step_scale: Relative finite-difference steps; the absolute step for
            component ``i`` is ``step_scale[i] * max(1, |x_i|)``.
        max_evals: Residual evaluation budget, Jacobian columns included.
        x_tol: Relative step tolerance.
        f_tol: Residual norm accepted as a root.
        labels: Optional names of the parameters.
    """

    residual: ResidualFunction
    initial_guess: np.ndarray
    step_scale: Optional[np.ndarray] = None
    max_evals: int = DEFAULT_MAX_EVALS
    x_tol: float = DEFAULT_X_TOL
    f_tol: float = DEFAULT_F_TOL
    labels: tuple[str, ...] = field(default_factory=tuple)

    def __post_init__(self) -> None:
        guess = np.atleast_1d(np.asarray(self.initial_guess, dtype=float)).copy()
        if guess.ndim != 1 or not np.all(np.isfinite(guess)):
            raise ValueError("initial_guess must be a finite 1-D vector")
        steps = (
            np.full(guess.size, DEFAULT_STEP_SCALE)
            if self.step_scale is None
            else np.atleast_1d(np.asarray(self.step_scale, dtype=float)).copy()
        )
        if steps.shape != guess.shape or np.any(steps <= 0.0):
            raise ValueError("step_scale must be strictly positive with one entry per parameter")
        if self.max_evals < 1:
            raise ValueError(f"max_evals must be >= 1, got {self.max_evals}")
        if self.x_tol <= 0.0 or self.f_tol <= 0.0:
            raise ValueError("x_tol and f_tol must be > 0")
        if self.labels and len(self.labels) != guess.size:
            raise ValueError("one label per parameter is required")
        guess.setflags(write=False)
        steps.setflags(write=False)
        object.__setattr__(self, "initial_guess", guess)
        object.__setattr__(self, "step_scale", steps)
        object.__setattr__(self, "labels", tuple(self.labels))

    @property
    def dimension(self) -> int:
        return int(self.initial_guess.size)

    def with_initial_guess(self, guess: np.ndarray) -> "RootProblem":
        return RootProblem(
            residual=self.residual,
            initial_guess=guess,
            step_scale=self.step_scale,
            max_evals=self.max_evals,
            x_tol=self.x_tol,
            f_tol=self.f_tol,
            labels=self.labels,
        )


@dataclass(frozen=True, eq=False)
class RootResult:
    """Outcome of ``solve_hybrid``; ``failure_reason`` is None on success."""

    solution: np.ndarray
    residual_norm: float
    evaluations: int
    converged: bool
    failure_reason: Optional[str] = None

    def __post_init__(self) -> None:
        solution = np.atleast_1d(np.asarray(self.solution, dtype=float)).copy()
        solution.setflags(write=False)
        object.__setattr__(self, "solution", solution)
