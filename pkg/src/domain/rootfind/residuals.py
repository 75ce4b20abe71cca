"""
Balance residuals whose zeros give real or conjugate-paired spectra.

A set of ``m`` eigenvalues is closed under complex conjugation exactly
when its characteristic polynomial has real coefficients, i.e. when the
imaginary parts of the elementary symmetric polynomials
``e_1 = sum mu_i``, ``e_2 = sum_{i<j} mu_i mu_j``, ... vanish. These
functions are smooth through the merger of two real eigenvalues into a
pair and do not depend on the ordering of the states.
"""

from __future__ import annotations

from typing import Optional, Sequence

import numpy as np

from src.domain.errors import GainLossError, ResidualEvaluationError
from src.domain.grid_solver import DEFAULT_MAX_ITERATIONS, DEFAULT_TOLERANCE, Grid, solve_lowest
from src.domain.potential import MultiWellPotential, ParameterSelector, apply_values, gain_loss, get_values

from .models import DEFAULT_F_TOL, DEFAULT_MAX_EVALS, DEFAULT_STEP_SCALE, DEFAULT_X_TOL, RootProblem


def symmetric_balance_residual(energies: Sequence[complex]) -> np.ndarray:
    """``(Im e_1, ..., Im e_m)`` of the given eigenvalues.

    Identically zero for a conjugation-closed multiset.
    """
    values = np.asarray(energies, dtype=complex).ravel()
    coefficients = np.atleast_1d(np.poly(values))
    signs = (-1.0) ** np.arange(1, values.size + 1)
    return signs * np.imag(coefficients[1:])


def multi_well_residual(
    fixed: MultiWellPotential,
    grid: Grid,
    free: Optional[Sequence[ParameterSelector]] = None,
    *,
    states: Optional[int] = None,
    tol: float = DEFAULT_TOLERANCE,
    max_iterations: int = DEFAULT_MAX_ITERATIONS,
    max_evals: int = DEFAULT_MAX_EVALS,
    x_tol: float = DEFAULT_X_TOL,
    f_tol: float = DEFAULT_F_TOL,
    step_scale: float = DEFAULT_STEP_SCALE,
) -> RootProblem:
    """Symmetric-function residual of the lowest ``states`` eigenvalues.

    The free parameters default to all gain-loss terms and their number
    must equal ``states``. The start point is their value in ``fixed``.
    """
    selectors = tuple(free) if free is not None else tuple(gain_loss(n) for n in range(1, fixed.n_wells + 1))
    count = fixed.n_wells if states is None else states
    if len(selectors) != count:
        raise ValueError(f"{len(selectors)} free parameters cannot balance {count} states")

    def residual(x: np.ndarray) -> np.ndarray:
        spectrum = _solve(apply_values(fixed, selectors, x), grid, count, tol, max_iterations)
        return symmetric_balance_residual(spectrum.energies)

    return RootProblem(
        residual=residual,
        initial_guess=get_values(fixed, selectors),
        step_scale=np.full(count, step_scale),
        max_evals=max_evals,
        x_tol=x_tol,
        f_tol=f_tol,
        labels=tuple(selector.label for selector in selectors),
    )


def triple_well_residual(fixed: MultiWellPotential, grid: Grid, **options) -> RootProblem:
    """Balance of the lowest three states with ``(Gamma_1, Gamma_2, Gamma_3)`` free."""
    if fixed.n_wells != 3:
        raise ValueError(f"triple_well_residual needs 3 wells, got {fixed.n_wells}")
    return multi_well_residual(fixed, grid, states=3, **options)


def double_well_residual(
    free: ParameterSelector,
    fixed: MultiWellPotential,
    grid: Grid,
    *,
    tol: float = DEFAULT_TOLERANCE,
    max_iterations: int = DEFAULT_MAX_ITERATIONS,
    max_evals: int = DEFAULT_MAX_EVALS,
    x_tol: float = DEFAULT_X_TOL,
    f_tol: float = DEFAULT_F_TOL,
    step_scale: float = DEFAULT_STEP_SCALE,
) -> RootProblem:
    """``Im mu_1`` as a function of one free parameter (``Gamma_2`` or ``V_2``).

    Both lowest states are solved so that an ordering swap near the top of
    the window cannot replace the ground state.
    """
    if fixed.n_wells < 2:
        raise ValueError("double_well_residual needs at least 2 wells")

    def residual(x: np.ndarray) -> np.ndarray:
        spectrum = _solve(free.set(fixed, float(x[0])), grid, 2, tol, max_iterations)
        return np.array([spectrum.energies[0].imag])

    return RootProblem(
        residual=residual,
        initial_guess=np.array([free.get(fixed)]),
        step_scale=np.array([step_scale]),
        max_evals=max_evals,
        x_tol=x_tol,
        f_tol=f_tol,
        labels=(free.label,),
    )


def _solve(potential: MultiWellPotential, grid: Grid, states: int, tol: float, max_iterations: int):
    try:
        return solve_lowest(potential, grid, states, tol, max_iterations=max_iterations)
    except (GainLossError, ValueError) as exc:
        raise ResidualEvaluationError(f"eigenvalues unavailable: {exc}", cause=exc) from exc
