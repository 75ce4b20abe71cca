"""
Root problems and spectra for either backend.

The matrix-model backend imposes the balance conditions on the spectrum
of the projected Hamiltonian ``H_eff`` when the coupling is recomputed,
and on the tridiagonal model with the diagonal of ``H_eff`` and the frozen
coupling otherwise. When only gain-loss terms are free the single-well basis
is computed once and reused for every evaluation.
"""

from __future__ import annotations

from typing import Sequence

import numpy as np

from src.domain.errors import GainLossError, ResidualEvaluationError
from src.domain.grid_solver import Grid, solve_lowest
from src.domain.matrix_model import (
    EffectiveModel,
    assemble,
    build_basis,
    dense_eigenvalues,
    effective_model,
    TunnelingMode,
    orthogonalize,
    tight_binding_matrix,
)
from src.domain.potential import (
    MultiWellPotential,
    ParameterKind,
    ParameterSelector,
    apply_values,
    get_values,
)
from src.domain.rootfind import (
    RootProblem,
    double_well_residual,
    multi_well_residual,
    symmetric_balance_residual,
)

from .models import Backend, SolverOptions


def build_problem(
    potential: MultiWellPotential,
    solved: Sequence[ParameterSelector],
    grid: Grid,
    backend: Backend,
    options: SolverOptions,
) -> RootProblem:
    """Balance problem for ``solved`` at ``potential``.

    One free parameter balances the ground state (``Im mu_1 = 0``); ``k``
    free parameters balance the lowest ``k`` states through the symmetric
    functions of their energies.
    """
    solved = tuple(solved)
    if Backend(backend) is Backend.GRID:
        root_options = options.root_options()
        if len(solved) == 1:
            return double_well_residual(solved[0], potential, grid, **root_options)
        return multi_well_residual(potential, grid, solved, states=len(solved), **root_options)
    return _model_problem(potential, solved, grid, options)


def model_of(potential: MultiWellPotential, grid: Grid, options: SolverOptions) -> EffectiveModel:
    return effective_model(potential, grid, options.tolerance)


def model_hamiltonian(model: EffectiveModel, options: SolverOptions) -> np.ndarray:
    """Matrix whose spectrum stands in for the lowest continuous energies.

    RECOMPUTED keeps every element of ``H_eff``, including unequal and
    complex couplings; FROZEN is the tridiagonal model with the frozen ``J``.
    """
    if options.tunneling_mode is TunnelingMode.RECOMPUTED or model.j is None:
        return np.array(model.h_eff)
    return tight_binding_matrix(model.epsilon, model.gamma, options.frozen_tunneling)


def lowest_energies(
    potential: MultiWellPotential,
    grid: Grid,
    states: int,
    backend: Backend,
    options: SolverOptions,
) -> np.ndarray:
    """The ``states`` lowest energies on the chosen backend."""
    if Backend(backend) is Backend.GRID:
        return solve_lowest(
            potential, grid, states, options.tolerance, max_iterations=options.max_iterations
        ).energies
    model = model_of(potential, grid, options)
    return dense_eigenvalues(model_hamiltonian(model, options))[:states]


def model_gain_losses(potential: MultiWellPotential, grid: Grid, options: SolverOptions) -> dict[str, float]:
    """Matrix-model quantities reported alongside solved points."""
    model = model_of(potential, grid, options)
    derived = {f"epsilon_{n + 1}": float(e) for n, e in enumerate(model.epsilon)}
    derived.update({f"gamma_{n + 1}": float(g) for n, g in enumerate(model.gamma)})
    j = model.tunneling(options.tunneling_mode, options.frozen_tunneling)
    if j is not None:
        derived["tunneling"] = float(j)
    return derived


def _model_problem(
    potential: MultiWellPotential,
    solved: tuple[ParameterSelector, ...],
    grid: Grid,
    options: SolverOptions,
) -> RootProblem:
    count = len(solved)
    basis = None
    if all(selector.kind is ParameterKind.GAIN_LOSS for selector in solved):
        basis = build_basis(potential, grid, options.tolerance)

    def residual(x: np.ndarray) -> np.ndarray:
        trial = apply_values(potential, solved, x)
        try:
            model = (
                orthogonalize(assemble(basis, trial))
                if basis is not None
                else effective_model(trial, grid, options.tolerance)
            )
        except GainLossError as exc:
            raise ResidualEvaluationError(f"matrix model unavailable: {exc}", cause=exc) from exc
        energies = dense_eigenvalues(model_hamiltonian(model, options))
        if count == 1:
            return np.array([energies[0].imag])
        return symmetric_balance_residual(energies[:count])

    return RootProblem(
        residual=residual,
        initial_guess=get_values(potential, solved),
        step_scale=np.full(count, options.step_scale),
        max_evals=options.max_evals,
        x_tol=options.x_tol,
        f_tol=options.f_tol,
        labels=tuple(selector.label for selector in solved),
    )
