"""
Start points for the balance root searches.

The matrix model is solved first, where the balance conditions have closed
forms or cheap dense spectra, and the resulting changes of on-site energies
and gain-loss terms are mapped back to well depths and gain-loss
parameters through the diagonal sensitivity map.
"""

from __future__ import annotations

import logging
from typing import Optional, Sequence

import numpy as np

from src.domain.errors import ErrorCategory, GainLossError, InfeasibilityReason, InfeasibleSeedError
from src.domain.grid_solver import Grid, solve_lowest
from src.domain.matrix_model import (
    sensitivities,
    tight_binding_balance,
    three_well_admissible,
    two_well_gamma,
    two_well_ground_epsilon,
)
from src.domain.potential import (
    MultiWellPotential,
    ParameterKind,
    ParameterSelector,
    depth,
    gain_loss,
    get_values,
    real_part,
)
from src.domain.rootfind import RootProblem, RootResult, solve_hybrid

from .models import Backend, SolverOptions
from .problems import build_problem, model_of

logger = logging.getLogger("gainloss.continuation")


def seed_from_matrix_model(
    potential: MultiWellPotential,
    grid: Grid,
    free: Optional[Sequence[ParameterSelector]] = None,
    options: SolverOptions = SolverOptions(),
) -> np.ndarray:
    """Matrix-model estimate of the balanced values of ``free``.

    Two wells: one free parameter, ``Gamma_2`` by default, or a depth.
    The two-well criterion is solved for the missing gain-loss term or
    detuning. Three wells: the three gain-loss parameters; the closed-form
    balance seeds a hybrid solve on the model itself.

    Raises:
        InfeasibleSeedError: If the model admits no balanced configuration.
    """
    n_wells = potential.n_wells
    if n_wells == 2:
        selector = tuple(free)[0] if free is not None else gain_loss(2)
        if free is not None and len(tuple(free)) != 1:
            raise ValueError("a double well is seeded for exactly one free parameter")
        return np.array([_seed_two_wells(potential, grid, selector, options)])
    if n_wells == 3:
        selectors = tuple(free) if free is not None else tuple(gain_loss(n) for n in (1, 2, 3))
        if sorted(selectors, key=lambda s: s.well) != [gain_loss(n) for n in (1, 2, 3)]:
            raise ValueError("a triple well is seeded for its three gain-loss parameters")
        seed = _seed_three_wells(potential, grid, options)
        return np.array([seed[selector.well - 1] for selector in selectors])
    raise ValueError(f"matrix-model seeding supports 2 or 3 wells, got {n_wells}")


def calibrate_depth(
    potential: MultiWellPotential,
    grid: Grid,
    well: int,
    target_energy: float,
    state_index: int = 1,
    options: SolverOptions = SolverOptions(),
) -> tuple[MultiWellPotential, RootResult]:
    """Adjust the depth of ``well`` so that state ``state_index`` of the
    real potential has energy ``target_energy``.

    Returns the input potential, gain-loss terms untouched, with the new depth.

    Raises:
        GainLossError: If the depth search does not converge.
    """
    if state_index < 1:
        raise ValueError("state_index is 1-based")
    selector = depth(well)
    hermitian = real_part(potential)

    def residual(x: np.ndarray) -> np.ndarray:
        spectrum = solve_lowest(
            selector.set(hermitian, float(x[0])), grid, state_index, options.tolerance,
            max_iterations=options.max_iterations,
        )
        return np.array([spectrum.energies[state_index - 1].real - target_energy])

    problem = RootProblem(
        residual=residual,
        initial_guess=np.array([selector.get(potential)]),
        step_scale=np.array([options.step_scale]),
        max_evals=options.max_evals,
        x_tol=options.x_tol,
        f_tol=options.f_tol,
        labels=(selector.label,),
    )
    result = solve_hybrid(problem)
    if not result.converged:
        raise GainLossError(
            f"depth calibration of well {well} did not converge: {result.failure_reason}",
            ErrorCategory.CONVERGENCE,
            {"well": well, "targetEnergy": target_energy},
        )
    logger.info(
        "Depth calibrated",
        extra={"well": well, "depth": float(result.solution[0]), "targetEnergy": target_energy},
    )
    return selector.set(potential, float(result.solution[0])), result


def _seed_two_wells(
    potential: MultiWellPotential, grid: Grid, selector: ParameterSelector, options: SolverOptions
) -> float:
    if selector.kind not in (ParameterKind.GAIN_LOSS, ParameterKind.DEPTH):
        raise ValueError(f"cannot seed {selector.label} from the matrix model")
    include_depths = selector.kind is ParameterKind.DEPTH
    sensitivity = sensitivities(potential, grid, tol=options.tolerance, include_depths=include_depths)
    model = sensitivity.model
    j = model.tunneling(options.tunneling_mode, options.frozen_tunneling)
    epsilon, gamma = model.epsilon, model.gamma
    index = selector.well - 1
    other = 1 - index

    if selector.kind is ParameterKind.GAIN_LOSS:
        target = two_well_gamma(epsilon[index] - epsilon[other], gamma[other], j, ground_state=True)
        if target is None:
            raise InfeasibleSeedError(
                InfeasibilityReason.SIGN,
                f"no {selector.label} gives a real ground state: gain and loss must have "
                f"opposite signs with |gamma_1 gamma_2| <= J^2 (gamma={gamma.tolist()}, J={j:.6g})",
            )
        increment = (target - gamma[index]) / sensitivity.d_gamma_d_gain_loss[index]
    else:
        detuning = two_well_ground_epsilon(gamma[0], gamma[1], j)
        if detuning is None:
            raise InfeasibleSeedError(
                InfeasibilityReason.SIGN,
                f"gain-loss terms {gamma.tolist()} admit no real eigenvalue: they must have "
                f"opposite signs with |gamma_1 gamma_2| <= J^2 (J={j:.6g})",
            )
        # detuning is eps_2 - eps_1; well 1 moves opposite to well 2
        change = detuning - (epsilon[1] - epsilon[0])
        change = change if index == 1 else -change
        increment = change / sensitivity.d_epsilon_d_depth[index]

    value = selector.get(potential) + float(increment)
    logger.debug("Two-well seed", extra={"parameter": selector.label, "seed": value})
    return value


def _seed_three_wells(potential: MultiWellPotential, grid: Grid, options: SolverOptions) -> np.ndarray:
    sensitivity = sensitivities(potential, grid, tol=options.tolerance, include_depths=False)
    model = sensitivity.model
    j = model.tunneling(options.tunneling_mode, options.frozen_tunneling)
    target = tight_binding_balance(model.epsilon, j)

    selectors = tuple(gain_loss(n) for n in (1, 2, 3))
    current = get_values(potential, selectors)
    closed_form = current + sensitivity.gain_loss_increment(target - model.gamma)

    problem = build_problem(potential, selectors, grid, Backend.MATRIX_MODEL, options)
    result = solve_hybrid(problem.with_initial_guess(closed_form))
    if not result.converged:
        logger.warning(
            "Matrix-model balance did not converge, using the closed-form seed",
            extra={"failureReason": result.failure_reason, "seed": closed_form.tolist()},
        )
        return closed_form

    solution = np.asarray(result.solution, dtype=float)
    if np.linalg.norm(solution) < options.collapse_tolerance:
        raise InfeasibleSeedError(
            InfeasibilityReason.IMAGINARY,
            "matrix-model balance collapsed onto vanishing gain-loss terms",
        )
    balanced = model_of(potential.with_gain_losses(solution), grid, options)
    if not three_well_admissible(balanced.epsilon, balanced.gamma):
        raise InfeasibleSeedError(
            InfeasibilityReason.ORDERING,
            f"balanced model violates the ordering criterion "
            f"(epsilon={balanced.epsilon.tolist()}, gamma={balanced.gamma.tolist()})",
        )
    logger.debug("Three-well seed", extra={"seed": solution.tolist(), "closedForm": closed_form.tolist()})
    return solution
