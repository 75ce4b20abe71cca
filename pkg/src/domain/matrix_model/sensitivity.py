"""
Linear map between potential parameters and matrix-model parameters.

Changing ``V_n`` essentially only moves ``eps_n`` and changing ``Gamma_n``
essentially only moves ``gamma_n``, so the map is kept diagonal.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from src.domain.grid_solver import DEFAULT_TOLERANCE, Grid
from src.domain.potential import MultiWellPotential

from .construction import assemble, build_basis, effective_model, orthogonalize
from .models import EffectiveModel

DEFAULT_SENSITIVITY_STEP = 1e-3


@dataclass(frozen=True, eq=False)
class Sensitivity:
    """Diagonal derivatives ``d eps_n / d V_n`` and ``d gamma_n / d Gamma_n``."""

    d_epsilon_d_depth: np.ndarray
    d_gamma_d_gain_loss: np.ndarray
    model: EffectiveModel

    def depth_increment(self, delta_epsilon: np.ndarray) -> np.ndarray:
        return np.asarray(delta_epsilon, dtype=float) / self.d_epsilon_d_depth

    def gain_loss_increment(self, delta_gamma: np.ndarray) -> np.ndarray:
        return np.asarray(delta_gamma, dtype=float) / self.d_gamma_d_gain_loss


def sensitivities(
    potential: MultiWellPotential,
    grid: Grid,
    step: float = DEFAULT_SENSITIVITY_STEP,
    tol: float = DEFAULT_TOLERANCE,
    *,
    include_depths: bool = True,
) -> Sensitivity:
    """Centered finite differences around ``potential``.

    Depth changes alter the basis and require new single-well solves; the
    gain-loss terms do not enter the basis, so those derivatives reuse it.
    With ``include_depths=False`` the depth derivatives are left as NaN.
    """
    if step <= 0.0:
        raise ValueError(f"step must be > 0, got {step}")

    basis = build_basis(potential, grid, tol)
    model = orthogonalize(assemble(basis, potential))
    n_wells = potential.n_wells
    d_epsilon = np.full(n_wells, np.nan)
    d_gamma = np.empty(n_wells)
    for index in range(n_wells):
        n = index + 1
        well = potential.well(n)

        if include_depths:
            upper = effective_model(potential.with_well(n, depth=well.depth + step), grid, tol)
            lower = effective_model(potential.with_well(n, depth=well.depth - step), grid, tol)
            d_epsilon[index] = (upper.epsilon[index] - lower.epsilon[index]) / (2.0 * step)

        upper = orthogonalize(assemble(basis, potential.with_well(n, gain_loss=well.gain_loss + step)))
        lower = orthogonalize(assemble(basis, potential.with_well(n, gain_loss=well.gain_loss - step)))
        d_gamma[index] = (upper.gamma[index] - lower.gamma[index]) / (2.0 * step)

    return Sensitivity(d_epsilon, d_gamma, model)
