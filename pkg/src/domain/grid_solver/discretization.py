"""
Second-order finite-difference discretization of ``H = p^2 + V(x)``.

The kinetic term is ``-d^2/dx^2`` (no factor 1/2). Dirichlet boundaries
``psi(x_min) = psi(x_max) = 0`` leave the ``n_points - 2`` interior unknowns.
"""

from __future__ import annotations

import numpy as np

from src.domain.potential import MultiWellPotential, evaluate

from .models import Grid, TridiagonalOperator


def discretize(potential: MultiWellPotential, grid: Grid) -> TridiagonalOperator:
    """Return the tridiagonal operator with diagonal ``2/h^2 + V(x_j)`` and off-diagonals ``-1/h^2``."""
    inverse_h2 = 1.0 / grid.spacing**2
    diagonal = 2.0 * inverse_h2 + evaluate(potential, grid.interior)
    off_diagonal = np.full(grid.n_interior - 1, -inverse_h2)
    return TridiagonalOperator(diagonal, off_diagonal)


def continuum_threshold(potential: MultiWellPotential, grid: Grid) -> float:
    """Energy above which discrete states are box-quantized continuum states."""
    rims = evaluate(potential, np.array([grid.x_min, grid.x_max])).real
    return float(min(0.0, rims.min()))
