"""
Root finding for the balance conditions.

Public API:
    - RootProblem, RootResult: square systems and their outcome.
    - solve_hybrid(): Powell hybrid method with finite-difference Jacobians.
    - symmetric_balance_residual(): imaginary parts of the elementary
      symmetric polynomials of a list of eigenvalues.
    - double_well_residual(), triple_well_residual(), multi_well_residual():
      residual maps over the grid eigensolver.
"""

from .models import (
    DEFAULT_F_TOL,
    DEFAULT_MAX_EVALS,
    DEFAULT_STEP_SCALE,
    DEFAULT_X_TOL,
    RootProblem,
    RootResult,
)
from .residuals import (
    double_well_residual,
    multi_well_residual,
    symmetric_balance_residual,
    triple_well_residual,
)
from .solver import solve_hybrid

__all__ = [
    "RootProblem",
    "RootResult",
    "solve_hybrid",
    "symmetric_balance_residual",
    "double_well_residual",
    "triple_well_residual",
    "multi_well_residual",
    "DEFAULT_X_TOL",
    "DEFAULT_F_TOL",
    "DEFAULT_MAX_EVALS",
    "DEFAULT_STEP_SCALE",
]
