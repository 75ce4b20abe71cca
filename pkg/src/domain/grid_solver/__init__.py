"""
Finite-difference eigensolver for ``H = p^2 + V(x)`` with complex ``V``.

Public API:
    - Grid, TridiagonalOperator, EigenPair, Spectrum: value types.
    - discretize(): tridiagonal operator of the Hamiltonian on a grid.
    - solve_lowest(): lowest-m eigenpairs by shifted inverse iteration.
    - balance_check(): both sides of the stationary balance identity.
    - continuum_threshold(): energy separating bound from continuum states.
"""

from .balance import balance_check
from .discretization import continuum_threshold, discretize
from .eigensolver import DEFAULT_MAX_ITERATIONS, DEFAULT_TOLERANCE, DEGENERACY_THRESHOLD, solve_lowest
from .models import EigenPair, Grid, Spectrum, TridiagonalOperator

__all__ = [
    "Grid",
    "TridiagonalOperator",
    "EigenPair",
    "Spectrum",
    "discretize",
    "continuum_threshold",
    "solve_lowest",
    "balance_check",
    "DEFAULT_TOLERANCE",
    "DEFAULT_MAX_ITERATIONS",
    "DEGENERACY_THRESHOLD",
]
