"""
Tight-binding matrix model of the multi-well potential.

Public API:
    - build_basis(), assemble(), orthogonalize(), effective_model():
      projection onto single-well ground states and symmetric orthogonalization.
    - dense_eigenvalues(), dense_eigenpairs(): spectra of small matrices.
    - two_well_epsilon(), two_well_gamma(), three_well_admissible():
      analytic conditions for balanced spectra.
    - tight_binding_matrix(), tight_binding_balance(): model Hamiltonians and
      the closed-form three-well balance.
    - approximation_residual(): error of the single-well expansion.
    - sensitivities(): diagonal map between (V, Gamma) and (eps, gamma).
"""

from .ansatz import approximation_residual
from .construction import LOCALIZATION_TOLERANCE, assemble, build_basis, effective_model, orthogonalize
from .criteria import (
    three_well_admissible,
    two_well_epsilon,
    two_well_gamma,
    two_well_ground_epsilon,
    two_well_real_eigenvalue,
)
from .dense import MAX_DENSE_SIZE, dense_eigenpairs, dense_eigenvalues
from .models import REFERENCE_TUNNELING, BasisSet, EffectiveModel, OverlapMatrices, TunnelingMode
from .sensitivity import DEFAULT_SENSITIVITY_STEP, Sensitivity, sensitivities
from .tight_binding import tight_binding_balance, tight_binding_matrix

__all__ = [
    "BasisSet",
    "OverlapMatrices",
    "EffectiveModel",
    "TunnelingMode",
    "REFERENCE_TUNNELING",
    "LOCALIZATION_TOLERANCE",
    "build_basis",
    "assemble",
    "orthogonalize",
    "effective_model",
    "MAX_DENSE_SIZE",
    "dense_eigenvalues",
    "dense_eigenpairs",
    "two_well_epsilon",
    "two_well_gamma",
    "two_well_ground_epsilon",
    "two_well_real_eigenvalue",
    "three_well_admissible",
    "tight_binding_matrix",
    "tight_binding_balance",
    "approximation_residual",
    "DEFAULT_SENSITIVITY_STEP",
    "Sensitivity",
    "sensitivities",
]
