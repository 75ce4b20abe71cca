"""
Spectrum classification and symmetrization operators.

Public API:
    - Classification, classify(): real / conjugate-pair / unpaired split.
    - EtaOperator, build_eta(), eta_for_matrix(): metric operators from
      bi-orthonormal eigenstates.
    - quasi_hermiticity_residual(): relative size of ``eta H - H^dagger eta``.
"""

from .classification import DEFAULT_CLASSIFICATION_TOLERANCE, Classification, classify
from .eta import EtaOperator, build_eta, c_normalize, eta_for_matrix, quasi_hermiticity_residual

__all__ = [
    "DEFAULT_CLASSIFICATION_TOLERANCE",
    "Classification",
    "classify",
    "EtaOperator",
    "build_eta",
    "c_normalize",
    "eta_for_matrix",
    "quasi_hermiticity_residual",
]
