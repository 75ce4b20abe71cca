"""
Complex Gaussian multi-well potentials.

Public API:
    - GaussianWell, MultiWellPotential: immutable potential description.
    - evaluate(): complex potential value at a point or on an array.
    - real_part(): copy with all gain-loss terms zeroed.
    - single_well(): one real well extracted from a multi-well potential.
    - amplitude_bound(): bound on the modulus of the potential.
    - ParameterSelector, ParameterKind, depth(), gain_loss(): parameter addressing.
"""

from .evaluation import amplitude_bound, evaluate, real_part, single_well
from .models import GaussianWell, MultiWellPotential
from .parameters import (
    ParameterKind,
    ParameterSelector,
    apply_values,
    depth,
    gain_loss,
    get_values,
)

__all__ = [
    "GaussianWell",
    "MultiWellPotential",
    "evaluate",
    "real_part",
    "single_well",
    "amplitude_bound",
    "ParameterKind",
    "ParameterSelector",
    "apply_values",
    "depth",
    "gain_loss",
    "get_values",
]
