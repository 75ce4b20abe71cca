"""
Evaluation and projections of complex Gaussian multi-well potentials.

Every operation is pure. Distant wells are never truncated: the Gaussian
tails of all wells contribute at every point.
"""

from __future__ import annotations

from dataclasses import replace
from typing import overload

import numpy as np

from .models import MultiWellPotential


@overload
def evaluate(potential: MultiWellPotential, x: float) -> complex: ...


@overload
def evaluate(potential: MultiWellPotential, x: np.ndarray) -> np.ndarray: ...


def evaluate(potential, x):
    """Return ``sum_n (V_n + i Gamma_n) exp(-(x - a_n)^2 / (2 sigma_n^2))``.

    Accepts a scalar or an array of positions; arrays are evaluated
    elementwise and returned as complex arrays of the same shape.
    """
    positions = np.asarray(x, dtype=float)
    values = np.zeros(positions.shape, dtype=complex)
    for well in potential.wells:
        offset = positions - well.center
        values = values + well.amplitude * np.exp(-(offset * offset) / (2.0 * well.width**2))
    if np.ndim(x) == 0:
        return complex(values)
    return values


def real_part(potential: MultiWellPotential) -> MultiWellPotential:
    """Return a copy of ``potential`` with every gain-loss parameter set to zero."""
    return MultiWellPotential(tuple(replace(w, gain_loss=0.0) for w in potential.wells))


def single_well(potential: MultiWellPotential, n: int) -> MultiWellPotential:
    """Return the one-well potential holding only well ``n`` (1-based), gain-loss zeroed.

    These real single wells are the building blocks of the matrix-model basis.

    Raises:
        IndexError: If ``n`` is outside ``1..N``.
    """
    well = potential.well(n)
    return MultiWellPotential((replace(well, gain_loss=0.0),))


def amplitude_bound(potential: MultiWellPotential) -> float:
    """Upper bound ``sum_n |V_n + i Gamma_n|`` of ``|evaluate(potential, x)|``."""
    return float(sum(abs(w.amplitude) for w in potential.wells))
