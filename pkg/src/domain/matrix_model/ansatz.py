"""
Quality of the single-well expansion for an exact eigenstate.
"""

from __future__ import annotations

import numpy as np
from scipy.linalg import solve

from src.domain.grid_solver import Spectrum

from .models import BasisSet, OverlapMatrices


def approximation_residual(
    spectrum: Spectrum, basis: BasisSet, overlaps: OverlapMatrices, l: int
) -> float:
    """Norm of ``xi = H c - E K c`` for state ``l`` (1-based).

    ``c`` are the coefficients of the L2 projection of the exact state onto
    the span of the basis, ``c = K^-1 <phi|psi>``. A small value means the
    generalized matrix problem reproduces the exact energy.
    """
    if not 1 <= l <= basis.size:
        raise IndexError(f"state index {l} outside 1..{basis.size}")
    if l > len(spectrum):
        raise IndexError(f"spectrum holds {len(spectrum)} states, state {l} requested")
    if spectrum.grid != basis.grid:
        raise ValueError("spectrum and basis must share the grid")

    pair = spectrum[l - 1]
    projections = (basis.functions @ pair.wavefunction) * basis.grid.spacing
    coefficients = solve(overlaps.k, projections, assume_a="pos")
    xi = overlaps.h @ coefficients - pair.energy * (overlaps.k @ coefficients)
    return float(np.linalg.norm(xi))
