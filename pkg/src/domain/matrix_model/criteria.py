"""
Analytic conditions for real or conjugate-paired spectra of the tight-binding model.
"""

from __future__ import annotations

import math
from typing import Optional, Sequence

import numpy as np

_SYMMETRIC_DETUNING = 1e-10


def two_well_epsilon(gamma1: float, gamma2: float, j: float) -> Optional[tuple[float, float]]:
    """Detuning ``eps = eps2 - eps1`` for which the 2x2 model has one real eigenvalue.

    Returns ``(plus, minus)`` or None when no real eigenvalue can exist,
    i.e. when the gain-loss terms have equal signs or ``|gamma1 gamma2| > J^2``.
    """
    if j <= 0.0:
        raise ValueError(f"j must be > 0, got {j}")
    product = gamma1 * gamma2
    if product == 0.0:
        return (0.0, 0.0) if gamma1 == gamma2 == 0.0 else None
    if product > 0.0 or -product > j * j:
        return None
    magnitude = abs(gamma1 + gamma2) * math.sqrt(max(-(product + j * j) / product, 0.0))
    return magnitude, -magnitude


def two_well_real_eigenvalue(
    epsilon1: float, gamma1: float, gamma2: float, epsilon: float, j: float
) -> float:
    """The real eigenvalue belonging to a solution of ``two_well_epsilon``.

    In the symmetric case ``gamma1 = -gamma2`` both eigenvalues are real and
    the lower one is returned.
    """
    total = gamma1 + gamma2
    if total == 0.0:
        return epsilon1 + 0.5 * epsilon - math.sqrt(max(j * j - gamma1 * gamma1, 0.0))
    return epsilon1 + gamma1 * epsilon / total


def two_well_gamma(
    epsilon: float, gamma1: float, j: float, *, ground_state: bool = False
) -> Optional[float]:
    """Invert ``two_well_epsilon`` for ``gamma2`` at fixed detuning and ``gamma1``.

    Squaring the closed form gives the cubic
    ``g1 g^3 + (2 g1^2 + J^2) g^2 + (g1^3 + 2 g1 J^2 + eps^2 g1) g + g1^2 J^2 = 0``.
    The admissible root has the opposite sign to ``gamma1`` and
    ``|gamma1 gamma2| <= J^2``; the one nearest the symmetric value
    ``-gamma1`` is returned. With ``ground_state`` only roots whose real
    eigenvalue is the lower of the two are considered.
    """
    if j <= 0.0:
        raise ValueError(f"j must be > 0, got {j}")
    if gamma1 == 0.0:
        return 0.0 if epsilon == 0.0 else None
    j2 = j * j
    if abs(epsilon) <= _SYMMETRIC_DETUNING * j:
        # the cubic has a double root at -gamma1 here
        return -gamma1 if gamma1 * gamma1 <= j2 else None
    coefficients = [
        gamma1,
        2.0 * gamma1**2 + j2,
        gamma1**3 + 2.0 * gamma1 * j2 + epsilon**2 * gamma1,
        gamma1**2 * j2,
    ]
    candidates = [
        root.real
        for root in np.roots(coefficients)
        if abs(root.imag) <= 1e-6 * max(1.0, abs(root))
        and gamma1 * root.real < 0.0
        and abs(gamma1 * root.real) <= j2 * (1.0 + 1e-12)
    ]
    if ground_state:
        candidates = [g for g in candidates if g != -gamma1 and (gamma1 - g) * epsilon / (gamma1 + g) < 0.0]
    if not candidates:
        return None
    return float(min(candidates, key=lambda g: abs(g + gamma1)))


def two_well_ground_epsilon(gamma1: float, gamma2: float, j: float) -> Optional[float]:
    """The sign of ``two_well_epsilon`` whose real eigenvalue is the lower one."""
    solutions = two_well_epsilon(gamma1, gamma2, j)
    if solutions is None:
        return None
    total = gamma1 + gamma2
    if total == 0.0:
        return 0.0
    plus, minus = solutions
    return plus if (gamma1 - gamma2) * plus / total < 0.0 else minus


def three_well_admissible(epsilon: Sequence[float], gamma: Sequence[float]) -> bool:
    """Ordering and sign pattern required for a balanced three-well model."""
    e1, e2, e3 = (float(e) for e in epsilon)
    g1, g2, g3 = (float(g) for g in gamma)
    if e1 < e2 < e3:
        return g1 > 0.0 and g3 > 0.0 and g2 < 0.0
    if e1 > e2 > e3:
        return g1 < 0.0 and g3 < 0.0 and g2 > 0.0
    return False
