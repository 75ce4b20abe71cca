"""
Nearest-neighbour tight-binding Hamiltonians with uniform coupling.

``tight_binding_balance`` solves the three-well balance conditions in
closed form. Writing ``e_k`` for the elementary symmetric polynomials of
the eigenvalues, ``Im e_1 = 0`` and ``Im e_2 = 0`` are linear in the
gain-loss vector and leave the direction ``v`` (cross product of the two
coefficient rows). ``Im e_3 = 0`` then reads ``t (L.v - J^2 (v1 + v3)) =
t^3 v1 v2 v3`` for ``gamma = t v``. A negative ``t^2`` means the
gain-loss parameters would have to be imaginary.
"""

from __future__ import annotations

import logging
from typing import Sequence

import numpy as np

from src.domain.errors import InfeasibilityReason, InfeasibleSeedError

from .criteria import three_well_admissible

logger = logging.getLogger("gainloss.matrix_model")


def tight_binding_matrix(epsilon: Sequence[float], gamma: Sequence[float], j: float) -> np.ndarray:
    """``diag(eps + i gamma)`` with ``-J`` on the first off-diagonals."""
    epsilon = np.asarray(epsilon, dtype=float)
    gamma = np.asarray(gamma, dtype=float)
    if epsilon.shape != gamma.shape or epsilon.ndim != 1:
        raise ValueError("epsilon and gamma must be 1-D arrays of equal length")
    size = epsilon.size
    matrix = np.diag(epsilon + 1j * gamma)
    if size > 1:
        coupling = -float(j) * np.ones(size - 1)
        matrix += np.diag(coupling, 1) + np.diag(coupling, -1)
    return matrix


def tight_binding_balance(epsilon: Sequence[float], j: float) -> np.ndarray:
    """Gain-loss terms ``gamma`` that balance the three-well model at fixed ``epsilon``.

    Of the two solutions ``+-t v`` the one satisfying the ordering and sign
    pattern of ``three_well_admissible`` is returned.

    Raises:
        InfeasibleSeedError: IMAGINARY if ``t^2 <= 0`` or the direction is
            degenerate, ORDERING if neither sign is admissible.
    """
    e1, e2, e3 = (float(e) for e in epsilon)
    linear_rows = np.array([[1.0, 1.0, 1.0], [e2 + e3, e1 + e3, e1 + e2]])
    direction = np.cross(linear_rows[0], linear_rows[1])
    norm = np.linalg.norm(direction)
    if norm == 0.0:
        raise InfeasibleSeedError(
            InfeasibilityReason.IMAGINARY, "on-site energies leave no balanced direction"
        )
    direction /= norm

    v1, v2, v3 = direction
    cubic = v1 * v2 * v3
    linear = v1 * e2 * e3 + v2 * e1 * e3 + v3 * e1 * e2 - j * j * (v1 + v3)
    if cubic == 0.0 or linear / cubic <= 0.0:
        raise InfeasibleSeedError(
            InfeasibilityReason.IMAGINARY,
            f"balanced gain-loss terms are imaginary (t^2 = {linear / cubic if cubic else float('nan'):.6g})",
        )
    t = float(np.sqrt(linear / cubic))
    for candidate in (t * direction, -t * direction):
        if three_well_admissible((e1, e2, e3), candidate):
            logger.debug(
                "Closed-form three-well balance",
                extra={"gamma": [float(g) for g in candidate]},
            )
            return candidate
    raise InfeasibleSeedError(
        InfeasibilityReason.ORDERING,
        "on-site energies are not strictly ordered with an admissible sign pattern",
    )
