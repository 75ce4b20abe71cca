"""
Stationary gain/loss balance identity ``Im mu = integral Im V(x) |psi(x)|^2 dx``.
"""

from __future__ import annotations

import numpy as np

from src.domain.potential import MultiWellPotential, evaluate

from .models import EigenPair, Grid


def balance_check(pair: EigenPair, potential: MultiWellPotential, grid: Grid) -> tuple[float, float]:
    """Return ``(Im mu, trapezoid integral of Im V |psi|^2)`` for an L2-normalized pair.

    Both sides vanish for a state with balanced gain and loss; the caller
    decides on the tolerance.
    """
    density = np.abs(pair.wavefunction) ** 2
    gain_loss_profile = evaluate(potential, grid.interior).imag
    return float(pair.energy.imag), float(grid.integrate(gain_loss_profile * density))
