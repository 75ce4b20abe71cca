"""
Value types of the tight-binding matrix model.

The model is obtained by projecting the continuous Hamiltonian onto the
real single-well ground states (``BasisSet``), assembling the Hamiltonian
and overlap matrices (``OverlapMatrices``) and applying symmetric
orthogonalization (``EffectiveModel``).
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Optional

import numpy as np

from src.domain.grid_solver import Grid

#: Tunneling rate of the symmetric real double well V = -3, sigma = 1, a = -+1.5.
REFERENCE_TUNNELING = 0.21918847


class TunnelingMode(str, Enum):
    """How the coupling ``J`` of a model is chosen for comparisons.

    FROZEN uses one reference value for every configuration;
    RECOMPUTED uses the value extracted from each configuration's H_eff,
    and the continuation backend then keeps H_eff whole.
    """

    FROZEN = "frozen"
    RECOMPUTED = "recomputed"


def _readonly(array: np.ndarray, dtype: type) -> np.ndarray:
    copy = np.array(array, dtype=dtype)
    copy.setflags(write=False)
    return copy


@dataclass(frozen=True, eq=False)
class BasisSet:
    """Real, L2-normalized single-well ground states on the interior grid.

    Attributes:
        functions: Array of shape ``(N, n_interior)``.
        grid: Grid the functions are sampled on.
        energies: Ground-state energies of the single wells.
    """

    functions: np.ndarray
    grid: Grid
    energies: tuple[float, ...]

    def __post_init__(self) -> None:
        functions = _readonly(np.atleast_2d(self.functions), float)
        if functions.shape[1] != self.grid.n_interior:
            raise ValueError("basis functions must be sampled on the grid interior")
        if len(self.energies) != functions.shape[0]:
            raise ValueError("one single-well energy per basis function is required")
        object.__setattr__(self, "functions", functions)
        object.__setattr__(self, "energies", tuple(float(e) for e in self.energies))

    @property
    def size(self) -> int:
        return int(self.functions.shape[0])

    @property
    def edge_amplitude(self) -> float:
        """Largest modulus at the first/last interior points."""
        return float(np.max(np.abs(self.functions[:, [0, -1]])))


@dataclass(frozen=True, eq=False)
class OverlapMatrices:
    """Hamiltonian matrix ``h`` (complex symmetric) and overlap ``k`` (real symmetric)."""

    h: np.ndarray
    k: np.ndarray

    def __post_init__(self) -> None:
        h = _readonly(self.h, complex)
        k = _readonly(self.k, float)
        if h.shape != k.shape or h.shape[0] != h.shape[1]:
            raise ValueError("h and k must be square matrices of equal shape")
        object.__setattr__(self, "h", h)
        object.__setattr__(self, "k", k)

    @property
    def size(self) -> int:
        return int(self.h.shape[0])


@dataclass(frozen=True, eq=False)
class EffectiveModel:
    """The ``N x N`` matrix model ``H_eff = X H X``.

    Attributes:
        h_eff: Effective Hamiltonian.
        epsilon: On-site energies ``Re diag(h_eff)``.
        gamma: Gain-loss terms ``Im diag(h_eff)``.
        j: Tunneling rate ``-mean(Re h_eff[n, n+1])``; None for a single well.
        offdiag_residual: Largest deviation of h_eff from the tridiagonal
            shape with equal real couplings ``-J``.
        x: Symmetric orthogonalization matrix.
        lowdin_residual: ``max |X K X - 1|`` at construction.
    """

    h_eff: np.ndarray
    epsilon: np.ndarray
    gamma: np.ndarray
    j: Optional[float]
    offdiag_residual: float
    x: np.ndarray
    lowdin_residual: float

    def __post_init__(self) -> None:
        object.__setattr__(self, "h_eff", _readonly(self.h_eff, complex))
        object.__setattr__(self, "epsilon", _readonly(self.epsilon, float))
        object.__setattr__(self, "gamma", _readonly(self.gamma, float))
        object.__setattr__(self, "x", _readonly(self.x, float))

    @property
    def size(self) -> int:
        return int(self.h_eff.shape[0])

    def tunneling(self, mode: TunnelingMode, frozen_value: float = REFERENCE_TUNNELING) -> Optional[float]:
        if self.j is None:
            return None
        return frozen_value if TunnelingMode(mode) is TunnelingMode.FROZEN else self.j
