"""
Value types for the finite-difference eigenproblem.

Wavefunctions are stored on the interior grid points only; the Dirichlet
boundary values are zero and are re-attached by ``Grid.pad`` whenever a
quadrature over the full grid is needed.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.integrate import trapezoid

from src.domain.potential import MultiWellPotential

DEFAULT_POINTS = 2001
DEFAULT_MARGIN = 8.0


@dataclass(frozen=True)
class Grid:
    """Uniform grid ``x_min = x_0 < ... < x_{n-1} = x_max``."""

    x_min: float
    x_max: float
    n_points: int

    def __post_init__(self) -> None:
        if not (math.isfinite(self.x_min) and math.isfinite(self.x_max)):
            raise ValueError("grid endpoints must be finite")
        if self.x_min >= self.x_max:
            raise ValueError(f"x_min must be < x_max, got {self.x_min} >= {self.x_max}")
        if int(self.n_points) != self.n_points or self.n_points < 3:
            raise ValueError(f"n_points must be an integer >= 3, got {self.n_points}")
        object.__setattr__(self, "n_points", int(self.n_points))

    @classmethod
    def auto(
        cls,
        potential: MultiWellPotential,
        n_points: int = DEFAULT_POINTS,
        margin: float = DEFAULT_MARGIN,
    ) -> "Grid":
        """Symmetric domain ``±(max|a_n| + margin * max sigma_n)``."""
        half_width = float(np.max(np.abs(potential.centers)) + margin * np.max(potential.widths))
        return cls(-half_width, half_width, n_points)

    @property
    def spacing(self) -> float:
        return (self.x_max - self.x_min) / (self.n_points - 1)

    @property
    def points(self) -> np.ndarray:
        return np.linspace(self.x_min, self.x_max, self.n_points)

    @property
    def interior(self) -> np.ndarray:
        return self.points[1:-1]

    @property
    def n_interior(self) -> int:
        return self.n_points - 2

    def pad(self, interior_values: np.ndarray) -> np.ndarray:
        """Attach the zero Dirichlet boundary values."""
        values = np.asarray(interior_values)
        if values.shape[-1] != self.n_interior:
            raise ValueError(
                f"expected {self.n_interior} interior samples, got {values.shape[-1]}"
            )
        pad_width = [(0, 0)] * (values.ndim - 1) + [(1, 1)]
        return np.pad(values, pad_width)

    def integrate(self, interior_values: np.ndarray) -> complex | float:
        """Trapezoid rule over the full grid of a quantity sampled on the interior."""
        result = trapezoid(self.pad(interior_values), dx=self.spacing, axis=-1)
        if np.iscomplexobj(result):
            return complex(result)
        return float(result)


@dataclass(frozen=True)
class TridiagonalOperator:
    """Complex symmetric tridiagonal matrix ``diag(diagonal) + offdiag(off_diagonal)``."""

    diagonal: np.ndarray
    off_diagonal: np.ndarray

    def __post_init__(self) -> None:
        diagonal = np.asarray(self.diagonal, dtype=complex)
        off_diagonal = np.asarray(self.off_diagonal, dtype=float)
        if off_diagonal.shape[0] != diagonal.shape[0] - 1:
            raise ValueError("off-diagonal must be one shorter than the diagonal")
        diagonal.setflags(write=False)
        off_diagonal.setflags(write=False)
        object.__setattr__(self, "diagonal", diagonal)
        object.__setattr__(self, "off_diagonal", off_diagonal)

    @property
    def size(self) -> int:
        return int(self.diagonal.shape[0])

    def to_dense(self) -> np.ndarray:
        return (
            np.diag(self.diagonal)
            + np.diag(self.off_diagonal.astype(complex), 1)
            + np.diag(self.off_diagonal.astype(complex), -1)
        )

    def matvec(self, vector: np.ndarray) -> np.ndarray:
        result = self.diagonal * vector
        result[:-1] += self.off_diagonal * vector[1:]
        result[1:] += self.off_diagonal * vector[:-1]
        return result

    def banded(self, shift: complex = 0.0) -> np.ndarray:
        """``(A - shift I)`` in the ``(1, 1)`` band storage of ``scipy.linalg.solve_banded``."""
        bands = np.zeros((3, self.size), dtype=complex)
        bands[0, 1:] = self.off_diagonal
        bands[1, :] = self.diagonal - shift
        bands[2, :-1] = self.off_diagonal
        return bands


@dataclass(frozen=True, eq=False)
class EigenPair:
    """One eigenpair of the discretized Hamiltonian.

    Attributes:
        energy: Complex eigenvalue (chemical potential).
        wavefunction: Right eigenvector on the interior grid points,
            L2-normalized by the trapezoid rule. The left eigenvector is its
            complex conjugate.
        residual: ``||H psi - mu psi|| / ||psi||`` at convergence.
        c_norm: c-product self-norm ``integral psi^2 dx``.
        near_exceptional: True when ``|c_norm|`` fell below the degeneracy
            threshold, i.e. the state sits close to an exceptional point.
        bound: False for discretized continuum states lying above the
            continuum threshold.
    """

    energy: complex
    wavefunction: np.ndarray
    residual: float
    c_norm: complex
    near_exceptional: bool = False
    bound: bool = True

    def __post_init__(self) -> None:
        wavefunction = np.array(self.wavefunction, dtype=complex)
        wavefunction.setflags(write=False)
        object.__setattr__(self, "wavefunction", wavefunction)
        object.__setattr__(self, "energy", complex(self.energy))


@dataclass(frozen=True, eq=False)
class Spectrum:
    """The lowest eigenpairs, ordered by ascending real part (ties by imaginary part)."""

    pairs: tuple[EigenPair, ...]
    grid: Grid
    potential: MultiWellPotential

    def __post_init__(self) -> None:
        object.__setattr__(self, "pairs", tuple(self.pairs))

    def __len__(self) -> int:
        return len(self.pairs)

    def __getitem__(self, index: int) -> EigenPair:
        return self.pairs[index]

    @property
    def energies(self) -> np.ndarray:
        return np.array([p.energy for p in self.pairs], dtype=complex)

    @property
    def wavefunctions(self) -> np.ndarray:
        """Array of shape ``(m, n_interior)``."""
        return np.array([p.wavefunction for p in self.pairs])

    @property
    def has_degeneracy(self) -> bool:
        return any(p.near_exceptional for p in self.pairs)
