"""
Lowest eigenpairs of the complex tridiagonal Hamiltonian.

Strategy
========

1. Diagonalize the Hermitian real-part operator with
   ``scipy.linalg.eigh_tridiagonal``; its lowest eigenpairs supply the
   initial shifts and start vectors.
2. For each shift run inverse iteration on the complex operator with
   ``scipy.linalg.solve_banded``. Once the residual is small the shift is
   replaced by the c-product Rayleigh quotient ``v^T A v / v^T v``, which is
   stationary for complex symmetric matrices.
3. Every iterate is deflated against the states already found by
   c-product projection; eigenvectors of a complex symmetric matrix are
   mutually c-orthogonal, so the projector is exact.
4. If a shift fails to converge, the gain-loss terms are switched on in
   ``homotopy_steps`` stages and each stage is seeded from the previous one.

One guard state beyond the requested count is computed so that a swap of
real-part ordering near the top of the window does not drop a state.
"""

from __future__ import annotations

import logging
from typing import Sequence

import numpy as np
from scipy.linalg import LinAlgError, eigh_tridiagonal, solve_banded

from src.domain.errors import EigensolverConvergenceError
from src.domain.potential import MultiWellPotential

from .discretization import continuum_threshold, discretize
from .models import EigenPair, Grid, Spectrum, TridiagonalOperator

logger = logging.getLogger("gainloss.grid_solver")

DEFAULT_TOLERANCE = 1e-9
DEFAULT_MAX_ITERATIONS = 500
DEGENERACY_THRESHOLD = 1e-8

# Residual below which the shift follows the Rayleigh quotient.
_RAYLEIGH_SWITCH = 1e-3


def solve_lowest(
    potential: MultiWellPotential,
    grid: Grid,
    m: int,
    tol: float = DEFAULT_TOLERANCE,
    *,
    max_iterations: int = DEFAULT_MAX_ITERATIONS,
    guard_states: int = 1,
    homotopy_steps: int = 4,
) -> Spectrum:
    """Return the ``m`` eigenpairs with smallest real part.

    Args:
        potential: The complex multi-well potential.
        grid: Discretization grid.
        m: Number of states, ``1 <= m < n_points - 2``.
        tol: Relative residual tolerance, ``||A v - mu v|| <= tol * max(1, |mu|)``.
        max_iterations: Inverse-iteration limit per state.
        guard_states: Extra states computed and discarded after sorting.
        homotopy_steps: Stages used to switch on the gain-loss terms when a
            direct solve does not converge.

    Raises:
        ValueError: For invalid ``m`` or ``tol``.
        EigensolverConvergenceError: If even the homotopy path fails.
    """
    if m < 1 or m >= grid.n_interior:
        raise ValueError(f"m must satisfy 1 <= m < {grid.n_interior}, got {m}")
    if tol <= 0.0:
        raise ValueError(f"tol must be > 0, got {tol}")

    count = min(m + max(guard_states, 0), grid.n_interior - 1)
    operator = discretize(potential, grid)
    shifts, starts = _real_part_guess(operator, count)

    try:
        energies, vectors, residuals = _solve_states(
            operator, shifts, starts, tol, max_iterations
        )
    except EigensolverConvergenceError as exc:
        if potential.is_real or homotopy_steps < 2:
            raise
        logger.debug(
            "Direct inverse iteration failed, continuing in gain-loss",
            extra={"shift": str(exc.shift), "iterations": exc.iterations},
        )
        energies, vectors, residuals = _solve_by_homotopy(
            potential, grid, shifts, starts, tol, max_iterations, homotopy_steps
        )

    order = sorted(range(len(energies)), key=lambda k: (energies[k].real, energies[k].imag))[:m]
    threshold = continuum_threshold(potential, grid)
    pairs = tuple(
        _make_pair(energies[k], vectors[k], residuals[k], grid, threshold) for k in order
    )
    return Spectrum(pairs, grid, potential)


# ---------------------------------------------------------------------------
# Internal helpers
# ---------------------------------------------------------------------------


def _real_part_guess(operator: TridiagonalOperator, count: int) -> tuple[np.ndarray, np.ndarray]:
    """Lowest eigenpairs of the Hermitian real-part operator."""
    values, vectors = eigh_tridiagonal(
        operator.diagonal.real,
        operator.off_diagonal,
        select="i",
        select_range=(0, count - 1),
    )
    return values.astype(complex), vectors.T.astype(complex)


def _solve_by_homotopy(
    potential: MultiWellPotential,
    grid: Grid,
    shifts: np.ndarray,
    starts: np.ndarray,
    tol: float,
    max_iterations: int,
    steps: int,
) -> tuple[list[complex], list[np.ndarray], list[float]]:
    gains = potential.gain_losses
    energies: list[complex] = list(shifts)
    vectors: list[np.ndarray] = list(starts)
    residuals: list[float] = []
    for stage in range(1, steps + 1):
        scaled = potential.with_gain_losses(gains * stage / steps)
        operator = discretize(scaled, grid)
        energies, vectors, residuals = _solve_states(
            operator, np.array(energies), np.array(vectors), tol, max_iterations
        )
    return energies, vectors, residuals


def _solve_states(
    operator: TridiagonalOperator,
    shifts: np.ndarray,
    starts: np.ndarray,
    tol: float,
    max_iterations: int,
) -> tuple[list[complex], list[np.ndarray], list[float]]:
    energies: list[complex] = []
    vectors: list[np.ndarray] = []
    residuals: list[float] = []
    for shift, start in zip(shifts, starts):
        energy, vector, residual, iterations = _inverse_iteration(
            operator, complex(shift), start, vectors, tol, max_iterations
        )
        logger.debug(
            "Eigenpair converged",
            extra={
                "shift": str(shift),
                "energy": str(energy),
                "iterations": iterations,
                "residual": residual,
            },
        )
        energies.append(energy)
        vectors.append(vector)
        residuals.append(residual)
    return energies, vectors, residuals


def _inverse_iteration(
    operator: TridiagonalOperator,
    shift: complex,
    start: np.ndarray,
    found: Sequence[np.ndarray],
    tol: float,
    max_iterations: int,
) -> tuple[complex, np.ndarray, float, int]:
    vector = _deflate(np.array(start, dtype=complex), found)
    norm = np.linalg.norm(vector)
    if norm == 0.0:
        vector = _deflate(np.ones(operator.size, dtype=complex), found)
        norm = np.linalg.norm(vector)
    vector /= norm

    sigma = shift
    residual = np.inf
    for iteration in range(1, max_iterations + 1):
        try:
            solved = solve_banded((1, 1), operator.banded(sigma), vector)
        except (LinAlgError, ValueError):
            # shift hit an eigenvalue exactly
            sigma += tol * (1.0 + abs(sigma))
            continue
        solved = _deflate(solved, found)
        norm = np.linalg.norm(solved)
        if not np.isfinite(norm) or norm == 0.0:
            break
        vector = solved / norm
        image = operator.matvec(vector)
        energy = _rayleigh_quotient(vector, image)
        residual = float(np.linalg.norm(image - energy * vector))
        scale = max(1.0, abs(energy))
        if residual <= tol * scale:
            return energy, vector, residual, iteration
        if residual <= _RAYLEIGH_SWITCH * scale:
            sigma = energy

    raise EigensolverConvergenceError(shift, max_iterations, float(residual))


def _rayleigh_quotient(vector: np.ndarray, image: np.ndarray) -> complex:
    c_norm = vector @ vector
    if abs(c_norm) > DEGENERACY_THRESHOLD:
        return complex((vector @ image) / c_norm)
    return complex(np.vdot(vector, image) / np.vdot(vector, vector))


def _deflate(vector: np.ndarray, found: Sequence[np.ndarray]) -> np.ndarray:
    """Remove the components along already converged eigenvectors."""
    for other in found:
        c_norm = other @ other
        if abs(c_norm) > DEGENERACY_THRESHOLD * np.vdot(other, other).real:
            vector = vector - other * ((other @ vector) / c_norm)
        else:
            # near an exceptional point the c-product degenerates
            vector = vector - other * (np.vdot(other, vector) / np.vdot(other, other))
    return vector


def _make_pair(
    energy: complex,
    vector: np.ndarray,
    residual: float,
    grid: Grid,
    threshold: float,
) -> EigenPair:
    vector = np.array(vector, dtype=complex)
    c_norm = vector @ vector
    near_exceptional = abs(c_norm) < DEGENERACY_THRESHOLD * np.vdot(vector, vector).real
    if near_exceptional:
        anchor = vector[np.argmax(np.abs(vector))]
        vector = vector * (abs(anchor) / anchor)
    else:
        vector = vector * np.exp(-0.5j * np.angle(c_norm))
        magnitudes = np.abs(vector)
        first = int(np.argmax(magnitudes > 1e-8 * magnitudes.max()))
        if vector[first].real < 0.0:
            vector = -vector
    vector = vector / np.sqrt(grid.integrate(np.abs(vector) ** 2))
    return EigenPair(
        energy=energy,
        wavefunction=vector,
        residual=residual,
        c_norm=complex(grid.integrate(vector * vector)),
        near_exceptional=bool(near_exceptional),
        bound=bool(energy.real < threshold),
    )
