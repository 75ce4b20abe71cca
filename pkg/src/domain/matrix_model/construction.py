"""
From the continuous potential to the matrix model.

The wavefunction is expanded in the ground states of the single wells
without imaginary parts. Matrix elements are evaluated with the same
quadrature as the grid eigensolver:

- ``K_mn = integral phi_m phi_n``            (trapezoid rule)
- ``H_mn = integral phi_m' phi_n' + integral phi_m V phi_n``

The derivatives are central differences at the cell midpoints, so that
``H_mn`` is exactly the bilinear form of the tridiagonal operator. The
generalized problem ``H d = mu K d`` is turned into an ordinary one by
symmetric orthogonalization ``X = U D^(-1/2) U^T`` (``U`` holding the
eigenvectors of ``K`` in its columns) and ``H_eff = X H X``.
"""

from __future__ import annotations

import logging

import numpy as np
from scipy.linalg import eigh

from src.domain.errors import OverlapMatrixError, UnboundWellError
from src.domain.grid_solver import DEFAULT_TOLERANCE, Grid, solve_lowest
from src.domain.potential import MultiWellPotential, evaluate, single_well

from .models import BasisSet, EffectiveModel, OverlapMatrices

logger = logging.getLogger("gainloss.matrix_model")

LOCALIZATION_TOLERANCE = 1e-8
_POSITIVE_DEFINITE_FLOOR = 1e-12


def build_basis(
    potential: MultiWellPotential, grid: Grid, tol: float = DEFAULT_TOLERANCE
) -> BasisSet:
    """Ground states of ``single_well(potential, n)`` for every well.

    Each function is real, positive at its maximum and L2-normalized.

    Raises:
        UnboundWellError: If a single well has no state below zero.
    """
    functions = []
    energies = []
    for n in range(1, potential.n_wells + 1):
        ground = solve_lowest(single_well(potential, n), grid, 1, tol)[0]
        energy = ground.energy.real
        if energy >= 0.0 or not ground.bound:
            raise UnboundWellError(n, energy)
        phi = ground.wavefunction.real.copy()
        phi *= np.sign(phi[np.argmax(np.abs(phi))])
        phi /= np.sqrt(grid.integrate(phi * phi))
        functions.append(phi)
        energies.append(energy)

    basis = BasisSet(np.array(functions), grid, tuple(energies))
    if basis.edge_amplitude > LOCALIZATION_TOLERANCE:
        logger.warning(
            "Basis functions are not localized inside the grid",
            extra={"edgeAmplitude": basis.edge_amplitude},
        )
    return basis


def assemble(basis: BasisSet, potential: MultiWellPotential) -> OverlapMatrices:
    """Hamiltonian and overlap matrix elements in the single-well basis."""
    grid = basis.grid
    h = grid.spacing
    phi = basis.functions
    padded = grid.pad(phi)
    derivatives = np.diff(padded, axis=1) / h

    overlap = (phi @ phi.T) * h
    kinetic = (derivatives @ derivatives.T) * h
    potential_values = evaluate(potential, grid.interior)
    potential_term = ((phi * potential_values) @ phi.T) * h

    k = 0.5 * (overlap + overlap.T)
    hamiltonian = kinetic + potential_term
    return OverlapMatrices(0.5 * (hamiltonian + hamiltonian.T), k)


def orthogonalize(overlaps: OverlapMatrices) -> EffectiveModel:
    """Symmetric orthogonalization and extraction of ``epsilon``, ``gamma``, ``J``.

    Raises:
        OverlapMatrixError: If ``K`` is not positive definite.
    """
    eigenvalues, eigenvectors = eigh(overlaps.k)
    if eigenvalues.min() <= _POSITIVE_DEFINITE_FLOOR * max(1.0, eigenvalues.max()):
        raise OverlapMatrixError(float(eigenvalues.min()))

    x = (eigenvectors * eigenvalues**-0.5) @ eigenvectors.T
    h_eff = x @ overlaps.h @ x
    lowdin_residual = float(np.max(np.abs(x @ overlaps.k @ x - np.eye(overlaps.size))))

    diagonal = np.diag(h_eff)
    couplings = np.diag(h_eff, 1)
    j = float(-np.mean(couplings.real)) if overlaps.size > 1 else None
    return EffectiveModel(
        h_eff=h_eff,
        epsilon=diagonal.real,
        gamma=diagonal.imag,
        j=j,
        offdiag_residual=_offdiag_residual(h_eff, j),
        x=x,
        lowdin_residual=lowdin_residual,
    )


def effective_model(
    potential: MultiWellPotential, grid: Grid, tol: float = DEFAULT_TOLERANCE
) -> EffectiveModel:
    """Basis, assembly and orthogonalization in one call."""
    return orthogonalize(assemble(build_basis(potential, grid, tol), potential))


def _offdiag_residual(h_eff: np.ndarray, j: float | None) -> float:
    size = h_eff.shape[0]
    if size == 1 or j is None:
        return 0.0
    rows, cols = np.indices(h_eff.shape)
    distance = np.abs(rows - cols)
    deviations = [
        np.abs(h_eff[distance == 1].imag).max(),
        np.abs(h_eff[distance == 1].real + j).max(),
    ]
    if size > 2:
        deviations.append(np.abs(h_eff[distance > 1]).max())
    return float(max(deviations))
