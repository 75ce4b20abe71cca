"""
Symmetrization operators built from bi-orthonormal eigenstates.

For a complex symmetric Hamiltonian the left eigenstates are the complex
conjugates of the right ones, so the bi-orthonormality condition becomes
the c-product ``sum_k w psi_m[k] psi_n[k] = delta_mn``. With left states
``L_n = conj(R_n)``:

    eta = sum_real |L_n><L_n| + sum_pairs (|L_+><L_-| + |L_-><L_+|)

and ``eta H = H^dagger eta`` holds on the span of the states entering the
sums. States without a conjugate partner lie in the kernel.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from src.domain.errors import EtaConstructionError
from src.domain.matrix_model import dense_eigenpairs

from .classification import DEFAULT_CLASSIFICATION_TOLERANCE, Classification, classify

HERMITICITY_TOLERANCE = 1e-10
_C_NORM_FLOOR = 1e-12


@dataclass(frozen=True, eq=False)
class EtaOperator:
    """Hermitian metric operator in the representation of its input states.

    Attributes:
        matrix: Square complex matrix.
        kernel_rank: Number of considered states excluded from the sums.
        right_states: c-normalized right states entering the sums, as columns.
    """

    matrix: np.ndarray
    kernel_rank: int
    right_states: Optional[np.ndarray] = None

    def __post_init__(self) -> None:
        matrix = np.array(self.matrix, dtype=complex)
        if matrix.ndim != 2 or matrix.shape[0] != matrix.shape[1]:
            raise ValueError("eta must be a square matrix")
        scale = max(1.0, float(np.abs(matrix).max(initial=0.0)))
        if np.abs(matrix - matrix.conj().T).max(initial=0.0) > HERMITICITY_TOLERANCE * scale:
            raise ValueError("eta must be Hermitian")
        if self.kernel_rank < 0:
            raise ValueError("kernel_rank must be >= 0")
        matrix.setflags(write=False)
        object.__setattr__(self, "matrix", matrix)
        if self.right_states is not None:
            states = np.array(self.right_states, dtype=complex)
            states.setflags(write=False)
            object.__setattr__(self, "right_states", states)

    @property
    def rank(self) -> int:
        return int(np.linalg.matrix_rank(self.matrix, tol=1e-9 * max(1.0, np.abs(self.matrix).max())))


def c_normalize(vector: np.ndarray, weight: float = 1.0) -> np.ndarray:
    """Scale ``vector`` to unit c-norm with its first significant component positive.

    Raises:
        EtaConstructionError: If the c-norm vanishes (exceptional point).
    """
    vector = np.asarray(vector, dtype=complex)
    c_norm = weight * (vector @ vector)
    if abs(c_norm) <= _C_NORM_FLOOR * weight * np.vdot(vector, vector).real:
        raise EtaConstructionError("state has vanishing c-norm and cannot be normalized")
    vector = vector / np.sqrt(c_norm)
    magnitudes = np.abs(vector)
    first = int(np.argmax(magnitudes > 1e-8 * magnitudes.max()))
    if vector[first].real < 0.0:
        vector = -vector
    return vector


def build_eta(
    states: Sequence[tuple[complex, np.ndarray]],
    classification: Classification,
    weight: float = 1.0,
) -> EtaOperator:
    """Assemble ``eta`` from ``(energy, right state)`` pairs.

    Args:
        states: Energies with right eigenvectors in one representation
            (grid samples or model coefficients).
        classification: Classification of the energies.
        weight: Quadrature weight of the inner product, the grid spacing
            for grid states and 1 for coefficient vectors.

    Raises:
        EtaConstructionError: If the classification does not fit ``states``.
    """
    _check_consistency(states, classification)
    if weight <= 0.0:
        raise EtaConstructionError(f"weight must be > 0, got {weight}")

    size = np.asarray(states[0][1]).size if states else 0
    matrix = np.zeros((size, size), dtype=complex)
    support: list[np.ndarray] = []

    for index in classification.real_indices:
        right = c_normalize(states[index][1], weight)
        left = right.conj()
        matrix += weight * np.outer(left, left.conj())
        support.append(right)

    for plus, minus in classification.pair_indices:
        right_plus = c_normalize(states[plus][1], weight)
        right_minus = c_normalize(states[minus][1], weight)
        left_plus, left_minus = right_plus.conj(), right_minus.conj()
        matrix += weight * (np.outer(left_minus, left_plus.conj()) + np.outer(left_plus, left_minus.conj()))
        support.extend((right_plus, right_minus))

    kernel_rank = len(states) - len(support)
    right_states = np.array(support).T if support else None
    return EtaOperator(matrix=0.5 * (matrix + matrix.conj().T), kernel_rank=kernel_rank, right_states=right_states)


def eta_for_matrix(
    hamiltonian: np.ndarray, tolerance: float = DEFAULT_CLASSIFICATION_TOLERANCE
) -> tuple[EtaOperator, Classification]:
    """Classify the spectrum of a small matrix and build its ``eta``."""
    values, vectors = dense_eigenpairs(hamiltonian)
    classification = classify(values, tolerance)
    states = [(values[k], vectors[:, k]) for k in range(values.size)]
    return build_eta(states, classification), classification


def quasi_hermiticity_residual(eta: EtaOperator, hamiltonian: np.ndarray) -> float:
    """Relative Frobenius norm of ``eta H - H^dagger eta``.

    When ``eta`` records its supporting right states the commutator is
    evaluated on their span only, which removes kernel directions and the
    part of the space not covered by the states.
    """
    hamiltonian = np.asarray(hamiltonian, dtype=complex)
    if hamiltonian.shape != eta.matrix.shape:
        raise ValueError("eta and hamiltonian must have the same shape")
    commutator = eta.matrix @ hamiltonian - hamiltonian.conj().T @ eta.matrix
    denominator = np.linalg.norm(eta.matrix) * np.linalg.norm(hamiltonian)
    if eta.right_states is not None:
        commutator = commutator @ eta.right_states
        denominator *= np.linalg.norm(eta.right_states)
    if denominator == 0.0:
        return 0.0
    return float(np.linalg.norm(commutator) / denominator)


def _check_consistency(states: Sequence[tuple[complex, np.ndarray]], classification: Classification) -> None:
    if classification.size != len(states):
        raise EtaConstructionError(
            f"classification covers {classification.size} states, {len(states)} given"
        )
    indices = list(classification.real_indices) + list(classification.unpaired_indices)
    for pair in classification.pair_indices:
        indices.extend(pair)
    outside = [index for index in indices if not 0 <= index < len(states)]
    if outside:
        raise EtaConstructionError(f"indices {outside} are out of range for {len(states)} states")
    real = set(classification.real_indices)
    for plus, minus in classification.pair_indices:
        if plus in real or minus in real:
            raise EtaConstructionError(f"pair ({plus}, {minus}) points at a real-marked state")
    if not classification.is_partition:
        raise EtaConstructionError("classification index sets do not partition the states")
    sizes = {np.asarray(vector).size for _, vector in states}
    if len(sizes) > 1:
        raise EtaConstructionError("state vectors differ in length")
