"""
Spectra of small dense complex matrices.

Tridiagonal matrices go through the characteristic polynomial built by the
three-term recurrence; its roots come from ``numpy.polynomial`` and are
polished by Newton steps on the recurrence itself. Anything else is
handed to ``scipy.linalg.eigvals``.
"""

from __future__ import annotations

import numpy as np
from numpy.polynomial import Polynomial
from scipy.linalg import eig, eigvals

MAX_DENSE_SIZE = 16
_TRIDIAGONAL_TOLERANCE = 1e-14
_NEWTON_STEPS = 3


def dense_eigenvalues(matrix: np.ndarray) -> np.ndarray:
    """All eigenvalues ordered by ascending real part, ties by imaginary part."""
    matrix = _as_square(matrix)
    if _is_tridiagonal(matrix):
        values = _tridiagonal_roots(matrix)
    else:
        values = eigvals(matrix)
    return _sort(np.asarray(values, dtype=complex))


def dense_eigenpairs(matrix: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Eigenvalues (sorted as in ``dense_eigenvalues``) with right eigenvectors as columns."""
    matrix = _as_square(matrix)
    values, vectors = eig(matrix)
    order = sorted(range(len(values)), key=lambda k: (values[k].real, values[k].imag))
    return values[order].astype(complex), vectors[:, order].astype(complex)


def _sort(values: np.ndarray) -> np.ndarray:
    order = np.lexsort((values.imag, values.real))
    return values[order]


def _as_square(matrix: np.ndarray) -> np.ndarray:
    matrix = np.atleast_2d(np.asarray(matrix, dtype=complex))
    size = matrix.shape[0]
    if matrix.shape != (size, size):
        raise ValueError(f"matrix must be square, got shape {matrix.shape}")
    if size > MAX_DENSE_SIZE:
        raise ValueError(f"dense spectra are limited to N <= {MAX_DENSE_SIZE}, got {size}")
    return matrix


def _is_tridiagonal(matrix: np.ndarray) -> bool:
    size = matrix.shape[0]
    if size < 3:
        return True
    rows, cols = np.indices(matrix.shape)
    outside = matrix[np.abs(rows - cols) > 1]
    return bool(np.all(np.abs(outside) <= _TRIDIAGONAL_TOLERANCE * max(1.0, np.abs(matrix).max())))


def _tridiagonal_roots(matrix: np.ndarray) -> np.ndarray:
    diagonal = np.diag(matrix)
    couplings = np.diag(matrix, 1) * np.diag(matrix, -1)
    if diagonal.size == 1:
        return diagonal.copy()

    previous = Polynomial([1.0 + 0j])
    current = Polynomial([-diagonal[0], 1.0])
    for k in range(1, diagonal.size):
        step = Polynomial([-diagonal[k], 1.0]) * current - couplings[k - 1] * previous
        previous, current = current, step

    roots = current.roots().astype(complex)
    return np.array([_polish(root, diagonal, couplings) for root in roots])


def _recurrence(value: complex, diagonal: np.ndarray, couplings: np.ndarray) -> tuple[complex, complex]:
    """Characteristic polynomial and its derivative at ``value``."""
    p_prev, p = 1.0 + 0j, value - diagonal[0]
    d_prev, d = 0.0 + 0j, 1.0 + 0j
    for k in range(1, diagonal.size):
        p_next = (value - diagonal[k]) * p - couplings[k - 1] * p_prev
        d_next = p + (value - diagonal[k]) * d - couplings[k - 1] * d_prev
        p_prev, p = p, p_next
        d_prev, d = d, d_next
    return p, d


def _polish(root: complex, diagonal: np.ndarray, couplings: np.ndarray) -> complex:
    value, _ = _recurrence(root, diagonal, couplings)
    best, best_abs = root, abs(value)
    candidate = root
    for _ in range(_NEWTON_STEPS):
        value, derivative = _recurrence(candidate, diagonal, couplings)
        if derivative == 0:
            break
        candidate = candidate - value / derivative
        candidate_abs = abs(_recurrence(candidate, diagonal, couplings)[0])
        if candidate_abs < best_abs:
            best, best_abs = candidate, candidate_abs
    return complex(best)
