"""
Split a spectrum into real eigenvalues, complex conjugate pairs and the rest.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

DEFAULT_CLASSIFICATION_TOLERANCE = 1e-7


@dataclass(frozen=True)
class Classification:
    """Index sets partitioning a spectrum.

    Attributes:
        real_indices: States with ``|Im mu| <= tolerance * scale``, ascending index.
        pair_indices: ``(n_plus, n_minus)`` with ``Im mu[n_plus] > 0``, ordered by
            ascending (real, imaginary) part of ``mu[n_plus]``.
        unpaired_indices: Complex values without a conjugate partner, ascending index.
        tolerance: Relative tolerance used for the split.
        size: Length of the classified spectrum.
    """

    real_indices: tuple[int, ...]
    pair_indices: tuple[tuple[int, int], ...]
    unpaired_indices: tuple[int, ...]
    tolerance: float
    size: int

    def __post_init__(self) -> None:
        if self.tolerance <= 0.0:
            raise ValueError(f"tolerance must be > 0, got {self.tolerance}")

    @property
    def is_partition(self) -> bool:
        """True when the index sets cover ``0..size-1`` exactly once."""
        covered = list(self.real_indices) + list(self.unpaired_indices)
        for plus, minus in self.pair_indices:
            covered.extend((plus, minus))
        return sorted(covered) == list(range(self.size))

    @property
    def is_conjugation_closed(self) -> bool:
        return not self.unpaired_indices

    @property
    def labels(self) -> tuple[str, ...]:
        """Per-index label: ``real``, ``pair`` or ``unpaired``."""
        labels = ["unpaired"] * self.size
        for index in self.real_indices:
            labels[index] = "real"
        for plus, minus in self.pair_indices:
            labels[plus] = labels[minus] = "pair"
        return tuple(labels)

    @property
    def summary(self) -> str:
        """Compact form such as ``3R`` or ``1R+1P``."""
        parts = []
        if self.real_indices:
            parts.append(f"{len(self.real_indices)}R")
        if self.pair_indices:
            parts.append(f"{len(self.pair_indices)}P")
        if self.unpaired_indices:
            parts.append(f"{len(self.unpaired_indices)}U")
        return "+".join(parts) if parts else "0R"


def classify(
    energies: Sequence[complex], tolerance: float = DEFAULT_CLASSIFICATION_TOLERANCE
) -> Classification:
    """Greedy classification of ``energies``.

    With ``scale = max(1, max |mu|)``, values with ``|Im mu| <= tolerance * scale``
    are real. Remaining values with positive imaginary part are visited in
    ascending (real, imaginary) order and matched with the unmatched
    negative-imaginary value ``mu_j`` minimizing ``|mu_i - conj(mu_j)|``
    when that distance is below ``tolerance * scale``.
    """
    if tolerance <= 0.0:
        raise ValueError(f"tolerance must be > 0, got {tolerance}")
    values = np.asarray(energies, dtype=complex).ravel()
    size = values.size
    scale = max(1.0, float(np.abs(values).max())) if size else 1.0
    bound = tolerance * scale

    def by_value(index: int) -> tuple[float, float, int]:
        return values[index].real, values[index].imag, index

    real = [i for i in range(size) if abs(values[i].imag) <= bound]
    complex_indices = [i for i in range(size) if abs(values[i].imag) > bound]
    upper = sorted((i for i in complex_indices if values[i].imag > 0.0), key=by_value)
    lower = sorted((i for i in complex_indices if values[i].imag < 0.0), key=by_value)

    pairs: list[tuple[int, int]] = []
    unpaired: list[int] = []
    for plus in upper:
        if lower:
            distances = [abs(values[plus] - np.conj(values[minus])) for minus in lower]
            best = int(np.argmin(distances))
            if distances[best] <= bound:
                pairs.append((plus, lower.pop(best)))
                continue
        unpaired.append(plus)
    unpaired.extend(lower)

    return Classification(
        real_indices=tuple(real),
        pair_indices=tuple(pairs),
        unpaired_indices=tuple(sorted(unpaired)),
        tolerance=tolerance,
        size=size,
    )
