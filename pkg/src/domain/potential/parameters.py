"""
Selectors naming individual potential parameters.

Root problems, sweeps and scans address "the depth of well 2" or "the
gain-loss of well 1" through a ``ParameterSelector``; this keeps the
residual maps generic over which parameters are free.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Sequence

import numpy as np

from .models import MultiWellPotential


class ParameterKind(str, Enum):
    """Per-well potential parameter addressed by a selector."""

    DEPTH = "depth"
    GAIN_LOSS = "gain_loss"
    WIDTH = "width"
    CENTER = "center"


@dataclass(frozen=True)
class ParameterSelector:
    """One scalar parameter of one well (1-based well index)."""

    kind: ParameterKind
    well: int

    def __post_init__(self) -> None:
        object.__setattr__(self, "kind", ParameterKind(self.kind))
        if self.well < 1:
            raise ValueError(f"well index must be >= 1, got {self.well}")

    @property
    def label(self) -> str:
        """Short column label, e.g. ``gain_loss_2``."""
        return f"{self.kind.value}_{self.well}"

    def get(self, potential: MultiWellPotential) -> float:
        return float(getattr(potential.well(self.well), self.kind.value))

    def set(self, potential: MultiWellPotential, value: float) -> MultiWellPotential:
        return potential.with_well(self.well, **{self.kind.value: float(value)})


def depth(well: int) -> ParameterSelector:
    return ParameterSelector(ParameterKind.DEPTH, well)


def gain_loss(well: int) -> ParameterSelector:
    return ParameterSelector(ParameterKind.GAIN_LOSS, well)


def get_values(
    potential: MultiWellPotential, selectors: Sequence[ParameterSelector]
) -> np.ndarray:
    """Current values of ``selectors`` as a float vector."""
    return np.array([s.get(potential) for s in selectors], dtype=float)


def apply_values(
    potential: MultiWellPotential,
    selectors: Sequence[ParameterSelector],
    values: Sequence[float] | np.ndarray,
) -> MultiWellPotential:
    """Return ``potential`` with each selected parameter replaced by its value."""
    if len(selectors) != len(values):
        raise ValueError("one value per selector is required")
    for selector, value in zip(selectors, values):
        potential = selector.set(potential, float(value))
    return potential
