"""
Value types for complex Gaussian multi-well potentials.

All types are frozen value objects: no I/O, no logging, safe to share
between threads.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace

import numpy as np


@dataclass(frozen=True)
class GaussianWell:
    """One Gaussian well ``(depth + i*gain_loss) * exp(-(x-center)^2 / (2 width^2))``.

    Attributes:
        depth: Real part of the well amplitude (negative for an attractive well).
        gain_loss: Imaginary part of the amplitude; positive is gain, negative loss.
        width: Gaussian standard deviation, strictly positive.
        center: Position of the well minimum.
    """

    depth: float
    gain_loss: float
    width: float
    center: float

    def __post_init__(self) -> None:
        for name in ("depth", "gain_loss", "width", "center"):
            value = getattr(self, name)
            if not math.isfinite(value):
                raise ValueError(f"GaussianWell.{name} must be finite, got {value!r}")
        if self.width <= 0.0:
            raise ValueError(f"GaussianWell.width must be > 0, got {self.width!r}")

    @property
    def amplitude(self) -> complex:
        return complex(self.depth, self.gain_loss)


@dataclass(frozen=True)
class MultiWellPotential:
    """An ordered superposition of ``N >= 1`` Gaussian wells.

    Wells are ordered by strictly increasing center.
    """

    wells: tuple[GaussianWell, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "wells", tuple(self.wells))
        if len(self.wells) < 1:
            raise ValueError("MultiWellPotential needs at least one well")
        centers = [w.center for w in self.wells]
        if any(b <= a for a, b in zip(centers, centers[1:])):
            raise ValueError(
                f"well centers must be strictly increasing, got {centers}"
            )

    @classmethod
    def from_arrays(
        cls,
        depths: list[float] | np.ndarray,
        gain_losses: list[float] | np.ndarray,
        widths: list[float] | np.ndarray,
        centers: list[float] | np.ndarray,
    ) -> "MultiWellPotential":
        """Build a potential from parallel per-well sequences."""
        lengths = {len(depths), len(gain_losses), len(widths), len(centers)}
        if len(lengths) != 1:
            raise ValueError("per-well sequences must have equal length")
        return cls(
            tuple(
                GaussianWell(float(v), float(g), float(s), float(a))
                for v, g, s, a in zip(depths, gain_losses, widths, centers)
            )
        )

    @property
    def n_wells(self) -> int:
        return len(self.wells)

    @property
    def depths(self) -> np.ndarray:
        return np.array([w.depth for w in self.wells])

    @property
    def gain_losses(self) -> np.ndarray:
        return np.array([w.gain_loss for w in self.wells])

    @property
    def widths(self) -> np.ndarray:
        return np.array([w.width for w in self.wells])

    @property
    def centers(self) -> np.ndarray:
        return np.array([w.center for w in self.wells])

    @property
    def is_real(self) -> bool:
        return all(w.gain_loss == 0.0 for w in self.wells)

    def well(self, n: int) -> GaussianWell:
        """Return well ``n`` (1-based)."""
        if not 1 <= n <= self.n_wells:
            raise IndexError(f"well index {n} out of range 1..{self.n_wells}")
        return self.wells[n - 1]

    def with_well(self, n: int, **changes: float) -> "MultiWellPotential":
        """Return a copy with fields of well ``n`` (1-based) replaced."""
        well = self.well(n)
        wells = list(self.wells)
        wells[n - 1] = replace(well, **changes)
        return MultiWellPotential(tuple(wells))

    def with_gain_losses(self, gain_losses: list[float] | np.ndarray) -> "MultiWellPotential":
        if len(gain_losses) != self.n_wells:
            raise ValueError("one gain-loss value per well is required")
        return MultiWellPotential(
            tuple(replace(w, gain_loss=float(g)) for w, g in zip(self.wells, gain_losses))
        )

    def conjugate(self) -> "MultiWellPotential":
        """Potential with every gain-loss parameter negated (complex conjugate)."""
        return self.with_gain_losses(-self.gain_losses)
