"""
Specifications and records of parameter sweeps, lattice scans and boundary traces.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from typing import Any, Optional

import numpy as np

from src.domain.grid_solver import DEFAULT_MAX_ITERATIONS, DEFAULT_TOLERANCE, Grid
from src.domain.matrix_model import REFERENCE_TUNNELING, TunnelingMode
from src.domain.potential import MultiWellPotential, ParameterSelector, depth
from src.domain.rootfind import DEFAULT_F_TOL, DEFAULT_MAX_EVALS, DEFAULT_STEP_SCALE, DEFAULT_X_TOL
from src.domain.symmetrization import DEFAULT_CLASSIFICATION_TOLERANCE

DEFAULT_COLLAPSE_TOLERANCE = 1e-3


class SeedMode(str, Enum):
    """Where the start point of each root search comes from."""

    MATRIX_MODEL = "matrix_model"
    PREVIOUS_POINT = "previous_point"
    EXPLICIT = "explicit"


class Backend(str, Enum):
    """Which Hamiltonian the balance conditions are imposed on.

    GRID uses the finite-difference spectrum; MATRIX_MODEL uses the
    tight-binding model built from the effective Hamiltonian.
    """

    GRID = "grid"
    MATRIX_MODEL = "matrix_model"


class FailureKind(str, Enum):
    """Why a point of a sweep, scan or boundary ray has no balanced solution."""

    ROOT_NOT_CONVERGED = "root_not_converged"
    MODEL_INFEASIBLE = "model_infeasible"
    GAIN_LOSS_IMAGINARY = "gain_loss_imaginary"
    SOLVER_ERROR = "solver_error"


@dataclass(frozen=True)
class SolverOptions:
    """Numerical settings shared by every point of a continuation run."""

    tolerance: float = DEFAULT_TOLERANCE
    max_iterations: int = DEFAULT_MAX_ITERATIONS
    x_tol: float = DEFAULT_X_TOL
    f_tol: float = DEFAULT_F_TOL
    max_evals: int = DEFAULT_MAX_EVALS
    step_scale: float = DEFAULT_STEP_SCALE
    classification_tolerance: float = DEFAULT_CLASSIFICATION_TOLERANCE
    collapse_tolerance: float = DEFAULT_COLLAPSE_TOLERANCE
    tunneling_mode: TunnelingMode = TunnelingMode.RECOMPUTED
    frozen_tunneling: float = REFERENCE_TUNNELING

    def __post_init__(self) -> None:
        for name in ("tolerance", "x_tol", "f_tol", "step_scale", "classification_tolerance", "collapse_tolerance"):
            if getattr(self, name) <= 0.0:
                raise ValueError(f"{name} must be > 0")
        if self.max_evals < 1 or self.max_iterations < 1:
            raise ValueError("max_evals and max_iterations must be >= 1")
        object.__setattr__(self, "tunneling_mode", TunnelingMode(self.tunneling_mode))

    def root_options(self) -> dict[str, Any]:
        return {
            "tol": self.tolerance,
            "max_iterations": self.max_iterations,
            "max_evals": self.max_evals,
            "x_tol": self.x_tol,
            "f_tol": self.f_tol,
            "step_scale": self.step_scale,
        }


@dataclass(frozen=True)
class SweepSpec:
    """A line through parameter space with balanced parameters solved at each value.

    Attributes:
        base_potential: Potential supplying every parameter not swept.
        swept: The parameter varied along the line.
        values: Strictly monotone, finite swept values.
        solved: Parameters determined by the root search.
        seed_mode: Start point policy.
        grid: Discretization grid.
        explicit_seed: Start point for EXPLICIT mode and the first point of
            PREVIOUS_POINT mode; defaults to the base values.
        backend: GRID or MATRIX_MODEL.
        options: Numerical settings.
    """

    base_potential: MultiWellPotential
    swept: ParameterSelector
    values: tuple[float, ...]
    solved: tuple[ParameterSelector, ...]
    seed_mode: SeedMode
    grid: Grid
    explicit_seed: Optional[tuple[float, ...]] = None
    backend: Backend = Backend.GRID
    options: SolverOptions = field(default_factory=SolverOptions)

    def __post_init__(self) -> None:
        values = tuple(float(v) for v in self.values)
        if not values:
            raise ValueError("values must not be empty")
        if not all(np.isfinite(values)):
            raise ValueError("values must be finite")
        steps = np.diff(values)
        if steps.size and not (np.all(steps > 0.0) or np.all(steps < 0.0)):
            raise ValueError("values must be strictly monotone")
        solved = tuple(self.solved)
        if not 1 <= len(solved) <= self.base_potential.n_wells:
            raise ValueError("between 1 and N parameters must be solved")
        if self.swept in solved:
            raise ValueError(f"{self.swept.label} cannot be both swept and solved")
        for selector in (self.swept, *solved):
            if selector.well > self.base_potential.n_wells:
                raise ValueError(f"{selector.label} addresses a missing well")
        seed_mode = SeedMode(self.seed_mode)
        explicit = None if self.explicit_seed is None else tuple(float(v) for v in self.explicit_seed)
        if seed_mode is SeedMode.EXPLICIT and explicit is None:
            raise ValueError("explicit seed mode requires explicit_seed")
        if explicit is not None and len(explicit) != len(solved):
            raise ValueError("explicit_seed needs one value per solved parameter")
        if seed_mode is SeedMode.MATRIX_MODEL and self.base_potential.n_wells not in (2, 3):
            raise ValueError("matrix-model seeding supports 2 or 3 wells")
        object.__setattr__(self, "values", values)
        object.__setattr__(self, "solved", solved)
        object.__setattr__(self, "seed_mode", seed_mode)
        object.__setattr__(self, "explicit_seed", explicit)
        object.__setattr__(self, "backend", Backend(self.backend))


@dataclass(frozen=True)
class SweepRecord:
    """Outcome at one swept value; write-once.

    ``derived`` holds quantities specific to the run, e.g. ``delta_depth``
    for lattice scans or model gain-loss terms for the matrix backend.
    """

    swept_value: float
    solved: tuple[float, ...]
    energies: tuple[complex, ...]
    classification: str
    converged: bool
    failure_kind: Optional[FailureKind] = None
    residual_norm: float = float("nan")
    evaluations: int = 0
    seed: tuple[float, ...] = ()
    derived: dict[str, float] = field(default_factory=dict)


@dataclass(frozen=True)
class ScanSpec:
    """Lattice over ``(Gamma_1, Gamma_2)`` with one parameter solved per point."""

    base_potential: MultiWellPotential
    grid: Grid
    gain_loss_1: tuple[float, ...]
    gain_loss_2: tuple[float, ...]
    solve_for: ParameterSelector = field(default_factory=lambda: depth(2))
    backend: Backend = Backend.GRID
    options: SolverOptions = field(default_factory=SolverOptions)

    def __post_init__(self) -> None:
        if self.base_potential.n_wells != 2:
            raise ValueError("lattice scans need a double well")
        rows = tuple(float(v) for v in self.gain_loss_1)
        cols = tuple(float(v) for v in self.gain_loss_2)
        if not rows or not cols:
            raise ValueError("lattice axes must not be empty")
        if not (all(np.isfinite(rows)) and all(np.isfinite(cols))):
            raise ValueError("lattice values must be finite")
        object.__setattr__(self, "gain_loss_1", rows)
        object.__setattr__(self, "gain_loss_2", cols)
        object.__setattr__(self, "backend", Backend(self.backend))


@dataclass(frozen=True)
class BoundarySpec:
    """Radial boundary trace in the plane of two depths at fixed remaining depths.

    Attributes:
        base_potential: Start point; its depths of ``plane`` give the origin.
        grid: Discretization grid.
        angles: Ray directions in radians, measured from the first plane axis.
        plane: The two depth parameters spanning the plane.
        start_gain_losses: Balanced gain-loss terms at the start point or a
            guess for them; None seeds from the matrix model.
        initial_step: First radial step in depth units.
        min_step: Step below which halving stops.
        max_radius: Largest radius explored on a ray.
        backend: GRID or MATRIX_MODEL.
        options: Numerical settings.
    """

    base_potential: MultiWellPotential
    grid: Grid
    angles: tuple[float, ...]
    plane: tuple[ParameterSelector, ParameterSelector] = field(
        default_factory=lambda: (depth(1), depth(3))
    )
    start_gain_losses: Optional[tuple[float, ...]] = None
    initial_step: float = 0.05
    min_step: float = 1e-3
    max_radius: float = 1.0
    backend: Backend = Backend.GRID
    options: SolverOptions = field(default_factory=SolverOptions)

    def __post_init__(self) -> None:
        if self.base_potential.n_wells != 3:
            raise ValueError("boundary tracing needs a triple well")
        angles = tuple(float(a) for a in self.angles)
        if not angles or not all(np.isfinite(angles)):
            raise ValueError("at least one finite angle is required")
        if not 0.0 < self.min_step <= self.initial_step <= self.max_radius:
            raise ValueError("need 0 < min_step <= initial_step <= max_radius")
        if self.start_gain_losses is not None and len(self.start_gain_losses) != 3:
            raise ValueError("start_gain_losses needs three values")
        object.__setattr__(self, "angles", angles)
        object.__setattr__(self, "backend", Backend(self.backend))


@dataclass(frozen=True)
class BoundaryPoint:
    """Last feasible point on one ray."""

    angle: float
    radius: float
    coordinates: tuple[float, float]
    gain_losses: tuple[float, ...]
    failure_kind: Optional[FailureKind]


@dataclass(frozen=True)
class BoundaryTrace:
    """Boundary polyline ordered by angle, with the solved start point."""

    origin: tuple[float, float]
    start_gain_losses: tuple[float, ...]
    points: tuple[BoundaryPoint, ...]

    @property
    def polyline(self) -> np.ndarray:
        return np.array([point.coordinates for point in self.points], dtype=float)
