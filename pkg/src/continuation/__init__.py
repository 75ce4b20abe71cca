"""
Parameter continuation of balanced configurations.

Public API:
    - seed_from_matrix_model(), calibrate_depth(): start points and depth calibration.
    - sweep_line(): balanced parameters along a line of one swept parameter.
    - grid_scan(): lattice over (Gamma_1, Gamma_2) solving for one depth.
    - trace_feasibility_boundary(), boundary_overlap(): boundary of the
      balanced region in a depth plane and the overlap of two boundaries.
"""

from .boundary import boundary_overlap, trace_feasibility_boundary
from .models import (
    DEFAULT_COLLAPSE_TOLERANCE,
    Backend,
    BoundaryPoint,
    BoundarySpec,
    BoundaryTrace,
    FailureKind,
    ScanSpec,
    SeedMode,
    SolverOptions,
    SweepRecord,
    SweepSpec,
)
from .problems import build_problem, lowest_energies, model_hamiltonian, model_of
from .seeding import calibrate_depth, seed_from_matrix_model
from .sweep import grid_scan, parallel_map, solve_point, sweep_line

__all__ = [
    "Backend",
    "BoundaryPoint",
    "BoundarySpec",
    "BoundaryTrace",
    "DEFAULT_COLLAPSE_TOLERANCE",
    "FailureKind",
    "ScanSpec",
    "SeedMode",
    "SolverOptions",
    "SweepRecord",
    "SweepSpec",
    "build_problem",
    "lowest_energies",
    "model_hamiltonian",
    "model_of",
    "calibrate_depth",
    "seed_from_matrix_model",
    "sweep_line",
    "grid_scan",
    "parallel_map",
    "solve_point",
    "trace_feasibility_boundary",
    "boundary_overlap",
]
