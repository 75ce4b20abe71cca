"""
Boundary of the balanced region in the plane of two well depths.

From a balanced start point the solution is continued outward along rays.
A step is accepted when the root search converges to non-vanishing
gain-loss terms and the on-site energies keep their strict ordering; on
failure the step is halved until it drops below ``min_step``. The last
accepted point of each ray is a boundary vertex.
"""

from __future__ import annotations

import logging
import math
from typing import Optional

import numpy as np
from matplotlib.path import Path

from src.domain.errors import ErrorCategory, GainLossError, InfeasibilityReason, InfeasibleSeedError
from src.domain.matrix_model import tight_binding_balance, three_well_admissible
from src.domain.potential import MultiWellPotential, gain_loss, real_part

from .models import Backend, BoundaryPoint, BoundarySpec, BoundaryTrace, FailureKind, SweepRecord
from .problems import model_of
from .seeding import seed_from_matrix_model
from .sweep import parallel_map, solve_point

logger = logging.getLogger("gainloss.continuation")

_GAIN_LOSSES = tuple(gain_loss(n) for n in (1, 2, 3))


def trace_feasibility_boundary(spec: BoundarySpec, jobs: int = 1) -> BoundaryTrace:
    """Trace the boundary around ``spec.base_potential``.

    Raises:
        InfeasibleSeedError: If the start point has no balanced solution.
        GainLossError: If the root search at the start point fails.
    """
    origin = tuple(float(selector.get(spec.base_potential)) for selector in spec.plane)
    seed = (
        np.array(spec.start_gain_losses, dtype=float)
        if spec.start_gain_losses is not None
        else seed_from_matrix_model(spec.base_potential, spec.grid, _GAIN_LOSSES, spec.options)
    )
    kind, start = _step(spec, spec.base_potential, seed, 0.0)
    if kind is not None:
        if kind is FailureKind.ROOT_NOT_CONVERGED or kind is FailureKind.SOLVER_ERROR:
            raise GainLossError(
                "boundary start point could not be balanced", ErrorCategory.CONVERGENCE, {"origin": origin}
            )
        reason = InfeasibilityReason.IMAGINARY if kind is FailureKind.GAIN_LOSS_IMAGINARY else InfeasibilityReason.ORDERING
        raise InfeasibleSeedError(reason, f"boundary start point {origin} is infeasible ({kind.value})")

    points = parallel_map(lambda angle: _march(spec, angle, origin, start), spec.angles, jobs)
    points = sorted(points, key=lambda point: (point.angle % (2.0 * math.pi), point.angle))
    return BoundaryTrace(origin=origin, start_gain_losses=tuple(start), points=tuple(points))


def boundary_overlap(first: np.ndarray, second: np.ndarray, resolution: int = 400) -> float:
    """Jaccard index ``|A & B| / |A | B|`` of the regions enclosed by two polylines.

    Both regions are rasterized on a common ``resolution x resolution``
    lattice covering their bounding boxes.
    """
    first = np.asarray(first, dtype=float)
    second = np.asarray(second, dtype=float)
    for polyline in (first, second):
        if polyline.ndim != 2 or polyline.shape[1] != 2 or polyline.shape[0] < 3:
            raise ValueError("polylines need at least three (x, y) vertices")
    if resolution < 2:
        raise ValueError("resolution must be >= 2")

    corners = np.vstack([first, second])
    low, high = corners.min(axis=0), corners.max(axis=0)
    xs = np.linspace(low[0], high[0], resolution)
    ys = np.linspace(low[1], high[1], resolution)
    samples = np.column_stack([axis.ravel() for axis in np.meshgrid(xs, ys)])

    inside_first = _polygon(first).contains_points(samples)
    inside_second = _polygon(second).contains_points(samples)
    union = np.count_nonzero(inside_first | inside_second)
    if union == 0:
        return 0.0
    return float(np.count_nonzero(inside_first & inside_second) / union)


def _polygon(polyline: np.ndarray) -> Path:
    return Path(np.vstack([polyline, polyline[:1]]), closed=True)


def _coordinates(origin: tuple[float, float], angle: float, radius: float) -> tuple[float, float]:
    return origin[0] + radius * math.cos(angle), origin[1] + radius * math.sin(angle)


def _at(spec: BoundarySpec, origin: tuple[float, float], angle: float, radius: float) -> MultiWellPotential:
    first, second = _coordinates(origin, angle, radius)
    potential = spec.plane[0].set(spec.base_potential, first)
    return spec.plane[1].set(potential, second)


def _march(
    spec: BoundarySpec, angle: float, origin: tuple[float, float], start: np.ndarray
) -> BoundaryPoint:
    radius, step = 0.0, spec.initial_step
    current = np.array(start, dtype=float)
    failure: Optional[FailureKind] = None
    while step >= spec.min_step and radius < spec.max_radius:
        trial = min(radius + step, spec.max_radius)
        kind, solution = _step(spec, _at(spec, origin, angle, trial), current, trial)
        if kind is None:
            radius, current = trial, solution
            continue
        failure = kind
        step *= 0.5

    logger.info(
        "Boundary ray finished",
        extra={"angle": angle, "radius": radius, "failureKind": failure.value if failure else None},
    )
    return BoundaryPoint(
        angle=angle,
        radius=radius,
        coordinates=_coordinates(origin, angle, radius),
        gain_losses=tuple(float(v) for v in current),
        failure_kind=failure if radius < spec.max_radius else None,
    )


def _step(
    spec: BoundarySpec, potential: MultiWellPotential, seed: np.ndarray, radius: float
) -> tuple[Optional[FailureKind], np.ndarray]:
    """Balance ``potential`` from ``seed``; returns the failure kind or the solution."""
    kind = _model_failure(spec, potential)
    if kind is not None:
        return kind, seed
    record: SweepRecord = solve_point(
        potential, _GAIN_LOSSES, spec.grid, spec.backend, spec.options, swept_value=radius, seed=seed
    )
    if not record.converged:
        return record.failure_kind, seed
    solution = np.array(record.solved, dtype=float)
    if spec.backend is Backend.MATRIX_MODEL:
        balanced = model_of(potential.with_gain_losses(solution), spec.grid, spec.options)
        if not three_well_admissible(balanced.epsilon, balanced.gamma):
            return FailureKind.MODEL_INFEASIBLE, seed
    return None, solution


def _model_failure(spec: BoundarySpec, potential: MultiWellPotential) -> Optional[FailureKind]:
    """Failure of the matrix-model seed map at ``potential``, if any.

    On the grid backend only the ordering of the on-site energies counts;
    the model's own imaginary-parameter boundary is not imposed on the
    continuous problem.
    """
    try:
        model = model_of(real_part(potential), spec.grid, spec.options)
    except GainLossError:
        return FailureKind.SOLVER_ERROR
    e1, e2, e3 = model.epsilon
    if not (e1 < e2 < e3 or e1 > e2 > e3):
        return FailureKind.MODEL_INFEASIBLE
    if spec.backend is Backend.GRID:
        return None
    try:
        tight_binding_balance(model.epsilon, model.tunneling(spec.options.tunneling_mode, spec.options.frozen_tunneling))
    except InfeasibleSeedError as exc:
        if exc.reason is InfeasibilityReason.IMAGINARY:
            return FailureKind.GAIN_LOSS_IMAGINARY
        return FailureKind.MODEL_INFEASIBLE
    return None
