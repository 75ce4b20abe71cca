"""
Line sweeps and lattice scans of the balance conditions.

Each point is an independent root search except for its start value:
with ``previous_point`` seeding a sweep runs in order, otherwise its
points are distributed over a thread pool. Lattice rows run in parallel
and the points of one row are seeded from their nearest solved
neighbour, so the records never depend on the number of workers.
"""

from __future__ import annotations

import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import replace
from typing import Callable, Optional, Sequence

import numpy as np

from src.domain.errors import GainLossError, InfeasibilityReason, InfeasibleSeedError
from src.domain.grid_solver import Grid
from src.domain.potential import MultiWellPotential, ParameterKind, ParameterSelector, apply_values, get_values
from src.domain.rootfind import solve_hybrid
from src.domain.symmetrization import classify

from .models import Backend, FailureKind, ScanSpec, SeedMode, SolverOptions, SweepRecord, SweepSpec
from .problems import build_problem, lowest_energies, model_gain_losses
from .seeding import seed_from_matrix_model

logger = logging.getLogger("gainloss.continuation")


def sweep_line(spec: SweepSpec, jobs: int = 1) -> list[SweepRecord]:
    """Solve the balance problem at every swept value, in sweep order.

    Per-point failures are recorded, never raised.
    """
    if spec.seed_mode is SeedMode.PREVIOUS_POINT:
        records: list[SweepRecord] = []
        seed = np.array(spec.explicit_seed) if spec.explicit_seed is not None else None
        for value in spec.values:
            record = _sweep_point(spec, value, seed)
            if record.converged:
                seed = np.array(record.solved)
            records.append(record)
        return records

    explicit = None if spec.explicit_seed is None else np.array(spec.explicit_seed)
    return parallel_map(lambda value: _sweep_point(spec, value, explicit), spec.values, jobs)


def grid_scan(spec: ScanSpec, jobs: int = 1) -> list[list[SweepRecord]]:
    """Row-major lattice over ``(Gamma_1, Gamma_2)`` solving for ``spec.solve_for``.

    Record ``derived`` entries: ``gain_loss_1``, ``gain_loss_2``, ``delta_depth`` (``V_2 - V_1``)
    and ``mu_1`` (real part of the ground-state energy).
    """
    return parallel_map(lambda row: _scan_row(spec, row), range(len(spec.gain_loss_1)), jobs)


def parallel_map(function: Callable, items: Sequence, jobs: int) -> list:
    """``[function(item) for item in items]`` on up to ``jobs`` threads, order preserved."""
    items = list(items)
    if jobs <= 1 or len(items) <= 1:
        return [function(item) for item in items]
    with ThreadPoolExecutor(max_workers=jobs, thread_name_prefix="gainloss-worker") as executor:
        return list(executor.map(function, items))


# ---------------------------------------------------------------------------
# Internal helpers
# ---------------------------------------------------------------------------


def _sweep_point(spec: SweepSpec, value: float, seed: Optional[np.ndarray]) -> SweepRecord:
    potential = spec.swept.set(spec.base_potential, value)
    record = solve_point(
        potential,
        spec.solved,
        spec.grid,
        spec.backend,
        spec.options,
        swept_value=value,
        seed=seed,
        use_matrix_model=spec.seed_mode is SeedMode.MATRIX_MODEL,
    )
    logger.info(
        "Sweep point solved" if record.converged else "Sweep point failed",
        extra={
            "sweptValue": value,
            "converged": record.converged,
            "failureKind": record.failure_kind.value if record.failure_kind else None,
            "residualNorm": record.residual_norm,
        },
    )
    return record


def solve_point(
    potential: MultiWellPotential,
    solved: Sequence[ParameterSelector],
    grid: Grid,
    backend: Backend,
    options: SolverOptions,
    *,
    swept_value: float,
    seed: Optional[np.ndarray] = None,
    use_matrix_model: bool = False,
) -> SweepRecord:
    """Seed, solve and describe one balance problem.

    Without a seed the current values in ``potential`` are used, or the
    matrix-model estimate when ``use_matrix_model`` is set.
    """
    solved = tuple(solved)
    states = potential.n_wells
    try:
        if use_matrix_model:
            seed = seed_from_matrix_model(potential, grid, solved, options)
        elif seed is None:
            seed = get_values(potential, solved)
        problem = build_problem(potential, solved, grid, backend, options)
        result = solve_hybrid(problem.with_initial_guess(seed))
    except InfeasibleSeedError as exc:
        kind = (
            FailureKind.GAIN_LOSS_IMAGINARY
            if exc.reason is InfeasibilityReason.IMAGINARY
            else FailureKind.MODEL_INFEASIBLE
        )
        return _failed(swept_value, solved, kind, seed)
    except (GainLossError, ValueError) as exc:
        logger.debug("Point could not be solved", extra={"sweptValue": swept_value, "error": str(exc)})
        return _failed(swept_value, solved, FailureKind.SOLVER_ERROR, seed)

    solution = tuple(float(v) for v in result.solution)
    seed_values = tuple(float(v) for v in seed)
    if not result.converged:
        return _failed(
            swept_value, solved, FailureKind.ROOT_NOT_CONVERGED, seed,
            solution=solution, residual_norm=result.residual_norm, evaluations=result.evaluations,
        )
    if _collapsed(solved, solution, potential.n_wells, options.collapse_tolerance):
        return _failed(
            swept_value, solved, FailureKind.GAIN_LOSS_IMAGINARY, seed,
            solution=solution, residual_norm=result.residual_norm, evaluations=result.evaluations,
        )

    balanced = apply_values(potential, solved, solution)
    try:
        energies = lowest_energies(balanced, grid, states, backend, options)
        derived = model_gain_losses(balanced, grid, options) if backend is Backend.MATRIX_MODEL else {}
    except GainLossError:
        return _failed(swept_value, solved, FailureKind.SOLVER_ERROR, seed, solution=solution)
    return SweepRecord(
        swept_value=float(swept_value),
        solved=solution,
        energies=tuple(complex(e) for e in energies),
        classification=classify(energies, options.classification_tolerance).summary,
        converged=True,
        residual_norm=result.residual_norm,
        evaluations=result.evaluations,
        seed=seed_values,
        derived=derived,
    )


def _collapsed(
    solved: Sequence[ParameterSelector], solution: Sequence[float], n_wells: int, tolerance: float
) -> bool:
    """True for the trivial root of a problem whose unknowns are all gain-loss terms."""
    if len(solved) < 2 or len(solved) != n_wells:
        return False
    if any(selector.kind is not ParameterKind.GAIN_LOSS for selector in solved):
        return False
    return float(np.linalg.norm(solution)) < tolerance


def _failed(
    swept_value: float,
    solved: Sequence[ParameterSelector],
    kind: FailureKind,
    seed: Optional[np.ndarray],
    *,
    solution: Optional[tuple[float, ...]] = None,
    residual_norm: float = float("nan"),
    evaluations: int = 0,
) -> SweepRecord:
    return SweepRecord(
        swept_value=float(swept_value),
        solved=solution if solution is not None else tuple(float("nan") for _ in solved),
        energies=(),
        classification="",
        converged=False,
        failure_kind=kind,
        residual_norm=residual_norm,
        evaluations=evaluations,
        seed=() if seed is None else tuple(float(v) for v in seed),
    )


def _scan_row(spec: ScanSpec, row: int) -> list[SweepRecord]:
    gamma1 = spec.gain_loss_1[row]
    columns = spec.gain_loss_2
    base = spec.base_potential.with_well(1, gain_loss=gamma1)
    solved = (spec.solve_for,)
    base_value = spec.solve_for.get(spec.base_potential)

    records: dict[int, SweepRecord] = {}
    order = sorted(range(len(columns)), key=lambda c: (abs(columns[c] + gamma1), c))
    for column in order:
        potential = base.with_well(2, gain_loss=columns[column])
        if gamma1 == 0.0 and columns[column] == 0.0:
            records[column] = _hermitian_corner(spec, potential, base_value)
            continue
        neighbours = [c for c in records if records[c].converged]
        seed_value = (
            records[min(neighbours, key=lambda c: (abs(c - column), c))].solved[0]
            if neighbours
            else base_value
        )
        record = solve_point(
            potential, solved, spec.grid, spec.backend, spec.options,
            swept_value=columns[column], seed=np.array([seed_value]),
        )
        records[column] = _with_scan_quantities(spec, record, gamma1)
    logger.info(
        "Lattice row finished",
        extra={"gainLoss1": gamma1, "converged": sum(r.converged for r in records.values())},
    )
    return [records[column] for column in range(len(columns))]


def _hermitian_corner(spec: ScanSpec, potential: MultiWellPotential, base_value: float) -> SweepRecord:
    balanced = spec.solve_for.set(potential, base_value)
    energies = lowest_energies(balanced, spec.grid, 2, spec.backend, spec.options)
    record = SweepRecord(
        swept_value=0.0,
        solved=(base_value,),
        energies=tuple(complex(e) for e in energies),
        classification=classify(energies, spec.options.classification_tolerance).summary,
        converged=True,
        residual_norm=0.0,
        seed=(base_value,),
    )
    return _with_scan_quantities(spec, record, 0.0)


def _with_scan_quantities(spec: ScanSpec, record: SweepRecord, gamma1: float) -> SweepRecord:
    derived = dict(record.derived)
    derived["gain_loss_1"] = gamma1
    derived["gain_loss_2"] = record.swept_value
    if record.converged:
        balanced = spec.solve_for.set(spec.base_potential, record.solved[0])
        derived["delta_depth"] = balanced.well(2).depth - balanced.well(1).depth
        derived["mu_1"] = record.energies[0].real
    return replace(record, derived=derived)
