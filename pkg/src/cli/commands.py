"""
Subcommands of the ``gainloss`` CLI.

Each command takes a validated ``RunConfig``, writes its artifacts to the
output directory and returns the process exit code. Numerical errors that
abort a whole command propagate as ``GainLossError`` and are mapped to exit
codes by ``__main__``; per-point failures of sweeps, scans and boundary
rays are written into the rows.
"""

from __future__ import annotations

import logging
import math
from pathlib import Path
from typing import Any, Callable, Sequence, TypeVar

import numpy as np

from src.continuation import (
    Backend,
    BoundarySpec,
    FailureKind,
    ScanSpec,
    SeedMode,
    SweepRecord,
    SweepSpec,
    calibrate_depth,
    grid_scan,
    seed_from_matrix_model,
    solve_point,
    sweep_line,
    trace_feasibility_boundary,
)
from src.domain.errors import ConfigError, GainLossError
from src.domain.grid_solver import balance_check, continuum_threshold, solve_lowest
from src.domain.matrix_model import (
    approximation_residual,
    assemble,
    build_basis,
    dense_eigenvalues,
    orthogonalize,
    tight_binding_matrix,
)
from src.domain.potential import ParameterSelector
from src.domain.symmetrization import classify, eta_for_matrix, quasi_hermiticity_residual

from . import __version__
from .artifacts import complex_entry, write_csv, write_json
from .config import RunConfig, parse_selector

logger = logging.getLogger("gainloss.cli")

T = TypeVar("T")

_INFEASIBLE_KINDS = (FailureKind.MODEL_INFEASIBLE, FailureKind.GAIN_LOSS_IMAGINARY)


def cmd_spectrum(config: RunConfig, out_dir: Path, jobs: int = 1) -> int:
    """Lowest states with classification and balance identity."""
    potential, grid, options = config.potential, config.grid, config.options
    spectrum = solve_lowest(
        potential, grid, config.states, options.tolerance, max_iterations=options.max_iterations
    )
    classification = classify(spectrum.energies, options.classification_tolerance)
    balance = [balance_check(pair, potential, grid) for pair in spectrum.pairs]

    rows = [
        (index + 1, pair.energy.real, pair.energy.imag, classification.labels[index], balance[index][1])
        for index, pair in enumerate(spectrum.pairs)
    ]
    write_csv(
        out_dir / "spectrum.csv",
        ("index", "re_mu", "im_mu", "class", "balance_integral"),
        rows,
        config_hash=config.sha256,
        version=__version__,
    )
    write_json(
        out_dir / "spectrum.meta.json",
        {
            "resolved_config": config.resolved,
            "grid": {
                "x_min": grid.x_min,
                "x_max": grid.x_max,
                "n_points": grid.n_points,
                "spacing": grid.spacing,
            },
            "tolerances": {
                "tolerance": options.tolerance,
                "classification_tolerance": options.classification_tolerance,
            },
            "residuals": [pair.residual for pair in spectrum.pairs],
            "balance_identity": [
                {"im_mu": im_mu, "integral": integral, "difference": abs(im_mu - integral)}
                for im_mu, integral in balance
            ],
            "classification": classification.summary,
            "near_exceptional": [pair.near_exceptional for pair in spectrum.pairs],
            "bound": [pair.bound for pair in spectrum.pairs],
            "continuum_threshold": continuum_threshold(potential, grid),
        },
        config_hash=config.sha256,
        version=__version__,
    )

    if config.task["write_wavefunctions"]:
        wavefunctions = grid.pad(spectrum.wavefunctions)
        header = ["x"]
        for index in range(1, len(spectrum) + 1):
            header += [f"re_psi_{index}", f"im_psi_{index}"]
        write_csv(
            out_dir / "wavefunctions.csv",
            header,
            (
                [x] + [part for psi in wavefunctions[:, point] for part in (psi.real, psi.imag)]
                for point, x in enumerate(grid.points)
            ),
            config_hash=config.sha256,
            version=__version__,
        )

    logger.info(
        "Spectrum written",
        extra={"states": len(spectrum), "classification": classification.summary, "outDir": str(out_dir)},
    )
    return 0


def cmd_matrix_model(config: RunConfig, out_dir: Path, jobs: int = 1) -> int:
    """Effective matrix model, compared with the continuous spectrum."""
    potential, grid, options = config.potential, config.grid, config.options
    basis = build_basis(potential, grid, options.tolerance)
    overlaps = assemble(basis, potential)
    model = orthogonalize(overlaps)
    size = model.size

    continuous = solve_lowest(potential, grid, size, options.tolerance, max_iterations=options.max_iterations)
    dense = dense_eigenvalues(model.h_eff)
    j = model.tunneling(options.tunneling_mode, options.frozen_tunneling)
    tight_binding = dense_eigenvalues(tight_binding_matrix(model.epsilon, model.gamma, j or 0.0))
    classification = classify(dense, options.classification_tolerance)

    try:
        eta, _ = eta_for_matrix(model.h_eff, options.classification_tolerance)
        symmetrization: Any = {
            "kernel_rank": eta.kernel_rank,
            "rank": eta.rank,
            "quasi_hermiticity_residual": quasi_hermiticity_residual(eta, model.h_eff),
        }
    except GainLossError as exc:
        logger.warning("Metric operator unavailable", extra={"error": str(exc)})
        symmetrization = None

    write_json(
        out_dir / "model.json",
        {
            "epsilon": model.epsilon,
            "gamma": model.gamma,
            "J": model.j,
            "tunneling": {
                "mode": options.tunneling_mode.value,
                "recomputed": model.j,
                "frozen": None if model.j is None else options.frozen_tunneling,
            },
            "offdiag_residual": model.offdiag_residual,
            "lowdin_residual": model.lowdin_residual,
            "basis_energies": basis.energies,
            "h_eff": [[complex_entry(value) for value in row] for row in model.h_eff],
            "dense_eigenvalues": [complex_entry(value) for value in dense],
            "tight_binding_eigenvalues": [complex_entry(value) for value in tight_binding],
            "continuous_eigenvalues": [complex_entry(value) for value in continuous.energies],
            "approximation_residuals": [
                approximation_residual(continuous, basis, overlaps, l) for l in range(1, size + 1)
            ],
            "classification": classification.summary,
            "symmetrization": symmetrization,
        },
        config_hash=config.sha256,
        version=__version__,
    )

    print(_comparison_block(dense, continuous.energies))
    return 0


def cmd_balance(config: RunConfig, out_dir: Path, jobs: int = 1) -> int:
    """Seed and solve one balance problem."""
    potential, grid, options, task = config.potential, config.grid, config.options, config.task
    solved = _selectors(task["solve"], "task.balance.solve", potential.n_wells)
    backend = Backend(task["backend"])

    if task["seed"] == SeedMode.MATRIX_MODEL.value:
        seed = seed_from_matrix_model(potential, grid, solved, options)
    else:
        seed = np.array(task["explicit_seed"], dtype=float)
    record = solve_point(potential, solved, grid, backend, options, swept_value=math.nan, seed=seed)

    classification = classify(record.energies, options.classification_tolerance) if record.energies else None
    write_json(
        out_dir / "balance.json",
        {
            "solve": list(task["solve"]),
            "backend": backend.value,
            "seed": record.seed,
            "root": record.solved,
            "residual_norm": record.residual_norm,
            "evaluations": record.evaluations,
            "converged": record.converged,
            "failure_kind": record.failure_kind.value if record.failure_kind else None,
            "classification": record.classification,
            "classes": None if classification is None else list(classification.labels),
            "energies": [complex_entry(value) for value in record.energies],
            "derived": record.derived,
        },
        config_hash=config.sha256,
        version=__version__,
    )

    if record.converged:
        logger.info("Balanced configuration found", extra={"root": list(record.solved)})
        return 0
    logger.error(
        "Balance problem not solved",
        extra={"failureKind": record.failure_kind.value, "residualNorm": record.residual_norm},
    )
    return 3 if record.failure_kind in _INFEASIBLE_KINDS else 2


def cmd_sweep(config: RunConfig, out_dir: Path, jobs: int = 1) -> int:
    """Balanced parameters along a swept parameter."""
    potential, grid, options, task = config.potential, config.grid, config.options, config.task
    n_wells = potential.n_wells
    field = "task.sweep"
    solved = _selectors(task["solve"], f"{field}.solve", n_wells)
    swept = parse_selector(task["swept"], f"{field}.swept", n_wells)

    calibration = task["calibrate"]
    if calibration is not None:
        potential, result = calibrate_depth(
            potential,
            grid,
            calibration["well"],
            calibration["target_energy"],
            calibration["state_index"],
            options,
        )
        write_json(
            out_dir / "sweep.meta.json",
            {
                "resolved_config": config.resolved,
                "calibration": {
                    **calibration,
                    "depth": float(result.solution[0]),
                    "residual_norm": result.residual_norm,
                    "evaluations": result.evaluations,
                },
            },
            config_hash=config.sha256,
            version=__version__,
        )

    spec = _build(
        field,
        lambda: SweepSpec(
            base_potential=potential,
            swept=swept,
            values=task["values"],
            solved=solved,
            seed_mode=SeedMode(task["seed_mode"]),
            grid=grid,
            explicit_seed=task["explicit_seed"],
            backend=Backend(task["backend"]),
            options=options,
        ),
    )
    records = sweep_line(spec, jobs)

    derived_keys = _derived_keys(records)
    header = [swept.label, *(s.label for s in solved), *_energy_columns(n_wells)]
    header += ["class", "converged", "failure_kind", "residual_norm", "evaluations", *derived_keys]
    rows = [
        [record.swept_value, *record.solved, *_energy_cells(record, n_wells), *_status_cells(record)]
        + [record.derived.get(key, math.nan) for key in derived_keys]
        for record in records
    ]
    write_csv(out_dir / "sweep.csv", header, rows, config_hash=config.sha256, version=__version__)
    return _exit_for_points(records)


def cmd_scan(config: RunConfig, out_dir: Path, jobs: int = 1) -> int:
    """Lattice over ``(Gamma_1, Gamma_2)`` solving for one depth."""
    potential, grid, options, task = config.potential, config.grid, config.options, config.task
    field = "task.scan"
    solve_for = parse_selector(task["solve_for"], f"{field}.solve_for", potential.n_wells)
    spec = _build(
        field,
        lambda: ScanSpec(
            base_potential=potential,
            grid=grid,
            gain_loss_1=task["gain_loss_1"],
            gain_loss_2=task["gain_loss_2"],
            solve_for=solve_for,
            backend=Backend(task["backend"]),
            options=options,
        ),
    )
    lattice = grid_scan(spec, jobs)

    header = ["gain_loss_1", "gain_loss_2", solve_for.label, "delta_depth", *_energy_columns(2)]
    header += ["class", "converged", "failure_kind", "residual_norm", "evaluations"]
    rows = [
        [
            record.derived["gain_loss_1"],
            record.derived["gain_loss_2"],
            record.solved[0],
            record.derived.get("delta_depth", math.nan),
            *_energy_cells(record, 2),
            *_status_cells(record),
        ]
        for row in lattice
        for record in row
    ]
    write_csv(out_dir / "scan.csv", header, rows, config_hash=config.sha256, version=__version__)
    return _exit_for_points([record for row in lattice for record in row])


def cmd_boundary(config: RunConfig, out_dir: Path, jobs: int = 1) -> int:
    """Boundary of the balanced region in a plane of two depths."""
    potential, grid, options, task = config.potential, config.grid, config.options, config.task
    field = "task.boundary"
    plane = _selectors(task["plane"], f"{field}.plane", potential.n_wells)
    start = task["start_gain_losses"]
    spec = _build(
        field,
        lambda: BoundarySpec(
            base_potential=potential,
            grid=grid,
            angles=task["angles"],
            plane=(plane[0], plane[1]),
            start_gain_losses=None if start is None else tuple(start),
            initial_step=task["initial_step"],
            min_step=task["min_step"],
            max_radius=task["max_radius"],
            backend=Backend(task["backend"]),
            options=options,
        ),
    )
    trace = trace_feasibility_boundary(spec, jobs)

    header = ["angle", "radius", plane[0].label, plane[1].label, "gain_loss_1", "gain_loss_2", "gain_loss_3"]
    header.append("failure_kind")
    rows = [
        [
            point.angle,
            point.radius,
            *point.coordinates,
            *point.gain_losses,
            point.failure_kind.value if point.failure_kind else "",
        ]
        for point in trace.points
    ]
    write_csv(out_dir / "boundary.csv", header, rows, config_hash=config.sha256, version=__version__)
    logger.info(
        "Boundary traced",
        extra={"origin": list(trace.origin), "startGainLosses": list(trace.start_gain_losses), "rays": len(rows)},
    )
    return 0


COMMAND_HANDLERS: dict[str, Callable[[RunConfig, Path, int], int]] = {
    "spectrum": cmd_spectrum,
    "matrix-model": cmd_matrix_model,
    "balance": cmd_balance,
    "sweep": cmd_sweep,
    "scan": cmd_scan,
    "boundary": cmd_boundary,
}


# ---------------------------------------------------------------------------
# Internal helpers
# ---------------------------------------------------------------------------


def _build(field: str, factory: Callable[[], T]) -> T:
    try:
        return factory()
    except ValueError as exc:
        raise ConfigError(field, str(exc)) from exc


def _selectors(labels: Sequence[str], field: str, n_wells: int) -> tuple[ParameterSelector, ...]:
    return tuple(parse_selector(label, f"{field}[{i}]", n_wells) for i, label in enumerate(labels))


def _energy_columns(states: int) -> list[str]:
    return [name for k in range(1, states + 1) for name in (f"re_mu_{k}", f"im_mu_{k}")]


def _energy_cells(record: SweepRecord, states: int) -> list[float]:
    cells: list[float] = []
    for k in range(states):
        if k < len(record.energies):
            cells += [record.energies[k].real, record.energies[k].imag]
        else:
            cells += [math.nan, math.nan]
    return cells


def _status_cells(record: SweepRecord) -> list[Any]:
    return [
        record.classification,
        record.converged,
        record.failure_kind.value if record.failure_kind else "",
        record.residual_norm,
        record.evaluations,
    ]


def _derived_keys(records: Sequence[SweepRecord]) -> list[str]:
    return sorted({key for record in records for key in record.derived})


def _exit_for_points(records: Sequence[SweepRecord]) -> int:
    converged = sum(record.converged for record in records)
    logger.info("Points solved", extra={"converged": converged, "total": len(records)})
    return 0 if converged else 2


def _comparison_block(model: np.ndarray, continuous: np.ndarray) -> str:
    lines = [f"{'state':>5}  {'matrix model':>28}  {'continuous':>28}  {'|difference|':>12}"]
    for index, (approx, exact) in enumerate(zip(model, continuous), start=1):
        lines.append(
            f"{index:>5}  {approx.real:>+14.9f}{approx.imag:>+13.9f}i  "
            f"{exact.real:>+14.9f}{exact.imag:>+13.9f}i  {abs(approx - exact):>12.3e}"
        )
    return "\n".join(lines)
