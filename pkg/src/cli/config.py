"""
Run configuration of a ``gainloss`` invocation.

A run config is one YAML (or JSON) file with four sections::

    potential:
      wells:
        - {depth: -3.0, gain_loss: 0.0, width: 1.0, center: -1.5}
        - {depth: -3.0, gain_loss: 0.0, width: 1.0, center: 1.5}
    grid: auto                 # or {x_min, x_max, n_points} / {n_points, margin}
    solver: {tolerance: 1.0e-9, ...}
    task:
      sweep: {...}             # one block per subcommand, all optional

The file is validated against ``schemas/run-config.schema.json`` (JSON
Schema draft 2020-12) before any computation: unknown keys, types and
ranges are the schema's business. The loader adds the rules that depend
on the well count or on several fields at once. Every error names the
dotted path of the offending entry. The resolved config (defaults filled
in, ``auto`` grids and value ranges expanded) is what the artifacts echo
and what the config hash covers. A ``*.meta.json`` written by a previous
run is accepted as a config file: its ``resolved_config`` member is used.
"""

from __future__ import annotations

import json
import math
import re
from dataclasses import dataclass
from functools import lru_cache
from pathlib import Path
from typing import Any, Callable, Optional

import yaml
from jsonschema import Draft202012Validator, ValidationError
from jsonschema.exceptions import best_match

from src.continuation import DEFAULT_COLLAPSE_TOLERANCE, Backend, SeedMode, SolverOptions
from src.domain.errors import ConfigError
from src.domain.grid_solver import DEFAULT_MAX_ITERATIONS, DEFAULT_TOLERANCE, Grid
from src.domain.grid_solver.models import DEFAULT_MARGIN, DEFAULT_POINTS
from src.domain.matrix_model import REFERENCE_TUNNELING, TunnelingMode
from src.domain.potential import GaussianWell, MultiWellPotential, ParameterKind, ParameterSelector
from src.domain.rootfind import DEFAULT_F_TOL, DEFAULT_MAX_EVALS, DEFAULT_STEP_SCALE, DEFAULT_X_TOL
from src.domain.symmetrization import DEFAULT_CLASSIFICATION_TOLERANCE

from .artifacts import config_sha256

COMMANDS = ("spectrum", "matrix-model", "balance", "sweep", "scan", "boundary")

SCHEMA_PATH = Path(__file__).resolve().parents[2] / "schemas" / "run-config.schema.json"

_SELECTOR_PATTERN = re.compile(r"^(depth|gain_loss|width|center)_(\d+)$")
_MISSING = object()


class _ConfigLoader(yaml.SafeLoader):
    """SafeLoader that also reads ``1e-9`` (no decimal point) as a float."""


_ConfigLoader.add_implicit_resolver(
    "tag:yaml.org,2002:float",
    re.compile(r"^[-+]?[0-9][0-9_]*(?:\.[0-9_]*)?[eE][-+]?[0-9]+$"),
    list("-+0123456789"),
)


@dataclass(frozen=True)
class RunConfig:
    """A validated run configuration for one subcommand.

    Attributes:
        command: The subcommand the config was validated for.
        potential: The complex multi-well potential.
        grid: The resolved discretization grid.
        states: Number of lowest states reported by ``spectrum``.
        options: Numerical settings shared by all solves.
        task: Resolved task block of ``command`` (plain JSON types).
        resolved: Complete resolved config, echoed in artifacts.
    """

    command: str
    potential: MultiWellPotential
    grid: Grid
    states: int
    options: SolverOptions
    task: dict[str, Any]
    resolved: dict[str, Any]

    @property
    def sha256(self) -> str:
        return config_sha256(self.resolved)


def load_config(path: str | Path, command: str) -> RunConfig:
    """Read and validate a config file for ``command``.

    Raises:
        ConfigError: If the file is unreadable or fails validation.
    """
    path = Path(path)
    try:
        with path.open("r", encoding="utf-8") as handle:
            data = yaml.load(handle, Loader=_ConfigLoader)
    except OSError as exc:
        raise ConfigError(str(path), f"cannot read config file: {exc.strerror or exc}") from exc
    except yaml.YAMLError as exc:
        raise ConfigError(str(path), f"invalid YAML/JSON: {exc}") from exc
    if isinstance(data, dict) and "resolved_config" in data:
        data = data["resolved_config"]
    return parse_config(data, command)


@lru_cache(maxsize=1)
def run_config_validator() -> Draft202012Validator:
    """Validator for ``schemas/run-config.schema.json``."""
    with SCHEMA_PATH.open("r", encoding="utf-8") as handle:
        schema = json.load(handle)
    Draft202012Validator.check_schema(schema)
    return Draft202012Validator(schema)


def validate_document(data: Any) -> None:
    """Check ``data`` against the run-config schema.

    Raises:
        ConfigError: For the most relevant violation, with its dotted path.
    """
    error = best_match(run_config_validator().iter_errors(data))
    if error is not None:
        raise ConfigError(_field_path(error), _describe(error))
    _check_finite(data, "")


def parse_config(data: Any, command: str) -> RunConfig:
    """Validate an already parsed config mapping for ``command``."""
    if command not in COMMANDS:
        raise ConfigError("command", f"unknown subcommand {command!r}")
    validate_document(data)

    potential, potential_resolved = _parse_potential(data["potential"])
    grid = _parse_grid(data.get("grid", "auto"), potential)
    states, options, solver_resolved = _parse_solver(data.get("solver") or {}, potential)

    field = f"task.{command}"
    block = (data.get("task") or {}).get(command) or {}
    task = _TASK_PARSERS[command](block, field, potential)

    resolved = {
        "potential": potential_resolved,
        "grid": {"x_min": grid.x_min, "x_max": grid.x_max, "n_points": grid.n_points},
        "solver": solver_resolved,
        "task": {command: task},
    }
    return RunConfig(
        command=command,
        potential=potential,
        grid=grid,
        states=states,
        options=options,
        task=task,
        resolved=resolved,
    )


def parse_selector(label: Any, field: str, n_wells: int) -> ParameterSelector:
    """``"gain_loss_2"`` -> ``gain_loss(2)``, checked against the well count."""
    match = _SELECTOR_PATTERN.match(label) if isinstance(label, str) else None
    if match is None:
        raise ConfigError(field, f"expected a parameter label like 'depth_1' or 'gain_loss_2', got {label!r}")
    well = int(match.group(2))
    if not 1 <= well <= n_wells:
        raise ConfigError(field, f"{label} addresses well {well}, the potential has {n_wells}")
    return ParameterSelector(ParameterKind(match.group(1)), well)


def parse_values(value: Any, field: str) -> list[float]:
    """Expand a schema-valid value entry: a list, a ``{start, stop, step}``
    range (stop included when it lies on the lattice), or ``{count}`` angles
    around the full circle."""
    if value is _MISSING or value is None:
        raise ConfigError(field, "is required")
    if isinstance(value, list):
        return [float(item) for item in value]
    if "count" in value:
        count = int(value["count"])
        return [2.0 * math.pi * k / count for k in range(count)]
    start, stop, step = (float(value[key]) for key in ("start", "stop", "step"))
    if step == 0.0 or (stop - start) * step < 0.0:
        raise ConfigError(f"{field}.step", "must be non-zero and point from start to stop")
    count = int(math.floor((stop - start) / step + 1e-9)) + 1
    return [start + k * step for k in range(count)]


# ---------------------------------------------------------------------------
# Schema errors
# ---------------------------------------------------------------------------


def _field_path(error: ValidationError) -> str:
    """Dotted path of a schema violation, naming the key for unknown or missing entries."""
    parts = list(error.absolute_path)
    if error.validator == "additionalProperties":
        known = error.schema.get("properties", {})
        parts.append(sorted(str(key) for key in error.instance if key not in known)[0])
    elif error.validator == "required":
        parts.append(next(key for key in error.validator_value if key not in error.instance))
    field = ""
    for part in parts:
        if isinstance(part, int):
            field += f"[{part}]"
        else:
            field += f".{part}" if field else str(part)
    return field or "config"


def _describe(error: ValidationError) -> str:
    if error.validator == "additionalProperties":
        return "unknown key"
    if error.validator == "required":
        return "is required"
    return error.message


def _check_finite(value: Any, field: str) -> None:
    # the schema bounds reject infinities; NaN compares false to every bound
    if isinstance(value, float) and math.isnan(value):
        raise ConfigError(field or "config", "must be finite")
    if isinstance(value, dict):
        for key, item in value.items():
            _check_finite(item, f"{field}.{key}" if field else str(key))
    elif isinstance(value, list):
        for index, item in enumerate(value):
            _check_finite(item, f"{field}[{index}]")


# ---------------------------------------------------------------------------
# Sections
# ---------------------------------------------------------------------------


def _parse_potential(section: dict) -> tuple[MultiWellPotential, dict[str, Any]]:
    wells = tuple(
        GaussianWell(
            depth=float(record["depth"]),
            gain_loss=float(record.get("gain_loss", 0.0)),
            width=float(record["width"]),
            center=float(record["center"]),
        )
        for record in section["wells"]
    )
    try:
        potential = MultiWellPotential(wells)
    except ValueError as exc:
        raise ConfigError("potential.wells", str(exc)) from exc
    resolved = {
        "wells": [
            {"depth": w.depth, "gain_loss": w.gain_loss, "width": w.width, "center": w.center}
            for w in potential.wells
        ]
    }
    return potential, resolved


def _parse_grid(section: Any, potential: MultiWellPotential) -> Grid:
    if section == "auto":
        return Grid.auto(potential)
    n_points = int(section.get("n_points", DEFAULT_POINTS))
    try:
        if "x_min" not in section:
            return Grid.auto(potential, n_points, float(section.get("margin", DEFAULT_MARGIN)))
        return Grid(float(section["x_min"]), float(section["x_max"]), n_points)
    except ValueError as exc:
        raise ConfigError("grid", str(exc)) from exc


def _parse_solver(section: dict, potential: MultiWellPotential) -> tuple[int, SolverOptions, dict[str, Any]]:
    defaults = {
        "states": potential.n_wells,
        "tolerance": DEFAULT_TOLERANCE,
        "max_iterations": DEFAULT_MAX_ITERATIONS,
        "classification_tolerance": DEFAULT_CLASSIFICATION_TOLERANCE,
        "x_tol": DEFAULT_X_TOL,
        "f_tol": DEFAULT_F_TOL,
        "max_evals": DEFAULT_MAX_EVALS,
        "step_scale": DEFAULT_STEP_SCALE,
        "collapse_tolerance": DEFAULT_COLLAPSE_TOLERANCE,
        "tunneling": TunnelingMode.RECOMPUTED.value,
        "frozen_tunneling": REFERENCE_TUNNELING,
    }
    resolved = {key: section.get(key, default) for key, default in defaults.items()}
    # JSON Schema counts 3.0 as an integer
    for key in ("states", "max_iterations", "max_evals"):
        resolved[key] = int(resolved[key])
    for key in defaults.keys() - {"states", "max_iterations", "max_evals", "tunneling"}:
        resolved[key] = float(resolved[key])

    options = SolverOptions(
        tolerance=resolved["tolerance"],
        max_iterations=resolved["max_iterations"],
        x_tol=resolved["x_tol"],
        f_tol=resolved["f_tol"],
        max_evals=resolved["max_evals"],
        step_scale=resolved["step_scale"],
        classification_tolerance=resolved["classification_tolerance"],
        collapse_tolerance=resolved["collapse_tolerance"],
        tunneling_mode=TunnelingMode(resolved["tunneling"]),
        frozen_tunneling=resolved["frozen_tunneling"],
    )
    return resolved["states"], options, resolved


# ---------------------------------------------------------------------------
# Task blocks
# ---------------------------------------------------------------------------


def _spectrum_task(block: dict, field: str, potential: MultiWellPotential) -> dict[str, Any]:
    return {"write_wavefunctions": bool(block.get("write_wavefunctions", False))}


def _matrix_model_task(block: dict, field: str, potential: MultiWellPotential) -> dict[str, Any]:
    return {}


def _balance_task(block: dict, field: str, potential: MultiWellPotential) -> dict[str, Any]:
    n_wells = potential.n_wells
    if n_wells not in (2, 3):
        raise ConfigError("potential.wells", f"balance needs 2 or 3 wells, got {n_wells}")
    seed = block.get("seed", SeedMode.MATRIX_MODEL.value)
    solve = _labels(block, "solve", field, n_wells, _default_solved(n_wells))
    if seed == SeedMode.MATRIX_MODEL.value:
        _check_model_seedable(solve, f"{field}.solve", n_wells)
    elif len(solve) > n_wells:
        raise ConfigError(f"{field}.solve", f"between 1 and {n_wells} parameters can be solved")
    explicit = _optional_values(block, "explicit_seed", field, len(solve))
    if seed == SeedMode.EXPLICIT.value and explicit is None:
        raise ConfigError(f"{field}.explicit_seed", "is required with seed: explicit")
    return {
        "solve": solve,
        "seed": seed,
        "explicit_seed": explicit,
        "backend": block.get("backend", Backend.GRID.value),
    }


def _sweep_task(block: dict, field: str, potential: MultiWellPotential) -> dict[str, Any]:
    n_wells = potential.n_wells
    swept = parse_selector(block.get("swept"), f"{field}.swept", n_wells).label
    values = parse_values(block.get("values", _MISSING), f"{field}.values")
    steps = [b - a for a, b in zip(values, values[1:])]
    if steps and not (all(s > 0.0 for s in steps) or all(s < 0.0 for s in steps)):
        raise ConfigError(f"{field}.values", "must be strictly monotone")
    solve = _labels(block, "solve", field, n_wells, _default_solved(n_wells))
    if swept in solve:
        raise ConfigError(f"{field}.solve", f"{swept} cannot be both swept and solved")
    if len(solve) > n_wells:
        raise ConfigError(f"{field}.solve", f"between 1 and {n_wells} parameters can be solved")
    seed_mode = block.get("seed_mode", SeedMode.PREVIOUS_POINT.value)
    if seed_mode == SeedMode.MATRIX_MODEL.value:
        _check_model_seedable(solve, f"{field}.solve", n_wells)
    explicit = _optional_values(block, "explicit_seed", field, len(solve))
    if seed_mode == SeedMode.EXPLICIT.value and explicit is None:
        raise ConfigError(f"{field}.explicit_seed", "is required with seed_mode: explicit")
    return {
        "swept": swept,
        "values": values,
        "solve": solve,
        "seed_mode": seed_mode,
        "explicit_seed": explicit,
        "backend": block.get("backend", Backend.GRID.value),
        "calibrate": _calibration(block.get("calibrate"), f"{field}.calibrate", n_wells),
    }


def _scan_task(block: dict, field: str, potential: MultiWellPotential) -> dict[str, Any]:
    if potential.n_wells != 2:
        raise ConfigError("potential.wells", f"lattice scans need 2 wells, got {potential.n_wells}")
    solve_for = parse_selector(block.get("solve_for", "depth_2"), f"{field}.solve_for", 2)
    if solve_for.kind is ParameterKind.GAIN_LOSS:
        raise ConfigError(f"{field}.solve_for", "the lattice fixes both gain-loss parameters")
    return {
        "gain_loss_1": parse_values(block.get("gain_loss_1", _MISSING), f"{field}.gain_loss_1"),
        "gain_loss_2": parse_values(block.get("gain_loss_2", _MISSING), f"{field}.gain_loss_2"),
        "solve_for": solve_for.label,
        "backend": block.get("backend", Backend.GRID.value),
    }


def _boundary_task(block: dict, field: str, potential: MultiWellPotential) -> dict[str, Any]:
    if potential.n_wells != 3:
        raise ConfigError("potential.wells", f"boundary tracing needs 3 wells, got {potential.n_wells}")
    plane = _labels(block, "plane", field, 3, ["depth_1", "depth_3"])
    if any(not label.startswith("depth_") for label in plane):
        raise ConfigError(f"{field}.plane", "the plane is spanned by well depths")
    initial_step = float(block.get("initial_step", 0.05))
    min_step = float(block.get("min_step", 1e-3))
    max_radius = float(block.get("max_radius", 1.0))
    if not min_step <= initial_step <= max_radius:
        raise ConfigError(field, "need min_step <= initial_step <= max_radius")
    return {
        "angles": parse_values(block.get("angles", {"count": 36}), f"{field}.angles"),
        "plane": plane,
        "start_gain_losses": _optional_values(block, "start_gain_losses", field, 3),
        "initial_step": initial_step,
        "min_step": min_step,
        "max_radius": max_radius,
        "backend": block.get("backend", Backend.GRID.value),
    }


_TASK_PARSERS: dict[str, Callable[[dict, str, MultiWellPotential], dict[str, Any]]] = {
    "spectrum": _spectrum_task,
    "matrix-model": _matrix_model_task,
    "balance": _balance_task,
    "sweep": _sweep_task,
    "scan": _scan_task,
    "boundary": _boundary_task,
}


def _default_solved(n_wells: int) -> list[str]:
    if n_wells == 2:
        return ["gain_loss_2"]
    return [f"gain_loss_{n}" for n in range(1, n_wells + 1)]


def _check_model_seedable(labels: list[str], field: str, n_wells: int) -> None:
    if n_wells == 2:
        if len(labels) != 1 or not labels[0].startswith(("depth_", "gain_loss_")):
            raise ConfigError(field, "matrix-model seeding of a double well solves one depth or gain-loss parameter")
    elif n_wells == 3:
        if sorted(labels) != ["gain_loss_1", "gain_loss_2", "gain_loss_3"]:
            raise ConfigError(field, "matrix-model seeding of a triple well solves the three gain-loss parameters")
    else:
        raise ConfigError(field, f"matrix-model seeding supports 2 or 3 wells, got {n_wells}")


def _calibration(block: Optional[dict], field: str, n_wells: int) -> Optional[dict[str, Any]]:
    if block is None:
        return None
    well = int(block["well"])
    if well > n_wells:
        raise ConfigError(f"{field}.well", f"the potential has {n_wells} wells")
    return {
        "well": well,
        "target_energy": float(block["target_energy"]),
        "state_index": int(block.get("state_index", 1)),
    }


def _labels(block: dict, key: str, field: str, n_wells: int, default: list[str]) -> list[str]:
    value = block.get(key)
    if value is None:
        return list(default)
    return [parse_selector(item, f"{field}.{key}[{i}]", n_wells).label for i, item in enumerate(value)]


def _optional_values(block: dict, key: str, field: str, length: int) -> Optional[list[float]]:
    value = block.get(key)
    if value is None:
        return None
    values = parse_values(value, f"{field}.{key}")
    if len(values) != length:
        raise ConfigError(f"{field}.{key}", f"expected {length} values, got {len(values)}")
    return values
