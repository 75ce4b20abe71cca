"""
Deterministic CSV and JSON artifact writers.

Guarantees
==========

1. **Stable bytes** - identical inputs give identical files: fixed column
   order, ``sort_keys`` JSON, UTF-8, LF line endings.
2. **Traceable** - every CSV starts with a ``# config_sha256=... version=...``
   comment line; every JSON artifact carries the same two fields.
3. **Float formatting** - CSV floats use the shortest representation that
   round-trips, capped at 9 significant digits, positional notation with a
   decimal point. JSON keeps full round-trip precision.
"""

from __future__ import annotations

import csv
import hashlib
import json
import math
from pathlib import Path
from typing import Any, Iterable, Sequence

import numpy as np

CSV_SIGNIFICANT_DIGITS = 9


def canonical_json(data: Any) -> str:
    """Compact JSON with sorted keys, the input of the config hash."""
    return json.dumps(_jsonable(data), sort_keys=True, separators=(",", ":"), ensure_ascii=False)


def config_sha256(resolved: dict[str, Any]) -> str:
    return hashlib.sha256(canonical_json(resolved).encode("utf-8")).hexdigest()


def format_float(value: float) -> str:
    """CSV rendering of a float; ``nan`` for missing values."""
    value = float(value)
    if math.isnan(value):
        return "nan"
    if math.isinf(value):
        return "inf" if value > 0 else "-inf"
    return np.format_float_positional(
        value + 0.0,  # drops the sign of -0.0
        precision=CSV_SIGNIFICANT_DIGITS,
        unique=True,
        fractional=False,
        trim="0",
    )


def format_cell(value: Any) -> str:
    if value is None:
        return ""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, (float, np.floating)):
        return format_float(value)
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    return str(value)


def write_csv(
    path: Path,
    header: Sequence[str],
    rows: Iterable[Sequence[Any]],
    *,
    config_hash: str,
    version: str,
) -> Path:
    """Write a CSV artifact with its provenance comment and header row."""
    path.parent.mkdir(parents=True, exist_ok=True)
    with path.open("w", encoding="utf-8", newline="") as handle:
        handle.write(f"# config_sha256={config_hash} version={version}\n")
        writer = csv.writer(handle, lineterminator="\n")
        writer.writerow(header)
        for row in rows:
            writer.writerow([format_cell(cell) for cell in row])
    return path


def write_json(path: Path, data: dict[str, Any], *, config_hash: str, version: str) -> Path:
    """Write a JSON artifact; ``config_sha256`` and ``version`` are added."""
    payload = dict(data)
    payload["config_sha256"] = config_hash
    payload["version"] = version
    path.parent.mkdir(parents=True, exist_ok=True)
    text = json.dumps(_jsonable(payload), indent=2, sort_keys=True, ensure_ascii=False)
    with path.open("w", encoding="utf-8", newline="\n") as handle:
        handle.write(text + "\n")
    return path


def complex_entry(value: complex) -> dict[str, float]:
    return {"re": float(value.real), "im": float(value.imag)}


def _jsonable(value: Any) -> Any:
    """Plain JSON types; NaN and infinities become null."""
    if isinstance(value, dict):
        return {str(key): _jsonable(item) for key, item in value.items()}
    if isinstance(value, (list, tuple)):
        return [_jsonable(item) for item in value]
    if isinstance(value, np.ndarray):
        return [_jsonable(item) for item in value.tolist()]
    if isinstance(value, (bool, np.bool_)):
        return bool(value)
    if isinstance(value, (int, np.integer)):
        return int(value)
    if isinstance(value, (float, np.floating)):
        value = float(value)
        return value if math.isfinite(value) else None
    if isinstance(value, (complex, np.complexfloating)):
        return _jsonable(complex_entry(complex(value)))
    if value is None or isinstance(value, str):
        return value
    if hasattr(value, "value"):
        return value.value
    return str(value)
