"""
Tests for ``schemas/run-config.schema.json``.

Test categories
===============

1. **Schema document** - a valid draft 2020-12 schema.
2. **Shipped configs** - every file under ``configs/`` validates.
3. **Rejected documents** - unknown keys, types and ranges, each at its path.
"""

from __future__ import annotations

import json
from pathlib import Path

import pytest
import yaml
from jsonschema import Draft202012Validator

from src.cli.config import SCHEMA_PATH, run_config_validator


REPO_ROOT = Path(__file__).resolve().parents[2]
CONFIGS_DIR = REPO_ROOT / "configs"


# ---------------------------------------------------------------------------
# Fixtures
# ---------------------------------------------------------------------------

def _make_document(**sections) -> dict:
    document = {
        "potential": {
            "wells": [
                {"depth": -3.0, "gain_loss": 0.0, "width": 1.0, "center": -1.5},
                {"depth": -3.0, "gain_loss": 0.0, "width": 1.0, "center": 1.5},
            ]
        }
    }
    document.update(sections)
    return document


def _error_paths(document: dict) -> list[list]:
    return [list(error.absolute_path) for error in run_config_validator().iter_errors(document)]


# ===================================================================
# 1. Schema document
# ===================================================================

class TestSchemaDocument:

    def test_is_valid_draft_2020_12(self) -> None:
        with SCHEMA_PATH.open("r", encoding="utf-8") as handle:
            schema = json.load(handle)
        Draft202012Validator.check_schema(schema)
        assert schema["$schema"] == "https://json-schema.org/draft/2020-12/schema"
        assert schema["additionalProperties"] is False

    def test_minimal_document(self) -> None:
        assert _error_paths(_make_document()) == []


# ===================================================================
# 2. Shipped configs
# ===================================================================

class TestShippedConfigs:

    @pytest.mark.parametrize("path", sorted(CONFIGS_DIR.glob("*.yaml")), ids=lambda p: p.name)
    def test_config_validates(self, path: Path) -> None:
        with path.open("r", encoding="utf-8") as handle:
            document = yaml.safe_load(handle)
        assert _error_paths(document) == []


# ===================================================================
# 3. Rejected documents
# ===================================================================

class TestRejectedDocuments:

    @pytest.mark.parametrize(
        "sections, path",
        [
            ({"grid": "fine"}, ["grid"]),
            ({"grid": {"n_points": 2}}, ["grid", "n_points"]),
            ({"grid": {"x_min": -9.0, "x_max": 9.0, "margin": 4.0}}, ["grid"]),
            ({"solver": {"tunneling": "sometimes"}}, ["solver", "tunneling"]),
            ({"solver": {"tolerance": float("inf")}}, ["solver", "tolerance"]),
            ({"task": {"sweep": {"swept": "V_2", "values": [0.1]}}}, ["task", "sweep", "swept"]),
            ({"task": {"balance": {"solve": ["gain_loss_2", "gain_loss_2"]}}}, ["task", "balance", "solve"]),
            ({"task": {"boundary": {"angles": {"count": 0}}}}, ["task", "boundary", "angles", "count"]),
            ({"task": {"boundary": {"plane": ["depth_1"]}}}, ["task", "boundary", "plane"]),
            ({"task": {"scan": {"gain_loss_1": [], "gain_loss_2": [0.0]}}}, ["task", "scan", "gain_loss_1"]),
        ],
    )
    def test_violation_path(self, sections: dict, path: list) -> None:
        assert path in _error_paths(_make_document(**sections))

    def test_unknown_well_key(self) -> None:
        document = _make_document()
        document["potential"]["wells"][0]["sigma"] = 1.0
        errors = list(run_config_validator().iter_errors(document))
        assert [e.validator for e in errors] == ["additionalProperties"]
        assert list(errors[0].absolute_path) == ["potential", "wells", 0]

    def test_booleans_are_not_numbers(self) -> None:
        document = _make_document()
        document["potential"]["wells"][1]["center"] = True
        assert ["potential", "wells", 1, "center"] in _error_paths(document)

    def test_resolved_nulls_are_accepted(self) -> None:
        """Meta files echo unset optional entries as null."""
        document = _make_document(
            task={"sweep": {"swept": "gain_loss_1", "values": [0.1], "explicit_seed": None, "calibrate": None}}
        )
        assert _error_paths(document) == []
