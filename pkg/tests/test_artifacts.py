"""
Unit tests for the CSV and JSON artifact writers.

Verifies float formatting, the provenance line and header of CSV files,
and the deterministic layout of JSON files.
"""

import json
import math
from pathlib import Path

import numpy as np
import pytest

from src.cli.artifacts import canonical_json, complex_entry, config_sha256, format_cell, format_float, write_csv, write_json
from src.continuation import FailureKind


class TestFormatFloat:
    """CSV rendering of floats."""

    @pytest.mark.parametrize(
        "value, expected",
        [
            (0.1, "0.1"),
            (-2.419323, "-2.419323"),
            (1.0, "1.0"),
            (-0.0, "0.0"),
            (1.0 / 3.0, "0.333333333"),
            (123456.789012345, "123456.789"),
            (1e-12, "0.000000000001"),
        ],
    )
    def test_positional_notation(self, value: float, expected: str) -> None:
        assert format_float(value) == expected

    def test_non_finite_values(self) -> None:
        assert format_float(math.nan) == "nan"
        assert format_float(math.inf) == "inf"
        assert format_float(-math.inf) == "-inf"

    def test_numpy_scalars(self) -> None:
        assert format_float(np.float64(0.25)) == "0.25"


class TestFormatCell:

    def test_cells(self) -> None:
        assert format_cell(None) == ""
        assert format_cell(True) == "true"
        assert format_cell(False) == "false"
        assert format_cell(np.int64(3)) == "3"
        assert format_cell("2R") == "2R"
        assert format_cell(0.5) == "0.5"


class TestWriteCsv:

    def test_layout(self, tmp_path: Path) -> None:
        path = write_csv(
            tmp_path / "nested" / "out.csv",
            ("index", "re_mu", "class"),
            [(1, -2.5, "real"), (2, math.nan, "")],
            config_hash="abc",
            version="1.0.0",
        )

        data = path.read_bytes()
        assert b"\r" not in data
        lines = data.decode("utf-8").split("\n")
        assert lines[0] == "# config_sha256=abc version=1.0.0"
        assert lines[1] == "index,re_mu,class"
        assert lines[2] == "1,-2.5,real"
        assert lines[3] == "2,nan,"
        assert lines[4] == ""


class TestWriteJson:

    def test_provenance_and_ordering(self, tmp_path: Path) -> None:
        path = write_json(tmp_path / "out.json", {"b": 1, "a": [1.5, math.nan]}, config_hash="abc", version="1.0.0")

        text = path.read_text(encoding="utf-8")
        assert text.endswith("}\n")
        payload = json.loads(text)
        assert list(payload) == ["a", "b", "config_sha256", "version"]
        assert payload["a"] == [1.5, None]
        assert payload["config_sha256"] == "abc"

    def test_numpy_complex_and_enum_values(self, tmp_path: Path) -> None:
        path = write_json(
            tmp_path / "out.json",
            {"array": np.array([1.0, 2.0]), "mu": 1.0 - 0.5j, "kind": FailureKind.SOLVER_ERROR},
            config_hash="abc",
            version="1.0.0",
        )

        payload = json.loads(path.read_text(encoding="utf-8"))
        assert payload["array"] == [1.0, 2.0]
        assert payload["mu"] == {"re": 1.0, "im": -0.5}
        assert payload["kind"] == "solver_error"

    def test_identical_inputs_give_identical_bytes(self, tmp_path: Path) -> None:
        data = {"x": [0.1, 0.2], "nested": {"z": 1, "y": 2}}
        first = write_json(tmp_path / "a.json", data, config_hash="h", version="v").read_bytes()
        second = write_json(tmp_path / "b.json", dict(reversed(list(data.items()))), config_hash="h", version="v").read_bytes()
        assert first == second


class TestConfigHash:

    def test_key_order_does_not_matter(self) -> None:
        assert config_sha256({"a": 1, "b": 2}) == config_sha256({"b": 2, "a": 1})

    def test_canonical_form(self) -> None:
        assert canonical_json({"b": [1, 2.5], "a": None}) == '{"a":null,"b":[1,2.5]}'

    def test_complex_entry(self) -> None:
        assert complex_entry(2.0 + 3.0j) == {"re": 2.0, "im": 3.0}
