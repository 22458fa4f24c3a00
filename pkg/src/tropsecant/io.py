"""Reading configurations, matrices and heights; exact JSON output."""

from __future__ import annotations

import csv
import io
import json
from fractions import Fraction
from pathlib import Path
from typing import Any, Union

from .config import PointConfig, config_from_basis
from .kernel import RatMatrix, rational_vector


class InputError(ValueError):
    """Malformed input file."""


def encode(value: Any) -> Any:
    """Make a value JSON-safe: Fractions become ``"p/q"`` (integers stay bare)."""
    if isinstance(value, Fraction):
        return value.numerator if value.denominator == 1 else f"{value.numerator}/{value.denominator}"
    if isinstance(value, float) and value == float("inf"):
        return "inf"
    if isinstance(value, (frozenset, set)):
        return sorted(encode(v) for v in value)
    if isinstance(value, dict):
        return {str(k): encode(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [encode(v) for v in value]
    return value


def dumps(obj: Any) -> str:
    return json.dumps(encode(obj), sort_keys=True, indent=2) + "\n"


def _read(path: Union[str, Path]) -> str:
    try:
        return Path(path).read_text()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc}") from exc


def _numbers(row) -> tuple[Fraction, ...]:
    try:
        return rational_vector(row)
    except (TypeError, ValueError, ZeroDivisionError) as exc:
        raise InputError(f"bad number in {row!r}") from exc


def parse_matrix_text(text: str) -> RatMatrix:
    """A matrix as JSON ``{"rows", "cols", "entries"}`` / nested list, or CSV."""
    stripped = text.strip()
    if not stripped:
        raise InputError("empty matrix")
    if stripped[0] in "{[":
        try:
            data = json.loads(stripped)
        except json.JSONDecodeError as exc:
            raise InputError(f"invalid JSON: {exc}") from exc
        return matrix_from_json(data)
    rows = [r for r in csv.reader(io.StringIO(stripped)) if r and any(c.strip() for c in r)]
    return _matrix([_numbers(r) for r in rows])


def _matrix(rows) -> RatMatrix:
    if not rows:
        raise InputError("empty matrix")
    if len({len(r) for r in rows}) != 1:
        raise InputError("matrix rows have different lengths")
    return RatMatrix.from_rows(rows)


def matrix_from_json(data) -> RatMatrix:
    if isinstance(data, list):
        return _matrix([_numbers(r) for r in data])
    if isinstance(data, dict) and "entries" in data:
        m = _matrix([_numbers(r) for r in data["entries"]])
        if ("rows" in data and data["rows"] != m.rows) or ("cols" in data and data["cols"] != m.cols):
            raise InputError("declared shape does not match entries")
        return m
    raise InputError("not a matrix")


def load_matrix(path) -> RatMatrix:
    return parse_matrix_text(_read(path))


def load_config(path, as_basis: bool = False) -> PointConfig:
    """A configuration file, or a basis matrix when ``as_basis`` is set.

    JSON objects with a ``points`` key are configurations; matrices are only
    accepted with ``as_basis``.
    """
    text = _read(path)
    stripped = text.strip()
    data = None
    if stripped.startswith("{"):
        try:
            data = json.loads(stripped)
        except json.JSONDecodeError as exc:
            raise InputError(f"invalid JSON: {exc}") from exc
    if isinstance(data, dict) and "points" in data:
        return config_from_json(data)
    if not as_basis:
        raise InputError("input is a matrix; pass --as-basis to read it as a linear-space basis")
    m = parse_matrix_text(text)
    labels = data.get("labels", ()) if isinstance(data, dict) else ()
    return config_from_basis(m, labels)


def config_from_json(data: dict) -> PointConfig:
    points = [_numbers(p) for p in data["points"]]
    if not points:
        raise InputError("configuration has no points")
    d = data.get("d", len(points[0]))
    return PointConfig(d, tuple(points), tuple(data.get("labels", ())))


def config_to_json(c: PointConfig) -> dict:
    return {"d": c.d, "points": [list(p) for p in c.points], "labels": list(c.labels)}


def load_heights(path) -> tuple[Fraction, ...]:
    """Heights as a JSON list, ``{"heights": [...]}``, or one CSV row."""
    text = _read(path).strip()
    if text.startswith("[") or text.startswith("{"):
        try:
            data = json.loads(text)
        except json.JSONDecodeError as exc:
            raise InputError(f"invalid JSON: {exc}") from exc
        if isinstance(data, dict):
            data = data.get("heights")
        if not isinstance(data, list):
            raise InputError("heights must be a list")
        return _numbers(data)
    values = [c for r in csv.reader(io.StringIO(text)) for c in r if c.strip()]
    return _numbers(values)


def load_values(path) -> tuple[Fraction, ...]:
    return load_heights(path)


def subdivision_to_json(s) -> dict:
    return {
        "cells": [{"members": list(c.members),
                   "functional": {"coeffs": list(c.functional.coeffs), "const": c.functional.const}}
                  for c in s.cells],
        "onEnvelope": list(s.on_envelope),
    }

