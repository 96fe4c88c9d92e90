"""Loader for the bundled reference tables (verification fixtures only)."""

from __future__ import annotations

import json
from importlib import resources

_COLUMNS = ("weight", "h1", "h2", "h3", "h4")


def load_reference_tables() -> dict:
    """Returns {"f3_nonlinearity": {n: N}, "f3_weights": {n: {col: value}}}."""
    raw = json.loads(
        resources.files("rotsym").joinpath("data/reference_tables.json")
        .read_text(encoding="utf-8")
    )
    return {
        "f3_nonlinearity": {int(k): v for k, v in raw["f3_nonlinearity"].items()},
        "f3_weights": {int(k): dict(v) for k, v in raw["f3_weights"].items()},
    }


def weight_table_columns() -> tuple[str, ...]:
    return _COLUMNS
