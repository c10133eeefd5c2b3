"""Access to the frozen reference values in data/golden.json."""

from __future__ import annotations

import json
from fractions import Fraction
from importlib import resources
from pathlib import Path
from typing import Optional, Union

from .surface_lattice import LatticeConfig

SCHEMA_VERSION = 1


def default_path() -> Path:
    return Path(str(resources.files("fpp_certifier") / "data" / "golden.json"))


def load(path: Optional[Union[str, Path]] = None) -> dict:
    p = Path(path) if path is not None else default_path()
    with open(p, encoding="utf-8") as fh:
        data = json.load(fh)
    if data.get("schema_version") != SCHEMA_VERSION:
        raise ValueError(f"{p}: unsupported golden schema {data.get('schema_version')!r}")
    return data


def lattice_entries(data: dict, group: str) -> list[dict]:
    return [e for e in data["lattice"] if e["group"] == group]


def matrix_from(entry: dict) -> list[list[int]]:
    return [[int(v) for v in row] for row in entry["matrix"]]


def config_from(entry: dict) -> LatticeConfig:
    return LatticeConfig.from_json(entry["config"])


def frac(v) -> Fraction:
    return Fraction(str(v))
