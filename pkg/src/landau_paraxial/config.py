"""Flat key-value run configuration: `key = value`, `#` comments, dotted
section prefixes. Parsing is total: every input yields either a RunConfig or a
ConfigError naming the first offending line/key."""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import ConfigError


def _parse_float(text):
    try:
        value = float(text)
    except ValueError:
        raise ValueError(f"not a number: {text!r}")
    if not math.isfinite(value):
        raise ValueError(f"must be finite: {text!r}")
    return value


def _parse_int(text):
    try:
        return int(text, 10)
    except ValueError:
        raise ValueError(f"not an integer: {text!r}")


def _parse_choice(*choices):
    def parse(text):
        if text not in choices:
            raise ValueError(f"must be one of {choices}, got {text!r}")
        return text
    return parse


def _positive(name):
    def check(v):
        if v <= 0:
            raise ValueError(f"{name} must be > 0, got {v!r}")
        return v
    return check


def _non_negative(name):
    def check(v):
        if v < 0:
            raise ValueError(f"{name} must be >= 0, got {v!r}")
        return v
    return check


def _spin(v):
    if v not in (0.5, -0.5):
        raise ValueError(f"sz must be +0.5 or -0.5, got {v!r}")
    return v


def _min_points(v):
    if v < 16:
        raise ValueError(f"grid.n_points must be >= 16, got {v!r}")
    return v


def _at_least_one(name):
    def check(v):
        if v < 1:
            raise ValueError(f"{name} must be >= 1, got {v!r}")
        return v
    return check


def _identity(v):
    return v


# key -> (parser, validator, default). free.w0 has no default: free-space runs
# must state the waist explicitly.
_SCHEMA = {
    "particle": (_parse_choice("electron", "positron"), _identity, "electron"),
    "sz": (_parse_float, _spin, -0.5),
    "b": (_parse_float, _non_negative("b"), 0.01),
    "k": (_parse_float, _positive("k"), 1.0),
    "n": (_parse_int, _non_negative("n"), 0),
    "ell": (_parse_int, _identity, 0),
    "pz": (_parse_float, _identity, 0.0),
    "grid.r_max_wm": (_parse_float, _positive("grid.r_max_wm"), 8.0),
    "grid.n_points": (_parse_int, _min_points, 2048),
    "prop.z_max": (_parse_float, _positive("prop.z_max"), 100.0),
    "prop.n_steps": (_parse_int, _at_least_one("prop.n_steps"), 2000),
    "prop.snapshot_stride": (_parse_int, _at_least_one("prop.snapshot_stride"), 10),
    "mode": (_parse_choice("fw", "paraxial"), _identity, "fw"),
    "free.w0": (_parse_float, _positive("free.w0"), None),
    "output.dir": (str, _identity, "out"),
}


@dataclass(frozen=True)
class RunConfig:
    particle: str
    sz: float
    b: float
    k: float
    n: int
    ell: int
    pz: float
    grid_r_max_wm: float
    grid_n_points: int
    prop_z_max: float
    prop_n_steps: int
    prop_snapshot_stride: int
    mode: str
    free_w0: float | None
    output_dir: str


_FIELD_BY_KEY = {key: key.replace(".", "_") for key in _SCHEMA}


def parse_config_text(text: str) -> RunConfig:
    values = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError("expected 'key = value'", line=lineno)
        key, _, value = line.partition("=")
        key = key.strip()
        value = value.strip()
        if key not in _SCHEMA:
            raise ConfigError("unknown key", line=lineno, key=key)
        if key in values:
            raise ConfigError("duplicate key", line=lineno, key=key)
        if not value:
            raise ConfigError("missing value", line=lineno, key=key)
        parser, validator, _ = _SCHEMA[key]
        try:
            values[key] = validator(parser(value))
        except ValueError as exc:
            raise ConfigError(str(exc), line=lineno, key=key) from None
    fields = {}
    for key, (_, _, default) in _SCHEMA.items():
        fields[_FIELD_BY_KEY[key]] = values.get(key, default)
    return RunConfig(**fields)


def parse_config(path) -> RunConfig:
    try:
        with open(path, "r") as fh:
            text = fh.read()
    except OSError as exc:
        raise ConfigError(f"cannot read config file {path!r}: {exc}") from None
    return parse_config_text(text)
