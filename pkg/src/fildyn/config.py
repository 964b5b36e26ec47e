"""Strict line-oriented ``key = value`` run configuration.

Unknown keys are fatal with file/line diagnostics because several keys
(most of all the scheme tag) change the physics; silent misconfiguration
must be impossible.  Values are floats, ints, booleans, choice tokens or
``min:max:count`` grid axes; ``#`` starts a comment.
"""

from __future__ import annotations

import math
import os
from dataclasses import dataclass, field

import numpy as np

from .errors import ConfigError

SCHEME_TOKENS = ("eq13_14", "eq18", "eq24", "exact")
FORMAT_TOKENS = ("csv", "json")
COUPLING_TOKENS = ("none", "degenerate_locus")
FAULT_TOKENS = ("none", "scheme_mismatch")


@dataclass(frozen=True)
class GridAxis:
    """Inclusive linear grid ``min:max:count`` over one parameter."""

    lo: float
    hi: float
    count: int

    def __post_init__(self) -> None:
        if not (math.isfinite(self.lo) and math.isfinite(self.hi)):
            raise ConfigError("grid bounds must be finite")
        if self.count < 1:
            raise ConfigError("grid count must be at least 1")
        if self.lo > self.hi:
            raise ConfigError("grid min must not exceed max")

    def values(self) -> np.ndarray:
        return np.linspace(self.lo, self.hi, self.count)


def _parse_float(text: str) -> float:
    try:
        value = float(text)
    except ValueError as exc:
        raise ConfigError(f"expected a number, got {text!r}") from exc
    if not math.isfinite(value):
        raise ConfigError(f"number must be finite, got {text!r}")
    return value


def _parse_int(text: str) -> int:
    try:
        return int(text, 10)
    except ValueError as exc:
        raise ConfigError(f"expected an integer, got {text!r}") from exc


def _parse_bool(text: str) -> bool:
    if text == "true":
        return True
    if text == "false":
        return False
    raise ConfigError(f"expected true or false, got {text!r}")


def _parse_grid(text: str) -> GridAxis:
    parts = text.split(":")
    if len(parts) != 3:
        raise ConfigError(f"expected min:max:count, got {text!r}")
    return GridAxis(_parse_float(parts[0]), _parse_float(parts[1]), _parse_int(parts[2]))


def _parse_float_or_grid(text: str) -> float | GridAxis:
    return _parse_grid(text) if ":" in text else _parse_float(text)


def _choice(tokens: tuple[str, ...]):
    def parse(text: str) -> str:
        if text not in tokens:
            raise ConfigError(f"expected one of {', '.join(tokens)}; got {text!r}")
        return text

    return parse


#: Registry of every accepted key and its value parser.
KEY_PARSERS = {
    "seed": _parse_int,
    "threads": _parse_int,
    "scheme": _choice(SCHEME_TOKENS),
    "output.format": _choice(FORMAT_TOKENS),
    "output.path": str,
    "geometry.kappa0": _parse_float,
    "geometry.tau0": _parse_float,
    "geometry.helical_equipartition": _parse_bool,
    "plasma.alpha": _parse_float,
    "plasma.lambda": _parse_float,
    "plasma.beta": _parse_float,
    "plasma.eta": _parse_float,
    "plasma.v_s": _parse_float,
    "plasma.v_n": _parse_float,
    "plasma.v_n_meansq": _parse_float,
    "sweep.kappa0": _parse_grid,
    "sweep.tau0": _parse_grid,
    "sweep.v_s": _parse_grid,
    "sweep.alpha": _parse_grid,
    "sweep.lambda": _parse_grid,
    "sweep.beta": _parse_grid,
    "sweep.coupling": _choice(COUPLING_TOKENS),
    "sweep.max_rows": _parse_int,
    "verify.suites": str,
    "verify.draws": _parse_int,
    "verify.dt": _parse_float,
    "verify.t_end": _parse_float,
    "verify.inject_fault": _choice(FAULT_TOKENS),
    "abc.A": _parse_float,
    "abc.B": _parse_float,
    "abc.C": _parse_float,
    "abc.x": _parse_float_or_grid,
    "abc.y": _parse_float_or_grid,
    "abc.z": _parse_float_or_grid,
    "abc.r": _parse_float_or_grid,
    "abc.s": _parse_float_or_grid,
    "abc.theta0": _parse_float_or_grid,
    "abc.tau0": _parse_float,
    "abc.eta": _parse_float,
    "abc.b_theta": _parse_float,
    "abc.b_s": _parse_float,
    "frenet.a": _parse_float,
    "frenet.b_pitch": _parse_float,
    "frenet.helices": _parse_int,
    "frenet.samples": _parse_int,
    "frenet.step": _parse_float,
}


@dataclass
class RunConfig:
    """Parsed configuration: typed values plus the raw text echo."""

    values: dict[str, object] = field(default_factory=dict)
    raw: dict[str, str] = field(default_factory=dict)
    source: str = "<none>"

    @classmethod
    def empty(cls) -> "RunConfig":
        return cls()

    def has(self, key: str) -> bool:
        return key in self.values

    def get(self, key: str, default=None):
        return self.values.get(key, default)

    def get_float(self, key: str, default: float | None = None) -> float | None:
        value = self.values.get(key, default)
        return None if value is None else float(value)

    def get_int(self, key: str, default: int | None = None) -> int | None:
        value = self.values.get(key, default)
        return None if value is None else int(value)

    def get_str(self, key: str, default: str | None = None) -> str | None:
        value = self.values.get(key, default)
        return None if value is None else str(value)

    def get_grid(self, key: str) -> GridAxis | None:
        value = self.values.get(key)
        if value is None or isinstance(value, GridAxis):
            return value
        raise ConfigError(f"{key} must be a min:max:count grid")

    def get_scalar_or_grid(self, key: str, default: float) -> float | GridAxis:
        value = self.values.get(key)
        if value is None:
            return default
        return value  # float or GridAxis by construction

    def require_float(self, key: str) -> float:
        if key not in self.values:
            raise ConfigError(f"{self.source}: required key {key!r} is missing")
        return float(self.values[key])  # type: ignore[arg-type]


def parse_config(path: str) -> RunConfig:
    """Parse a configuration file, rejecting unknown or duplicate keys."""
    if not os.path.exists(path):
        raise ConfigError(f"config file not found: {path}")
    try:
        with open(path, encoding="utf-8") as handle:
            lines = handle.readlines()
    except UnicodeDecodeError as exc:
        raise ConfigError(f"{path}: config must be UTF-8 text ({exc})") from exc

    cfg = RunConfig(source=path)
    for lineno, line in enumerate(lines, start=1):
        stripped = line.split("#", 1)[0].strip()
        if not stripped:
            continue
        if "=" not in stripped:
            raise ConfigError(f"{path}:{lineno}: expected 'key = value', got {stripped!r}")
        key, _, value_text = stripped.partition("=")
        key = key.strip()
        value_text = value_text.strip()
        if key not in KEY_PARSERS:
            raise ConfigError(f"{path}:{lineno}: unknown key {key!r}")
        if key in cfg.values:
            raise ConfigError(f"{path}:{lineno}: duplicate key {key!r}")
        if not value_text:
            raise ConfigError(f"{path}:{lineno}: key {key!r} has an empty value")
        try:
            parsed = KEY_PARSERS[key](value_text)
        except ConfigError as exc:
            raise ConfigError(f"{path}:{lineno}: key {key!r}: {exc}") from exc
        cfg.values[key] = parsed
        cfg.raw[key] = value_text
    _validate(cfg)
    return cfg


def _validate(cfg: RunConfig) -> None:
    seed = cfg.get_int("seed")
    if seed is not None and seed < 0:
        raise ConfigError(f"{cfg.source}: seed must be nonnegative")
    threads = cfg.get_int("threads")
    if threads is not None and threads < 1:
        raise ConfigError(f"{cfg.source}: threads must be at least 1")
    max_rows = cfg.get_int("sweep.max_rows")
    if max_rows is not None and max_rows < 1:
        raise ConfigError(f"{cfg.source}: sweep.max_rows must be at least 1")
    for key in ("verify.dt", "verify.t_end", "frenet.step", "frenet.a"):
        value = cfg.get_float(key)
        if value is not None and value <= 0.0:
            raise ConfigError(f"{cfg.source}: {key} must be positive")
    for key in ("verify.draws", "frenet.helices", "frenet.samples"):
        value = cfg.get_int(key)
        if value is not None and value < 1:
            raise ConfigError(f"{cfg.source}: {key} must be at least 1")
    for key in ("plasma.beta", "plasma.eta", "plasma.v_n_meansq", "abc.eta"):
        value = cfg.get_float(key)
        if value is not None and value < 0.0:
            raise ConfigError(f"{cfg.source}: {key} must be nonnegative")
    if (
        cfg.get("geometry.helical_equipartition") is True
        and cfg.has("geometry.tau0")
        and cfg.has("geometry.kappa0")
        and cfg.get_float("geometry.tau0") != cfg.get_float("geometry.kappa0")
    ):
        raise ConfigError(
            f"{cfg.source}: helical equipartition requires geometry.tau0 == geometry.kappa0"
        )
    if cfg.get_str("sweep.coupling") == "degenerate_locus" and cfg.has("sweep.alpha"):
        raise ConfigError(
            f"{cfg.source}: sweep.alpha conflicts with sweep.coupling = degenerate_locus"
        )
