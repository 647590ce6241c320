"""Run configuration: a flat ``key = value`` file plus command-line overrides.

Grammar (one entry per line, UTF-8)::

    # comment
    beta   = 0.9
    lambda = 1        # trailing comments are allowed
    var    = mu

Blank lines are ignored, keys are case-sensitive, values are numbers except
for ``var``, ``protocol`` and ``output``. Command-line flags override file
values.
"""
from __future__ import annotations

import os
from dataclasses import dataclass, field
from typing import Mapping, Optional

import numpy as np

from .core import ModelParams, ValidationError, validate_params

CONFIG_ENV = "MONETARY_DFM_CONFIG"
SWEEP_VARS = ("mu", "lambda", "theta", "y_H", "y_L", "beta", "R")

_MODEL_KEYS = {"beta": float, "R": float, "y_L": float, "y_H": float, "lambda": float,
               "theta": float, "mu": float, "A": float, "M": float}
_OPTION_KEYS = {"var": str, "from": float, "to": float, "points": int,
                "z0": float, "T": int, "threshold": float,
                "N": int, "seed": int, "protocol": str,
                "output": str, "csv": str, "per_period": str}
SCHEMA = {**_MODEL_KEYS, **_OPTION_KEYS}


class ConfigError(ValueError):
    pass


@dataclass(frozen=True)
class RunConfig:
    params: ModelParams
    options: dict = field(default_factory=dict)
    source: Optional[str] = None

    def get(self, key, default=None):
        value = self.options.get(key)
        return default if value is None else value

    @property
    def grid(self) -> np.ndarray:
        return np.linspace(self.options["from"], self.options["to"], self.options["points"])

    @property
    def grid_step(self) -> float:
        return (self.options["to"] - self.options["from"]) / (self.options["points"] - 1)

    def echo(self) -> str:
        """Parameter echo used in output headers."""
        p = self.params
        return ",".join(f"{name}={getattr(p, attr)!r}" for name, attr in (
            ("beta", "beta"), ("R", "R"), ("y_L", "y_L"), ("y_H", "y_H"), ("lambda", "lam"),
            ("theta", "theta"), ("mu", "mu"), ("A", "A"), ("M", "M")))


def _convert(key, text, where):
    kind = SCHEMA[key]
    try:
        if kind is int:
            value = float(text)
            if value != int(value):
                raise ValueError
            return int(value)
        return kind(text)
    except ValueError:
        raise ConfigError(f"{where}: '{key}' expects {kind.__name__}, got {text!r}") from None


def read_config_file(path) -> dict:
    values = {}
    with open(path, encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            where = f"{path}:{lineno}"
            if "=" not in line:
                raise ConfigError(f"{where}: expected 'key = value'")
            key, text = (part.strip() for part in line.split("=", 1))
            if key == "lam":
                key = "lambda"
            if key not in SCHEMA:
                raise ConfigError(f"{where}: unknown key '{key}'; valid keys: {', '.join(SCHEMA)}")
            values[key] = _convert(key, text, where)
    return values


def parse_config(path=None, overrides: Optional[Mapping] = None) -> RunConfig:
    """Merge a config file (or ``$MONETARY_DFM_CONFIG``) with overrides.

    Overrides whose value is ``None`` are treated as absent.
    """
    if path is None:
        path = os.environ.get(CONFIG_ENV) or None
    values = read_config_file(path) if path else {}
    for key, value in (overrides or {}).items():
        if value is None:
            continue
        if key == "lam":
            key = "lambda"
        if key not in SCHEMA:
            raise ConfigError(f"unknown key '{key}'; valid keys: {', '.join(SCHEMA)}")
        values[key] = _convert(key, str(value), "command line") if not isinstance(value, SCHEMA[key]) else value

    model = {k: v for k, v in values.items() if k in _MODEL_KEYS}
    options = {k: v for k, v in values.items() if k in _OPTION_KEYS}
    params = validate_params(model)
    _check_sweep(options)
    return RunConfig(params, options, source=str(path) if path else None)


def _check_sweep(options):
    if not any(k in options for k in ("var", "from", "to", "points")):
        return
    missing = [k for k in ("var", "from", "to", "points") if k not in options]
    if missing:
        raise ConfigError(f"sweep needs {', '.join(missing)}")
    if options["var"] not in SWEEP_VARS:
        raise ConfigError(f"cannot sweep '{options['var']}'; choose one of {', '.join(SWEEP_VARS)}")
    if options["points"] < 2:
        raise ConfigError("sweep needs at least 2 points")
    if not options["from"] < options["to"]:
        raise ConfigError("sweep needs from < to")


__all__ = ["ConfigError", "RunConfig", "parse_config", "read_config_file", "SWEEP_VARS",
           "CONFIG_ENV", "ValidationError"]
