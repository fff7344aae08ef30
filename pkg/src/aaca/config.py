"""Run configuration: JSON file, environment fallback, command-line overrides."""

import dataclasses
import json
import os
from dataclasses import dataclass, field
from pathlib import Path

import jsonschema

from .aco import VMAX_MODES, AcoParams
from .image import COORD_MODES, HALF_PIXEL
from .interpolate import METHODS
from .weighting import DEFAULT_EPS

CONFIG_ENV = "AACA_CONFIG"

_count = {"type": "integer", "minimum": 0}

SCHEMA = {
    "type": "object",
    "additionalProperties": False,
    "properties": {
        "alpha": {"type": "number", "minimum": 0},
        "beta": {"type": "number", "minimum": 0},
        "tau_init": {"type": "number", "exclusiveMinimum": 0},
        "phi": {"type": "number", "exclusiveMinimum": 0, "exclusiveMaximum": 1},
        "rho": {"type": "number", "exclusiveMinimum": 0, "exclusiveMaximum": 1},
        "q0": {"type": "number", "minimum": 0, "maximum": 1},
        "iterations": {"type": "integer", "minimum": 1, "maximum": 10},
        "steps_per_ant": _count,
        "ants": _count,
        "memory_size": _count,
        "seed": {"type": "integer", "minimum": 0, "maximum": 2**64 - 1},
        "vmax_mode": {"enum": list(VMAX_MODES)},
        "methods": {"type": "array", "items": {"enum": list(METHODS)}, "minItems": 1},
        "scale": {"type": "integer", "minimum": 2},
        "downscale": {"enum": ["decimate", "box"]},
        "coord_mode": {"enum": list(COORD_MODES)},
        "obaca_normalize": {"type": "boolean"},
        "eps": {"type": "number", "minimum": 0},
        "n_jobs": {"type": "integer", "minimum": 1},
        "inputs": {"type": "array", "items": {"type": "string"}},
        "output": {"type": ["string", "null"]},
        "report": {"type": ["string", "null"]},
        "compare": {"type": "array", "items": {"type": "string"}},
    },
}


class ConfigError(ValueError):
    pass


@dataclass
class RunConfig:
    alpha: float = 1.0
    beta: float = 2.0
    tau_init: float = 1e-4
    phi: float = 1e-5
    rho: float = 0.1
    q0: float = 0.7
    iterations: int = 4
    steps_per_ant: int = 40
    ants: int = 0
    memory_size: int = 0
    seed: int = 0
    vmax_mode: str = "empirical"
    methods: list = field(default_factory=lambda: list(METHODS))
    scale: int = 4
    downscale: str = "decimate"
    coord_mode: str = HALF_PIXEL
    obaca_normalize: bool = True
    eps: float = DEFAULT_EPS
    n_jobs: int = 1
    inputs: list = field(default_factory=list)
    output: str = None
    report: str = None
    compare: list = field(default_factory=list)

    def aco_params(self):
        names = {f.name for f in dataclasses.fields(AcoParams)}
        return AcoParams(**{k: v for k, v in self.as_dict().items() if k in names})

    def as_dict(self):
        return dataclasses.asdict(self)


def validate(values):
    try:
        jsonschema.validate(values, SCHEMA)
    except jsonschema.ValidationError as exc:
        where = ".".join(str(p) for p in exc.absolute_path) or "<root>"
        raise ConfigError(f"invalid config at {where}: {exc.message}") from None


def load_config_file(path):
    try:
        values = json.loads(Path(path).read_text())
    except json.JSONDecodeError as exc:
        raise ConfigError(f"{path}: not valid JSON ({exc})") from None
    validate(values)
    return values


def build_config(config_path=None, overrides=None):
    """File values (explicit path, else ``$AACA_CONFIG``), then ``overrides``.

    ``None`` entries in ``overrides`` mean "not given" and are skipped.
    """
    values = {}
    path = config_path or os.environ.get(CONFIG_ENV)
    if path:
        values.update(load_config_file(path))
    values.update({k: v for k, v in (overrides or {}).items() if v is not None})
    validate(values)
    cfg = RunConfig(**values)
    try:
        cfg.aco_params()
    except ValueError as exc:
        raise ConfigError(str(exc)) from None
    return cfg
