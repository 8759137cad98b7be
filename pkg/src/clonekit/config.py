from __future__ import annotations

import json
from dataclasses import dataclass, fields, replace
from pathlib import Path

from .errors import ConfigError

ARITY_CAP = 6
DEGREE_CAP = 5
CLOSURE_BUDGET = 1 << 16
BRUTE_VAR_CAP = 24
MODAL_DEPTH_BOUND = 4
MODAL_MODEL_BOUND = 6


@dataclass(frozen=True)
class Config:
    """Tunable limits. Library functions take the same values as keyword arguments."""

    arity_cap: int = ARITY_CAP
    degree_cap: int = DEGREE_CAP
    closure_budget: int = CLOSURE_BUDGET
    brute_var_cap: int = BRUTE_VAR_CAP
    modal_depth_bound: int = MODAL_DEPTH_BOUND
    modal_model_bound: int = MODAL_MODEL_BOUND

    def __post_init__(self):
        for f in fields(self):
            v = getattr(self, f.name)
            if not isinstance(v, int) or isinstance(v, bool) or v <= 0:
                raise ConfigError(f"{f.name} must be a positive integer, got {v!r}")
        if self.arity_cap > 6:
            raise ConfigError("arity_cap must be at most 6 (one machine word per table)")
        if self.degree_cap < 2:
            raise ConfigError("degree_cap must be at least 2")

    def updated(self, **overrides) -> Config:
        clean = {k: v for k, v in overrides.items() if v is not None}
        unknown = set(clean) - {f.name for f in fields(self)}
        if unknown:
            raise ConfigError(f"unknown config keys: {sorted(unknown)}")
        return replace(self, **clean)

    @classmethod
    def from_file(cls, path: str | Path) -> Config:
        try:
            data = json.loads(Path(path).read_text())
        except (OSError, json.JSONDecodeError) as exc:
            raise ConfigError(f"cannot read config {path}: {exc}") from exc
        if not isinstance(data, dict):
            raise ConfigError("config file must hold a JSON object")
        return cls().updated(**data)
