"""JSON experiment configuration.

A config names where the valued graph comes from (a generator config or an
input file), which dichotomization methods and statistics to sweep, and the
seeds. The same object is embedded in every output manifest, so feeding a
``manifest.json`` back in as ``--config`` reruns the experiment exactly.
"""

from __future__ import annotations

import json
from dataclasses import asdict, dataclass, field, fields
from pathlib import Path
from typing import Optional

from .compare import ALL_STATISTICS, Statistic
from .contagion import LmConfig
from .dichotomize import Method
from .netgen import GenConfig

SCHEMA_VERSION = 1


class ConfigError(ValueError):
    pass


@dataclass
class ExperimentConfig:
    generation: Optional[dict] = None
    input: Optional[str] = None
    input_format: str = "edgelist"
    symmetrize: str = "mean"
    clamp_negative: bool = False
    methods: list = field(default_factory=lambda: [m.value for m in Method])
    ladder_steps: int = 24
    threshold_floor: bool = True
    statistics: list = field(default_factory=lambda: [s.value for s in ALL_STATISTICS])
    replicates: int = 10
    # "tiebreak": replicates re-randomize ties on one graph;
    # "redraw": each replicate is a fresh draw from the generator
    replicate_mode: str = "tiebreak"
    lm: Optional[dict] = None
    lm_replicates: int = 50
    out: str = "results"
    seed: int = 0
    schema_version: int = SCHEMA_VERSION

    def __post_init__(self):
        self.validate()

    @property
    def mode(self) -> str:
        return "generate" if self.generation is not None else "ingest"

    def validate(self) -> None:
        if (self.generation is None) == (self.input is None):
            raise ConfigError("exactly one of 'generation' and 'input' must be given")
        if self.replicates < 1:
            raise ConfigError("replicates must be at least 1")
        if self.ladder_steps < 1:
            raise ConfigError("ladder_steps must be at least 1")
        if self.input_format not in ("edgelist", "matrix"):
            raise ConfigError(f"unknown input_format {self.input_format!r}")
        if self.replicate_mode not in ("tiebreak", "redraw"):
            raise ConfigError(f"unknown replicate_mode {self.replicate_mode!r}")
        if self.replicate_mode == "redraw" and self.generation is None:
            raise ConfigError("replicate_mode 'redraw' needs a generation config")
        if self.schema_version != SCHEMA_VERSION:
            raise ConfigError(f"unsupported schema_version {self.schema_version}")
        try:
            for m in self.methods:
                Method(m)
            for s in self.statistics:
                Statistic(s)
            if self.generation is not None:
                GenConfig.from_dict(self.generation)
            if self.lm is not None:
                LmConfig(**self.lm)
        except (ValueError, TypeError) as exc:
            raise ConfigError(str(exc)) from exc

    def gen_config(self) -> GenConfig:
        return GenConfig.from_dict(self.generation)

    def lm_config(self) -> LmConfig:
        return LmConfig(**(self.lm or {}))

    def to_dict(self) -> dict:
        return asdict(self)

    @classmethod
    def from_dict(cls, d: dict) -> "ExperimentConfig":
        known = {f.name for f in fields(cls)}
        unknown = set(d) - known
        if unknown:
            raise ConfigError(f"unknown config keys: {sorted(unknown)}")
        return cls(**d)


def load_config(path) -> ExperimentConfig:
    """Load a config file or the ``config`` block of a manifest.

    A relative ``input`` path is resolved against the config file's folder.
    """
    path = Path(path)
    if not path.exists():
        raise FileNotFoundError(f"config file not found: {path}")
    try:
        data = json.loads(path.read_text())
    except json.JSONDecodeError as exc:
        raise ConfigError(f"{path}: invalid JSON ({exc})") from exc
    if "manifest_version" in data:
        data = data["config"]
    if data.get("input") is not None and not Path(data["input"]).is_absolute():
        data["input"] = str((path.parent / data["input"]).resolve())
    return ExperimentConfig.from_dict(data)
