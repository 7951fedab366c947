"""Flat ``key=value`` configuration shared by the CLI verbs."""
from __future__ import annotations

import dataclasses
from dataclasses import dataclass, fields
from pathlib import Path

from .annealing import AnnealingSchedule
from .errors import QJSDError

SCHEDULE_KEYS = tuple(f.name for f in fields(AnnealingSchedule) if f.name != "seed")

FAST_OVERRIDES = {"points": 11, "restarts": 2, "samples": 2000, "trials": 1000}


@dataclass
class ExperimentConfig:
    seed: int = 0
    # hist-distance
    dims: tuple = (2, 3, 4, 6, 8)
    samples: int = 10_000
    bins: int = 50
    # entanglement-curve
    family: str = "all"
    points: int = 21
    # triangle-check and properties
    trials: int = 10_000
    # annealing schedule
    t_initial: float = AnnealingSchedule.t_initial
    t_final: float = AnnealingSchedule.t_final
    cooling: float = AnnealingSchedule.cooling
    sweeps: int = AnnealingSchedule.sweeps
    moves_per_sweep: int = AnnealingSchedule.moves_per_sweep
    bloch_step: float = AnnealingSchedule.bloch_step
    weight_step: float = AnnealingSchedule.weight_step
    restarts: int = AnnealingSchedule.restarts
    step_power: float = AnnealingSchedule.step_power

    def schedule(self) -> AnnealingSchedule:
        return AnnealingSchedule(seed=self.seed, **{k: getattr(self, k) for k in SCHEDULE_KEYS})

    def update(self, values: dict) -> "ExperimentConfig":
        return dataclasses.replace(self, **{k: coerce(k, v) for k, v in values.items()})

    def dump(self) -> str:
        lines = []
        for f in fields(self):
            value = getattr(self, f.name)
            if isinstance(value, tuple):
                value = ",".join(str(v) for v in value)
            lines.append(f"{f.name}={value}")
        return "\n".join(lines) + "\n"


_DEFAULTS = ExperimentConfig()


def coerce(key: str, value):
    if key not in {f.name for f in fields(ExperimentConfig)}:
        raise QJSDError(f"unknown configuration key {key!r}")
    default = getattr(_DEFAULTS, key)
    if not isinstance(value, str):
        return tuple(value) if isinstance(default, tuple) else type(default)(value)
    try:
        if isinstance(default, tuple):
            return tuple(int(v) for v in value.split(",") if v.strip())
        if isinstance(default, int):
            return int(value)
        if isinstance(default, float):
            return float(value)
    except ValueError:
        raise QJSDError(f"bad value for {key}: {value!r}") from None
    return value.strip()


def parse_key_values(text: str) -> dict[str, str]:
    """Parse ``key=value`` lines; blank lines and ``#`` comments are skipped."""
    out = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise QJSDError(f"line {lineno}: expected key=value, got {raw!r}")
        key, value = (part.strip() for part in line.split("=", 1))
        out[key] = value
    return out


def load_config(path) -> dict[str, str]:
    return parse_key_values(Path(path).read_text())


def load_schedule(path, seed: int = 0) -> AnnealingSchedule:
    """AnnealingSchedule from a key=value file; unspecified fields keep defaults."""
    values = parse_key_values(Path(path).read_text())
    unknown = set(values) - set(SCHEDULE_KEYS) - {"seed"}
    if unknown:
        raise QJSDError(f"unknown schedule keys: {sorted(unknown)}")
    cfg = _DEFAULTS.update({k: v for k, v in values.items() if k != "seed"})
    seed = int(values.get("seed", seed))
    return dataclasses.replace(cfg.schedule(), seed=seed)
