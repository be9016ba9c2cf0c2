"""Plain-text run configuration: "key = value" lines with "#" comments.

Unknown keys are rejected with the offending line number; missing keys fall
back to the documented defaults (the ideal-run operating point).  The manifest
written next to every run uses the same syntax, so a manifest can be fed back
as a config to reproduce the run exactly.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from pathlib import Path

from .params import DEFAULTS, SimulationParams

PARAM_KEYS = tuple(DEFAULTS)
_FLOAT_PARAM_KEYS = tuple(k for k in PARAM_KEYS if k not in ("model", "dissipation"))
SWEEPABLE_KEYS = _FLOAT_PARAM_KEYS

DEFAULT_OUT_DIR = "out"
DEFAULT_PARALLEL = 1


class ConfigError(ValueError):
    """Malformed or inconsistent run configuration."""


@dataclass(frozen=True)
class SweepAxis:
    name: str
    minimum: float
    maximum: float
    points: int

    def __post_init__(self):
        if self.name not in SWEEPABLE_KEYS:
            raise ConfigError(f"cannot sweep {self.name!r}; sweepable keys: {SWEEPABLE_KEYS}")
        if self.points < 1:
            raise ConfigError(f"sweep over {self.name} needs points >= 1, got {self.points}")
        if self.points > 1 and not self.minimum < self.maximum:
            raise ConfigError(f"sweep over {self.name} needs min < max")

    def values(self):
        import numpy as np

        if self.points == 1:
            return np.array([self.minimum])
        return np.linspace(self.minimum, self.maximum, self.points)


@dataclass(frozen=True)
class RunConfig:
    params: SimulationParams = field(default_factory=SimulationParams)
    axes: tuple[SweepAxis, ...] = ()
    out_dir: str = DEFAULT_OUT_DIR
    parallel: int = DEFAULT_PARALLEL

    def __post_init__(self):
        if self.parallel < 1:
            raise ConfigError(f"parallel must be >= 1, got {self.parallel}")
        if len(self.axes) > 2:
            raise ConfigError(f"at most 2 sweep axes supported, got {len(self.axes)}")

    def to_text(self) -> str:
        lines = []
        for key in PARAM_KEYS:
            lines.append(f"{key} = {_format_value(getattr(self.params, key))}")
        lines.append(f"out_dir = {self.out_dir}")
        lines.append(f"parallel = {self.parallel}")
        for i, axis in enumerate(self.axes, start=1):
            lines.append(f"sweep{i} = {axis.name}")
            lines.append(f"sweep{i}_min = {_format_value(axis.minimum)}")
            lines.append(f"sweep{i}_max = {_format_value(axis.maximum)}")
            lines.append(f"sweep{i}_points = {axis.points}")
        return "\n".join(lines) + "\n"


def _format_value(value) -> str:
    if isinstance(value, float):
        return repr(value)
    return str(value)


def _parse_lines(text: str) -> dict[str, tuple[str, int]]:
    entries: dict[str, tuple[str, int]] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"line {lineno}: expected 'key = value', got {raw.strip()!r}")
        key, _, value = line.partition("=")
        key = key.strip()
        value = value.strip()
        if key in entries:
            raise ConfigError(f"line {lineno}: duplicate key {key!r}")
        entries[key] = (value, lineno)
    return entries


_KNOWN_SCALAR_KEYS = set(PARAM_KEYS) | {"out_dir", "parallel"}
_SWEEP_SUFFIXES = ("", "_min", "_max", "_points")


def parse_config(text: str) -> RunConfig:
    entries = _parse_lines(text)
    known = set(_KNOWN_SCALAR_KEYS)
    for i in (1, 2):
        known.update(f"sweep{i}{suffix}" for suffix in _SWEEP_SUFFIXES)
    for key, (_, lineno) in entries.items():
        if key not in known:
            raise ConfigError(f"line {lineno}: unknown key {key!r}")

    def take(key: str, convert, default):
        if key not in entries:
            return default
        value, lineno = entries[key]
        try:
            return convert(value)
        except ValueError as exc:
            raise ConfigError(f"line {lineno}: bad value for {key}: {exc}") from exc

    kwargs = {}
    for key in PARAM_KEYS:
        if key in ("model", "dissipation"):
            kwargs[key] = take(key, str, DEFAULTS[key])
        else:
            kwargs[key] = take(key, float, DEFAULTS[key])
    try:
        params = SimulationParams(**kwargs)
    except ValueError as exc:
        raise ConfigError(str(exc)) from exc

    axes = []
    for i in (1, 2):
        name_key = f"sweep{i}"
        present = [f"{name_key}{s}" for s in _SWEEP_SUFFIXES if f"{name_key}{s}" in entries]
        if not present:
            continue
        if i == 2 and "sweep1" not in entries:
            raise ConfigError("sweep2 given without sweep1")
        missing = [f"{name_key}{s}" for s in _SWEEP_SUFFIXES if f"{name_key}{s}" not in entries]
        if missing:
            raise ConfigError(f"incomplete sweep block: missing {', '.join(missing)}")
        axes.append(
            SweepAxis(
                name=take(name_key, str, None),
                minimum=take(f"{name_key}_min", float, None),
                maximum=take(f"{name_key}_max", float, None),
                points=take(f"{name_key}_points", int, None),
            )
        )

    out_dir = take("out_dir", str, DEFAULT_OUT_DIR)
    parallel = take("parallel", int, DEFAULT_PARALLEL)
    return RunConfig(params=params, axes=tuple(axes), out_dir=out_dir, parallel=parallel)


def load_config(path: str | Path) -> RunConfig:
    """Parse and validate a config file; empty files give the default run."""
    return parse_config(Path(path).read_text(encoding="utf-8"))
