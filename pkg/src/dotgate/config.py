"""Run configuration: flat ``key = value`` files plus CLI overrides.

The file format is one assignment per line, ``#`` starts a comment,
unknown keys are rejected.  CLI flags take precedence over file values,
which take precedence over the built-in defaults (the R = 1/7,
delta_a = 2.5 meV design point).
"""

from __future__ import annotations

from dataclasses import dataclass, fields, replace
from pathlib import Path

from .model import ParameterError, SystemParams
from . import pulses


class ConfigError(ValueError):
    """Raised for unreadable, unknown or ill-typed configuration entries."""


_DESIGN_R_DEFAULT = 1.0 / 7.0
_DESIGN_DELTA_A_DEFAULT = 2.5


@dataclass
class RunConfig:
    """Everything a CLI run needs; mirrors SystemParams plus driver options."""

    omega_a: float = 1000.0
    delta_small: float = 1.0
    delta_big: float = 4.0
    delta_a: float = _DESIGN_DELTA_A_DEFAULT
    omega0_a: float = 0.0
    omega0_b: float = 0.0
    tau: float = 0.0
    window_factor: float = 8.0
    model: str = "full"
    initial: str = "11"
    sweep_delta_a: tuple[float, ...] = (1.5, 2.5, 3.0)
    sweep_r_min: float = 0.05
    sweep_r_max: float = 0.5
    sweep_points: int = 46
    out: str = ""
    step: float = 0.0
    samples: int = 512

    def to_system_params(self) -> SystemParams:
        """Build validated physical parameters (raises ParameterError)."""
        return SystemParams(
            omega_a=self.omega_a,
            delta_small=self.delta_small,
            delta_big=self.delta_big,
            delta_a=self.delta_a,
            omega0_a=self.omega0_a,
            omega0_b=self.omega0_b,
            tau=self.tau,
            window_factor=self.window_factor,
        )

    def validate_sweep(self) -> None:
        if not self.sweep_delta_a:
            raise ConfigError("sweep needs a non-empty delta_a list")
        if not self.sweep_r_min < self.sweep_r_max:
            raise ConfigError(
                f"sweep r range must satisfy min < max, got [{self.sweep_r_min}, {self.sweep_r_max}]"
            )
        if self.sweep_points < 2:
            raise ConfigError(f"sweep needs at least 2 grid points, got {self.sweep_points}")


def default_config() -> RunConfig:
    """Defaults: the shortest-gate detuning with the conservative pulse ratio."""
    cfg = RunConfig()
    point = pulses.solve_tau_for_r(
        _DESIGN_R_DEFAULT,
        _DESIGN_DELTA_A_DEFAULT,
        SystemParams(window_factor=cfg.window_factor),
    )
    return replace(cfg, omega0_a=point.omega0, omega0_b=point.omega0, tau=point.tau)


_FIELD_TYPES = {f.name: f.type for f in fields(RunConfig)}


def _parse_value(key: str, raw: str):
    if key not in _FIELD_TYPES:
        raise ConfigError(f"unknown configuration key {key!r}")
    raw = raw.strip()
    kind = _FIELD_TYPES[key]
    try:
        if key == "sweep_delta_a":
            values = tuple(float(tok) for tok in raw.replace(",", " ").split())
            if not values:
                raise ValueError("empty list")
            return values
        if kind == "int":
            return int(raw)
        if kind == "float":
            return float(raw)
        return raw
    except ValueError as exc:
        raise ConfigError(f"bad value for {key!r}: {raw!r} ({exc})") from exc


def load_config(path: str | Path | None) -> RunConfig:
    """Defaults, updated from a config file when one is given."""
    cfg = default_config()
    if path is None:
        return cfg
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise ConfigError(f"cannot read config {path}: {exc}") from exc
    for lineno, line in enumerate(text.splitlines(), start=1):
        stripped = line.split("#", 1)[0].strip()
        if not stripped:
            continue
        if "=" not in stripped:
            raise ConfigError(f"{path}:{lineno}: expected 'key = value', got {line!r}")
        key, raw = (part.strip() for part in stripped.split("=", 1))
        setattr(cfg, key, _parse_value(key, raw))
    return cfg
