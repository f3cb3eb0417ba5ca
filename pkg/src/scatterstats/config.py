"""Run configuration: defaults, INI-style config files, CLI overrides.

A config file holds ``key = value`` pairs grouped into sections::

    [problem]
    wavenumber = 2.0
    direction = -1, 0

    [sampling]
    samples = 2000

Key names are unique across sections, so command-line overrides refer to
them directly (``--set samples=500``).  Defaults are the desk-scale
profile; the paper-scale profile (n_gamma = n_sigma = 1000, 10000 samples)
is a config file away.
"""

from __future__ import annotations

import configparser
from dataclasses import dataclass, fields, replace
from pathlib import Path

import numpy as np

from .errors import ConfigError
from .potentials import CLEARANCE_WAVELENGTHS

_SECTIONS = {
    "problem": ("scatterer", "circle_radius", "wavenumber", "direction",
                "coupling"),
    "discretization": ("n_gamma", "n_sigma", "radius_sigma"),
    "sampling": ("samples", "dimension", "amplitude", "halton_start"),
    "lowrank": ("eps",),
    "grid": ("grid_r_min", "grid_r_max", "grid_nr", "grid_ntheta"),
    "farfield": ("farfield_directions",),
    "run": ("mode", "threads", "out_dir"),
}


@dataclass(frozen=True)
class RunConfig:
    """Everything a pipeline run needs; see module docstring for sections."""

    scatterer: str = "kite"            # "kite" or "circle"
    circle_radius: float = 1.0
    wavenumber: float = 2.0
    direction: tuple = (1.0, 0.0)
    coupling: float = None             # None -> wavenumber

    n_gamma: int = 300
    n_sigma: int = 300
    radius_sigma: float = 11.0

    samples: int = 2000
    dimension: int = 1000
    amplitude: float = 1.0
    halton_start: int = 1

    eps: float = 1e-12

    grid_r_min: float = None           # None -> radius_sigma + clearance
    grid_r_max: float = 50.0
    grid_nr: int = 40
    grid_ntheta: int = 90

    farfield_directions: int = 360

    mode: str = "deterministic"        # "deterministic" or "parallel"
    threads: int = 1
    out_dir: str = "out"

    @property
    def clearance(self):
        return CLEARANCE_WAVELENGTHS * 2.0 * np.pi / self.wavenumber

    @property
    def effective_coupling(self):
        return self.wavenumber if self.coupling is None else self.coupling

    @property
    def effective_grid_r_min(self):
        if self.grid_r_min is None:
            return self.radius_sigma + self.clearance
        return self.grid_r_min

    def validate(self):
        problems = []
        if self.scatterer not in ("kite", "circle"):
            problems.append(f"scatterer: unknown kind {self.scatterer!r}")
        if not self.wavenumber > 0:
            problems.append("wavenumber: must be > 0")
        if self.effective_coupling * self.wavenumber <= 0:
            problems.append("coupling: eta * kappa must be > 0")
        d = np.asarray(self.direction, dtype=np.float64)
        if d.shape != (2,) or np.hypot(d[0], d[1]) == 0:
            problems.append("direction: must be a nonzero 2-vector")
        for name in ("n_gamma", "n_sigma"):
            value = getattr(self, name)
            if value < 16 or value % 2 != 0:
                problems.append(f"{name}: must be even and >= 16, got {value}")
        if not self.radius_sigma > 0:
            problems.append("radius_sigma: must be > 0")
        if self.samples < 1:
            problems.append("samples: must be >= 1")
        if self.dimension < 2 or self.dimension % 2 != 0:
            problems.append("dimension: must be even and >= 2")
        if self.halton_start < 1:
            problems.append("halton_start: must be >= 1")
        if not 0.0 < self.eps < 1.0:
            problems.append("eps: must lie in (0, 1)")
        if self.grid_nr > 0 and self.grid_r_min is not None:
            if self.grid_r_min < self.radius_sigma + self.clearance - 1e-12:
                problems.append(
                    "grid_r_min: must be >= radius_sigma + 0.1 wavelengths "
                    f"= {self.radius_sigma + self.clearance:.4f}")
        if self.grid_nr > 0 and self.grid_r_max < self.effective_grid_r_min:
            problems.append("grid_r_max: must be >= the inner grid radius")
        if self.mode not in ("deterministic", "parallel"):
            problems.append(f"mode: unknown mode {self.mode!r}")
        if self.threads < 1:
            problems.append("threads: must be >= 1")
        if self.mode == "deterministic" and self.threads != 1:
            problems.append("threads: deterministic mode requires threads = 1")
        if problems:
            raise ConfigError("invalid configuration: " + "; ".join(problems))
        return self


_FIELD_TYPES = {f.name: f for f in fields(RunConfig)}
_FIELD_SECTION = {name: section for section, names in _SECTIONS.items()
                  for name in names}


def _parse_value(name, raw):
    raw = raw.strip()
    if name not in _FIELD_TYPES:
        raise ConfigError(f"unknown configuration key {name!r}")
    if name == "direction":
        parts = [p for p in raw.replace(",", " ").split() if p]
        if len(parts) != 2:
            raise ConfigError(f"direction: expected two components, got {raw!r}")
        return (float(parts[0]), float(parts[1]))
    if name in ("coupling", "grid_r_min"):
        return None if raw.lower() in ("none", "auto", "") else float(raw)
    default = RunConfig.__dataclass_fields__[name].default
    if isinstance(default, bool):
        return raw.lower() in ("1", "true", "yes", "on")
    if isinstance(default, int):
        return int(raw)
    if isinstance(default, float):
        return float(raw)
    return raw


def load_config(path):
    """Parse an INI-style config file into a RunConfig."""
    parser = configparser.ConfigParser(inline_comment_prefixes=("#", ";"))
    read = parser.read(path)
    if not read:
        raise ConfigError(f"cannot read config file {path}")
    values = {}
    for section in parser.sections():
        if section not in _SECTIONS:
            raise ConfigError(f"{path}: unknown section [{section}]")
        for key, raw in parser.items(section):
            if key not in _SECTIONS[section]:
                raise ConfigError(
                    f"{path}: key {key!r} does not belong in [{section}]")
            values[key] = _parse_value(key, raw)
    return RunConfig(**values)


def apply_overrides(config, assignments):
    """Apply ``key=value`` strings on top of a config."""
    updates = {}
    for item in assignments:
        if "=" not in item:
            raise ConfigError(f"override {item!r} is not of the form key=value")
        key, raw = item.split("=", 1)
        updates[key.strip()] = _parse_value(key.strip(), raw)
    return replace(config, **updates)


def manifest_lines(config, results=None):
    """Render a config (+ result summary) as INI-style manifest lines."""
    lines = []
    for section, names in _SECTIONS.items():
        lines.append(f"[{section}]")
        for name in names:
            value = getattr(config, name)
            if name == "direction":
                value = f"{value[0]:.17g}, {value[1]:.17g}"
            elif isinstance(value, float):
                value = f"{value:.17g}"
            lines.append(f"{name} = {value}")
        lines.append("")
    lines.append("[derived]")
    lines.append(f"coupling_effective = {config.effective_coupling:.17g}")
    lines.append(f"grid_r_min_effective = {config.effective_grid_r_min:.17g}")
    lines.append("")
    if results:
        lines.append("[result]")
        for key, value in results.items():
            if isinstance(value, float):
                value = f"{value:.17g}"
            lines.append(f"{key} = {value}")
        lines.append("")
    return lines


def write_manifest(path, config, results=None):
    Path(path).write_text("\n".join(manifest_lines(config, results)) + "\n",
                          encoding="utf-8")
