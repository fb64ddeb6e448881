"""Flat key=value scenario configuration and the built-in parameter sets."""

from __future__ import annotations

import math
import re
from dataclasses import dataclass, replace

import numpy as np

from .errors import ConfigError
from .states import (
    DEFAULT_WINDOW_MULT,
    GaussianSpec,
    coherent_means_for_field,
    sigma_field_for_means,
    spin_coherent_atom_count,
)

ATOM_PRESETS = ("gaussian", "spin_coherent")
FIELD_PRESETS = ("gaussian", "dual_coherent")
CAVITY_CONVENTIONS = ("doubled", "tau_substitution", "both")

_NAME_RE = re.compile(r"^[A-Za-z0-9][A-Za-z0-9_.-]*$")

_KNOWN_KEYS = {
    "scenario",
    "name",
    "atom.preset",
    "atom.sigma",
    "atom.center",
    "atom.count",
    "atom.width_match",
    "field.preset",
    "field.sigma",
    "field.center",
    "field.mean_plus",
    "field.mean_minus",
    "coupling.g",
    "tau.start",
    "tau.stop",
    "tau.count",
    "window_mult",
    "output.dir",
    "figures",
    "cavity.kappa_min",
    "cavity.kappa_max",
    "cavity.count",
    "cavity.delta",
    "cavity.convention",
}

# Published parameter sets; widths are the amplitude-level 1/e half-widths.
_BUILTINS: dict[str, dict[str, str]] = {
    "fig2a": {"atom.sigma": "3", "field.sigma": "24"},
    "fig2b": {
        "atom.sigma": "10",
        "field.sigma": "24",
        "atom.center": "2",
        "field.center": "12",
    },
    "fig2c": {"atom.sigma": "18", "field.sigma": "24"},
    "fig3a": {"atom.sigma": "6", "field.sigma": "24"},
    "fig3b": {"atom.sigma": "18", "field.sigma": "24"},
}


def builtin_scenarios() -> tuple[str, ...]:
    return tuple(sorted(_BUILTINS))


@dataclass(frozen=True)
class CavityReportSpec:
    """Geometric kappa_c/g sweep for the cavity adjudication report."""

    kappa_min: float
    kappa_max: float
    count: int
    delta: float = 0.0
    convention: str = "both"

    def __post_init__(self) -> None:
        for label in ("kappa_min", "kappa_max"):
            value = getattr(self, label)
            if not (math.isfinite(value) and value > 0):
                raise ConfigError(f"cavity.{label} must be finite and positive")
        if self.count != int(self.count) or self.count < 1:
            raise ConfigError(f"cavity.count must be a positive integer, got {self.count!r}")
        object.__setattr__(self, "count", int(self.count))
        if self.count > 1 and not self.kappa_max > self.kappa_min:
            raise ConfigError(
                "cavity sweep needs kappa_max > kappa_min when count > 1"
            )
        if not math.isfinite(self.delta):
            raise ConfigError("cavity.delta must be finite")
        if self.convention not in CAVITY_CONVENTIONS:
            raise ConfigError(
                f"cavity.convention must be one of {CAVITY_CONVENTIONS}, "
                f"got {self.convention!r}"
            )

    def kappa_over_g_grid(self) -> np.ndarray:
        if self.count == 1:
            return np.array([self.kappa_min])
        return np.geomspace(self.kappa_min, self.kappa_max, self.count)


@dataclass(frozen=True)
class ScenarioConfig:
    """Fully resolved run parameters; construction performs all validation."""

    name: str
    atom_preset: str
    field_preset: str
    sigma_A: float
    sigma_F: float
    N_A: int
    m0: float
    n0: float
    g: float
    mean_plus: float | None
    mean_minus: float | None
    tau_start: float
    tau_stop: float
    tau_count: int
    window_mult: float
    out_dir: str | None
    figures: bool
    cavity: CavityReportSpec

    def __post_init__(self) -> None:
        if not _NAME_RE.match(self.name):
            raise ConfigError(
                f"name must be alphanumeric with ._- separators, got {self.name!r}"
            )
        if self.atom_preset not in ATOM_PRESETS:
            raise ConfigError(
                f"atom.preset must be one of {ATOM_PRESETS}, got {self.atom_preset!r}"
            )
        if self.field_preset not in FIELD_PRESETS:
            raise ConfigError(
                f"field.preset must be one of {FIELD_PRESETS}, got {self.field_preset!r}"
            )
        self.gaussian_spec()  # validates widths, centers, N_A, g
        if not (math.isfinite(self.tau_start) and self.tau_start >= 0):
            raise ConfigError(f"tau.start must be >= 0, got {self.tau_start!r}")
        if not math.isfinite(self.tau_stop):
            raise ConfigError("tau.stop must be finite")
        if self.tau_count != int(self.tau_count) or self.tau_count < 1:
            raise ConfigError(
                f"tau.count must be a positive integer, got {self.tau_count!r}"
            )
        object.__setattr__(self, "tau_count", int(self.tau_count))
        if self.tau_count > 1 and not self.tau_stop > self.tau_start:
            raise ConfigError(
                "tau grid is empty or non-increasing: need tau.stop > tau.start "
                f"(got {self.tau_start!r} .. {self.tau_stop!r})"
            )
        if not (math.isfinite(self.window_mult) and self.window_mult >= 3.0):
            raise ConfigError(f"window_mult must be >= 3, got {self.window_mult!r}")
        if self.field_preset == "dual_coherent":
            if self.mean_plus is None or self.mean_minus is None:
                raise ConfigError(
                    "dual_coherent field needs field.mean_plus/field.mean_minus "
                    "(or field.sigma/field.center to derive them)"
                )

    def gaussian_spec(self) -> GaussianSpec:
        """Gaussian reference model with this scenario's widths and centers."""
        return GaussianSpec(
            sigma_A=self.sigma_A,
            sigma_F=self.sigma_F,
            N_A=self.N_A,
            m0=self.m0,
            n0=self.n0,
            g=self.g,
        )

    def tau_grid(self) -> np.ndarray:
        if self.tau_count == 1:
            return np.array([self.tau_start])
        return np.linspace(self.tau_start, self.tau_stop, self.tau_count)

    def with_overrides(
        self,
        *,
        out_dir: str | None = None,
        window_mult: float | None = None,
        tau_count: int | None = None,
        figures: bool | None = None,
    ) -> "ScenarioConfig":
        """Command-line overrides, re-running full validation."""
        changes = {}
        if out_dir is not None:
            changes["out_dir"] = out_dir
        if window_mult is not None:
            changes["window_mult"] = float(window_mult)
        if tau_count is not None:
            changes["tau_count"] = tau_count
        if figures is not None:
            changes["figures"] = figures
        return replace(self, **changes) if changes else self


def parse_config_text(text: str) -> dict[str, str]:
    """Parse flat 'key = value' lines; '#' starts a comment anywhere."""
    mapping: dict[str, str] = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        key, sep, value = line.partition("=")
        key = key.strip()
        value = value.strip()
        if not sep or not key or not value:
            raise ConfigError(f"line {lineno}: expected 'key = value', got {raw.strip()!r}")
        if key in mapping:
            raise ConfigError(f"line {lineno}: duplicate key {key!r}")
        mapping[key] = value
    return mapping


def _get_float(mapping: dict[str, str], key: str, default: float | None = None) -> float | None:
    if key not in mapping:
        return default
    try:
        return float(mapping[key])
    except ValueError as exc:
        raise ConfigError(f"{key} must be a number, got {mapping[key]!r}") from exc


def _get_int(mapping: dict[str, str], key: str, default: int | None = None) -> int | None:
    if key not in mapping:
        return default
    try:
        return int(mapping[key])
    except ValueError as exc:
        raise ConfigError(f"{key} must be an integer, got {mapping[key]!r}") from exc


def _get_bool(mapping: dict[str, str], key: str, default: bool) -> bool:
    if key not in mapping:
        return default
    value = mapping[key].lower()
    if value in ("true", "yes", "1", "on"):
        return True
    if value in ("false", "no", "0", "off"):
        return False
    raise ConfigError(f"{key} must be a boolean, got {mapping[key]!r}")


def config_from_mapping(mapping: dict[str, str]) -> ScenarioConfig:
    """Resolve a flat mapping (defaults, derivations, checks) into a config."""
    unknown = sorted(set(mapping) - _KNOWN_KEYS)
    if unknown:
        raise ConfigError(f"unknown configuration keys: {', '.join(unknown)}")
    scenario = mapping.get("scenario")
    if scenario is not None:
        if scenario not in _BUILTINS:
            raise ConfigError(
                f"unknown scenario {scenario!r}; built-ins are "
                f"{', '.join(builtin_scenarios())}"
            )
        merged = dict(_BUILTINS[scenario])
        merged.update({k: v for k, v in mapping.items() if k != "scenario"})
        mapping = merged
    name = mapping.get("name") or scenario or "run"

    atom_preset = mapping.get("atom.preset", "gaussian")
    field_preset = mapping.get("field.preset", "gaussian")

    sigma_A = _get_float(mapping, "atom.sigma")
    m0 = _get_float(mapping, "atom.center", 0.0)
    if sigma_A is None:
        raise ConfigError("atom.sigma is required (or inherit it via scenario = <name>)")

    mean_plus = _get_float(mapping, "field.mean_plus")
    mean_minus = _get_float(mapping, "field.mean_minus")
    sigma_F = _get_float(mapping, "field.sigma")
    n0 = _get_float(mapping, "field.center", 0.0)
    if field_preset == "dual_coherent":
        if (mean_plus is None) != (mean_minus is None):
            raise ConfigError(
                "field.mean_plus and field.mean_minus must be given together"
            )
        if mean_plus is None:
            if sigma_F is None:
                raise ConfigError(
                    "dual_coherent field needs field.mean_plus/field.mean_minus "
                    "or field.sigma (+ optional field.center)"
                )
            mean_plus, mean_minus = coherent_means_for_field(sigma_F, n0)
        # The Gaussian reference columns use the moment-matched width/center.
        sigma_F = sigma_field_for_means(mean_plus, mean_minus)
        n0 = mean_plus - mean_minus
    elif mean_plus is not None or mean_minus is not None:
        raise ConfigError(
            "field.mean_plus/field.mean_minus only apply to field.preset = dual_coherent"
        )
    if sigma_F is None:
        raise ConfigError("field.sigma is required (or inherit it via scenario = <name>)")

    width_match = _get_bool(mapping, "atom.width_match", False)
    N_A = _get_int(mapping, "atom.count")
    if N_A is None:
        N_A = spin_coherent_atom_count(sigma_A, width_match=width_match)
    elif "atom.width_match" in mapping:
        raise ConfigError("atom.width_match only applies when atom.count is derived")

    cavity = CavityReportSpec(
        kappa_min=_get_float(mapping, "cavity.kappa_min", 10.0),
        kappa_max=_get_float(mapping, "cavity.kappa_max", 1000.0),
        count=_get_int(mapping, "cavity.count", 13),
        delta=_get_float(mapping, "cavity.delta", 0.0),
        convention=mapping.get("cavity.convention", "both"),
    )

    return ScenarioConfig(
        name=name,
        atom_preset=atom_preset,
        field_preset=field_preset,
        sigma_A=sigma_A,
        sigma_F=sigma_F,
        N_A=N_A,
        m0=m0,
        n0=n0,
        g=_get_float(mapping, "coupling.g", 1.0),
        mean_plus=mean_plus,
        mean_minus=mean_minus,
        tau_start=_get_float(mapping, "tau.start", 0.0),
        tau_stop=_get_float(mapping, "tau.stop", 0.12),
        tau_count=_get_int(mapping, "tau.count", 31),
        window_mult=_get_float(mapping, "window_mult", DEFAULT_WINDOW_MULT),
        out_dir=mapping.get("output.dir"),
        figures=_get_bool(mapping, "figures", True),
        cavity=cavity,
    )


def load_config(path: str) -> ScenarioConfig:
    """Read and resolve a config file; unreadable files are config errors."""
    try:
        with open(path, "r", encoding="utf-8") as handle:
            text = handle.read()
    except OSError as exc:
        raise ConfigError(f"cannot read config file {path!r}: {exc}") from exc
    return config_from_mapping(parse_config_text(text))


def builtin_config(name: str) -> ScenarioConfig:
    """Resolved configuration of a built-in scenario."""
    if name not in _BUILTINS:
        raise ConfigError(
            f"unknown scenario {name!r}; built-ins are {', '.join(builtin_scenarios())}"
        )
    return config_from_mapping({"scenario": name})
