"""Scenario execution: marginal construction, sweeps, CSV/manifest emission.

All floats are printed with 12 significant digits and files are written with
fixed column order and '\n' newlines, so identical configurations produce
byte-identical outputs.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from pathlib import Path

from . import __about__
from .analytic import break_time, compare
from .cavity import (
    CavityParams,
    bad_cavity_phase,
    exact_phase,
    output_joint_state,
    output_schmidt_number,
)
from .config import ScenarioConfig
from .errors import ConfigError
from .schmidt import schmidt_decompose, schmidt_number
from .states import (
    AmplitudeVector,
    build_atomic_gaussian,
    build_field_gaussian,
    preset_dual_coherent,
    preset_spin_coherent,
)

logger = logging.getLogger("faraday_schmidt")

SWEEP_HEADER = (
    "tau,S_numeric,S_analytic,K_numeric,K_analytic,"
    "lambda0_numeric,lambda0_analytic,inside_break_window"
)
CAVITY_HEADER = (
    "kappa_over_g,K_doubled,K_tau_substitution,K_numeric_svd,"
    "bad_cavity_phase_error_max,matched_convention"
)
CONVENTION_MATCH_RTOL = 0.02


@dataclass(frozen=True)
class RunResult:
    csv_path: Path
    manifest_path: Path
    figure_paths: tuple[Path, ...]


def _fmt(value: float) -> str:
    return format(float(value), ".12g")


def build_marginals(config: ScenarioConfig) -> tuple[AmplitudeVector, AmplitudeVector]:
    """Construct the atomic and field amplitude vectors a scenario asks for."""
    spec = config.gaussian_spec()
    if config.atom_preset == "spin_coherent":
        atomic = preset_spin_coherent(config.N_A)
    else:
        atomic = build_atomic_gaussian(spec)
    if config.field_preset == "dual_coherent":
        field = preset_dual_coherent(
            config.mean_plus, config.mean_minus, window_mult=config.window_mult
        )
    else:
        field = build_field_gaussian(spec, window_mult=config.window_mult)
    return atomic, field


def _require_out_dir(config: ScenarioConfig) -> Path:
    if config.out_dir is None:
        raise ConfigError("no output directory: set output.dir in the config or pass --out")
    out = Path(config.out_dir)
    out.mkdir(parents=True, exist_ok=True)
    return out


def _write_text(path: Path, lines: list[str]) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as handle:
        handle.write("\n".join(lines) + "\n")


def _manifest_common(config: ScenarioConfig) -> list[str]:
    lines = [
        f"version = {__about__.__version__}",
        f"name = {config.name}",
        f"atom.preset = {config.atom_preset}",
        f"atom.sigma = {_fmt(config.sigma_A)}",
        f"atom.center = {_fmt(config.m0)}",
        f"atom.count = {config.N_A}",
        f"field.preset = {config.field_preset}",
        f"field.sigma = {_fmt(config.sigma_F)}",
        f"field.center = {_fmt(config.n0)}",
    ]
    if config.field_preset == "dual_coherent":
        lines.append(f"field.mean_plus = {_fmt(config.mean_plus)}")
        lines.append(f"field.mean_minus = {_fmt(config.mean_minus)}")
    lines.append(f"coupling.g = {_fmt(config.g)}")
    lines.append(f"window_mult = {_fmt(config.window_mult)}")
    return lines


def run_scenario(config: ScenarioConfig) -> RunResult:
    """Tau sweep: numeric SVD vs closed forms, written as CSV + manifest.

    Validation happens before anything touches the filesystem, so a bad
    configuration never leaves partial output behind.
    """
    spec = config.gaussian_spec()
    atomic, field = build_marginals(config)
    taus = config.tau_grid()
    rows = compare(
        spec,
        taus,
        atomic=atomic,
        field=field,
        window_mult=config.window_mult,
        mode_ks=(),
    )
    out = _require_out_dir(config)
    csv_path = out / f"{config.name}.csv"
    csv_lines = [SWEEP_HEADER]
    for row in rows:
        csv_lines.append(
            ",".join(
                [
                    _fmt(row.tau),
                    _fmt(row.entropy_numeric),
                    _fmt(row.entropy_analytic),
                    _fmt(row.schmidt_number_numeric),
                    _fmt(row.schmidt_number_analytic),
                    _fmt(row.lambda0_numeric),
                    _fmt(row.lambda0_analytic),
                    "1" if row.inside_break_window else "0",
                ]
            )
        )
    _write_text(csv_path, csv_lines)

    figure_paths: tuple[Path, ...] = ()
    if config.figures:
        from .figures import render_sweep_figures

        figure_paths = tuple(render_sweep_figures(rows, out, config.name))

    manifest_path = out / f"{config.name}_manifest.txt"
    manifest = _manifest_common(config)
    manifest += [
        f"tau.start = {_fmt(config.tau_start)}",
        f"tau.stop = {_fmt(config.tau_stop)}",
        f"tau.count = {config.tau_count}",
        f"break_time = {_fmt(break_time(spec.sigma_A, spec.sigma_F))}",
        f"csv = {csv_path.name}",
        f"figures = {', '.join(p.name for p in figure_paths) if figure_paths else 'none'}",
    ]
    _write_text(manifest_path, manifest)
    logger.info("wrote %s (%d rows)", csv_path, len(rows))
    return RunResult(csv_path=csv_path, manifest_path=manifest_path, figure_paths=figure_paths)


@dataclass(frozen=True)
class CavityRow:
    kappa_over_g: float
    K_doubled: float
    K_tau_substitution: float
    K_numeric_svd: float
    phase_error_max: float
    matched_convention: str


def _match_label(row_svd: float, doubled: float, tau_sub: float) -> str:
    match_d = abs(row_svd - doubled) <= CONVENTION_MATCH_RTOL * doubled
    match_t = abs(row_svd - tau_sub) <= CONVENTION_MATCH_RTOL * tau_sub
    if match_d and match_t:
        return "both"
    if match_d:
        return "doubled"
    if match_t:
        return "tau_substitution"
    return "none"


def _adjudicate(rows: list[CavityRow]) -> str:
    """Overall verdict: which closed form the SVD agrees with where they differ."""
    decisive = {r.matched_convention for r in rows if r.matched_convention in ("doubled", "tau_substitution")}
    if len(decisive) == 1:
        return decisive.pop()
    if not decisive:
        return "indeterminate"
    return "mixed"


def run_cavity_report(config: ScenarioConfig) -> RunResult:
    """Sweep kappa_c/g and adjudicate the output Schmidt-number conventions."""
    spec = config.gaussian_spec()
    atomic, field = build_marginals(config)
    cav = config.cavity
    rows: list[CavityRow] = []
    for ratio in cav.kappa_over_g_grid():
        kappa_c = float(ratio) * config.g
        params = CavityParams(kappa_c=kappa_c, omega_c=0.0, g=config.g, N_A=config.N_A)
        omega = params.resonant_frequency() + cav.delta * config.g
        spectrum = schmidt_decompose(output_joint_state(atomic, field, params))
        k_svd = schmidt_number(spectrum)
        k_doubled = output_schmidt_number(
            spec.sigma_A, spec.sigma_F, config.g, kappa_c, convention="doubled"
        )
        k_tau = output_schmidt_number(
            spec.sigma_A, spec.sigma_F, config.g, kappa_c, convention="tau_substitution"
        )
        phase_error = max(
            abs(
                bad_cavity_phase(params, omega, float(m), pol)
                - exact_phase(params, omega, float(m), pol)
            )
            for m in atomic.indices
            for pol in ("+", "-")
        )
        rows.append(
            CavityRow(
                kappa_over_g=float(ratio),
                K_doubled=k_doubled,
                K_tau_substitution=k_tau,
                K_numeric_svd=k_svd,
                phase_error_max=phase_error,
                matched_convention=_match_label(k_svd, k_doubled, k_tau),
            )
        )

    out = _require_out_dir(config)
    csv_path = out / f"{config.name}_cavity.csv"
    csv_lines = [CAVITY_HEADER]
    for row in rows:
        csv_lines.append(
            ",".join(
                [
                    _fmt(row.kappa_over_g),
                    _fmt(row.K_doubled),
                    _fmt(row.K_tau_substitution),
                    _fmt(row.K_numeric_svd),
                    _fmt(row.phase_error_max),
                    row.matched_convention,
                ]
            )
        )
    _write_text(csv_path, csv_lines)

    figure_paths: tuple[Path, ...] = ()
    if config.figures:
        from .figures import render_cavity_figure

        figure_paths = tuple(
            render_cavity_figure(rows, out, config.name, convention=cav.convention)
        )

    manifest_path = out / f"{config.name}_cavity_manifest.txt"
    manifest = _manifest_common(config)
    manifest += [
        f"cavity.kappa_min = {_fmt(cav.kappa_min)}",
        f"cavity.kappa_max = {_fmt(cav.kappa_max)}",
        f"cavity.count = {cav.count}",
        f"cavity.delta = {_fmt(cav.delta)}",
        f"cavity.convention = {cav.convention}",
        f"matched_convention = {_adjudicate(rows)}",
        f"csv = {csv_path.name}",
        f"figures = {', '.join(p.name for p in figure_paths) if figure_paths else 'none'}",
    ]
    _write_text(manifest_path, manifest)
    logger.info("wrote %s (%d rows)", csv_path, len(rows))
    return RunResult(csv_path=csv_path, manifest_path=manifest_path, figure_paths=figure_paths)
