"""Figure rendering for sweep and cavity reports (PNG, non-interactive)."""

from __future__ import annotations

from pathlib import Path
from typing import Iterable, Sequence

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np

DPI = 150


def _save(fig, path: Path) -> Path:
    fig.savefig(path, dpi=DPI, bbox_inches="tight")
    plt.close(fig)
    return path


def _mark_break_time(ax, rows) -> None:
    boundary = [r.tau for r in rows if r.inside_break_window]
    if boundary and any(not r.inside_break_window for r in rows):
        ax.axvline(
            max(boundary), color="0.5", linestyle=":", linewidth=1, label="break time"
        )


def render_sweep_figures(rows: Sequence, out_dir: Path, name: str) -> list[Path]:
    """Entropy and Schmidt-number curves: SVD points over the closed form."""
    taus = [r.tau for r in rows]
    paths = []

    fig, ax = plt.subplots(figsize=(5.4, 3.6))
    ax.plot(taus, [r.entropy_analytic for r in rows], "-", color="tab:blue", label="closed form")
    ax.plot(taus, [r.entropy_numeric for r in rows], "o", color="tab:red", markersize=4, label="numeric SVD")
    _mark_break_time(ax, rows)
    ax.set_xlabel(r"dimensionless time $\tau = gt/2$")
    ax.set_ylabel("entanglement entropy")
    ax.set_title(name)
    ax.legend(frameon=False)
    paths.append(_save(fig, out_dir / f"{name}_entropy.png"))

    fig, ax = plt.subplots(figsize=(5.4, 3.6))
    ax.plot(taus, [r.schmidt_number_analytic for r in rows], "-", color="tab:blue", label="closed form")
    ax.plot(taus, [r.schmidt_number_numeric for r in rows], "o", color="tab:red", markersize=4, label="numeric SVD")
    _mark_break_time(ax, rows)
    ax.set_xlabel(r"dimensionless time $\tau = gt/2$")
    ax.set_ylabel("effective Schmidt number")
    ax.set_title(name)
    ax.legend(frameon=False)
    paths.append(_save(fig, out_dir / f"{name}_schmidt_number.png"))
    return paths


def render_cavity_figure(
    rows: Iterable, out_dir: Path, name: str, convention: str = "both"
) -> list[Path]:
    """Output Schmidt number vs kappa_c/g with the closed-form candidates."""
    rows = list(rows)
    ratios = np.array([r.kappa_over_g for r in rows])
    fig, ax = plt.subplots(figsize=(5.4, 3.6))
    if convention in ("both", "doubled"):
        ax.plot(ratios, [r.K_doubled for r in rows], "--", color="tab:orange", label="doubled phase")
    if convention in ("both", "tau_substitution"):
        ax.plot(ratios, [r.K_tau_substitution for r in rows], "-", color="tab:blue", label="tau substitution")
    ax.plot(ratios, [r.K_numeric_svd for r in rows], "o", color="tab:red", markersize=4, label="numeric SVD")
    ax.set_xscale("log")
    ax.set_xlabel(r"$\kappa_c / g$")
    ax.set_ylabel("output Schmidt number")
    ax.set_title(f"{name} cavity output")
    ax.legend(frameon=False)
    return [_save(fig, out_dir / f"{name}_cavity.png")]
