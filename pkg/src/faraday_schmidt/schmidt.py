"""Exact Schmidt decomposition of the joint coefficient matrix via SVD."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .errors import FactorizationError
from .states import AmplitudeVector, JointState, assemble_joint

# Eigenvalues below this floor are numerical dust: they are excluded from
# entropy sums (where 0*log(0) would otherwise inject noise) and from the
# reported rank, but kept in the spectrum so the factorization still
# reconstructs the input to machine precision.
EIGENVALUE_FLOOR = 1e-14


@dataclass(frozen=True)
class SchmidtSpectrum:
    """Descending Schmidt eigenvalues with the paired orthonormal modes.

    eigenvalues[k] is the squared singular value lambda_k; atomic_modes[k]
    and field_modes[k] are the matching vectors on the m and n grids, so
    coeffs = sum_k sqrt(lambda_k) * outer(atomic_modes[k], field_modes[k]).
    """

    eigenvalues: np.ndarray
    atomic_modes: np.ndarray
    field_modes: np.ndarray
    rank_kept: int

    def __post_init__(self) -> None:
        for name in ("eigenvalues", "atomic_modes", "field_modes"):
            arr = np.asarray(getattr(self, name))
            arr.setflags(write=False)
            object.__setattr__(self, name, arr)

    def reconstruct(self) -> np.ndarray:
        amps = np.sqrt(np.clip(self.eigenvalues, 0.0, None))
        return (self.atomic_modes.T * amps) @ self.field_modes


def schmidt_decompose(state: JointState, rank_cut: int | None = None) -> SchmidtSpectrum:
    """Decompose C[m, n] into orthonormal atomic/field mode pairs.

    rank_cut truncates the returned spectrum to its leading modes; it does
    not alter the eigenvalues themselves.  SVD convergence failures (rare,
    but possible on pathological input) surface as FactorizationError.
    """
    if rank_cut is not None and (rank_cut != int(rank_cut) or rank_cut < 1):
        raise ValueError(f"rank_cut must be a positive integer, got {rank_cut!r}")
    try:
        left, singulars, right_h = np.linalg.svd(state.coeffs, full_matrices=False)
    except np.linalg.LinAlgError as exc:
        raise FactorizationError(f"SVD failed to converge: {exc}") from exc
    eigenvalues = singulars.astype(float) ** 2
    atomic = left.T
    field = right_h
    if rank_cut is not None:
        keep = min(int(rank_cut), eigenvalues.size)
        eigenvalues = eigenvalues[:keep]
        atomic = atomic[:keep]
        field = field[:keep]
    rank_kept = int(np.count_nonzero(eigenvalues >= EIGENVALUE_FLOOR))
    return SchmidtSpectrum(
        eigenvalues=eigenvalues,
        atomic_modes=atomic.copy(),
        field_modes=field.copy(),
        rank_kept=rank_kept,
    )


def entropy_of_eigenvalues(eigenvalues: np.ndarray) -> float:
    """Von Neumann entropy -sum(lambda ln lambda) over the floored spectrum."""
    lam = np.asarray(eigenvalues, dtype=float)
    lam = lam[lam >= EIGENVALUE_FLOOR]
    if lam.size == 0:
        return 0.0
    return max(0.0, float(-np.sum(lam * np.log(lam))))


def schmidt_number_of_eigenvalues(eigenvalues: np.ndarray) -> float:
    """Effective mode count K = 1 / sum(lambda^2)."""
    lam = np.asarray(eigenvalues, dtype=float)
    total_sq = float(np.sum(lam**2))
    if total_sq <= 0.0:
        raise ValueError("cannot form a Schmidt number from an empty spectrum")
    return max(1.0, 1.0 / total_sq)


def entropy(spectrum: SchmidtSpectrum) -> float:
    return entropy_of_eigenvalues(spectrum.eigenvalues)


def schmidt_number(spectrum: SchmidtSpectrum) -> float:
    return schmidt_number_of_eigenvalues(spectrum.eigenvalues)


@dataclass(frozen=True)
class SweepPoint:
    tau: float
    entropy: float
    schmidt_number: float
    spectrum: SchmidtSpectrum


def time_sweep(
    atomic: AmplitudeVector, field: AmplitudeVector, taus: Sequence[float]
) -> list[SweepPoint]:
    """Assemble and decompose the joint state at each tau, in order."""
    points: list[SweepPoint] = []
    for tau in taus:
        tau = float(tau)
        if not math.isfinite(tau):
            raise ValueError(f"time sweep received non-finite tau {tau!r}")
        try:
            spectrum = schmidt_decompose(assemble_joint(atomic, field, tau))
        except FactorizationError as exc:
            raise FactorizationError(f"at tau={tau:g}: {exc}") from exc
        points.append(
            SweepPoint(
                tau=tau,
                entropy=entropy(spectrum),
                schmidt_number=schmidt_number(spectrum),
                spectrum=spectrum,
            )
        )
    return points
