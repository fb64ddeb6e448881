"""Closed-form Schmidt data for Gaussian amplitudes, and the numeric bridge.

For Gaussian atomic and field amplitudes the phase kernel exp(-2i tau m n)
admits an exact bilinear expansion in Hermite-Gaussian modes with a geometric
coefficient sequence.  Everything here is parameterized by the single
dimensionless combination x = sigma_A * sigma_F * tau.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from . import schmidt as _schmidt
from .errors import ModeResolutionError
from .states import (
    DEFAULT_WINDOW_MULT,
    AmplitudeVector,
    GaussianSpec,
    build_atomic_gaussian,
    build_field_gaussian,
)

# Squared-mode-shape identity: the expansion coefficient is
#   mu = x / (1 + sqrt(1 + x^2)),
# the rationalized root of mu^2 - 2 mu / x + 1 = 0 that stays in [0, 1).
# This form is exact at x = 0 and keeps 1 - mu^2 = 2 / (1 + sqrt(1 + x^2))
# fully accurate for large x, where the naive difference loses digits.


@dataclass(frozen=True)
class MehlerParams:
    """Dimensionless parameters of the Gaussian closed form at one tau."""

    tau: float
    x: float
    mu: float
    xi: float

    @property
    def one_minus_mu_sq(self) -> float:
        # Exact complement of mu^2; do not compute 1 - mu*mu.
        return 2.0 / (1.0 + math.hypot(1.0, self.x))


def mehler_params(sigma_A: float, sigma_F: float, tau: float) -> MehlerParams:
    """Map widths and dimensionless time to the closed-form parameters."""
    for label, value in (("sigma_A", sigma_A), ("sigma_F", sigma_F)):
        if not (math.isfinite(value) and value > 0):
            raise ValueError(f"{label} must be finite and positive, got {value!r}")
    if not (math.isfinite(tau) and tau >= 0):
        raise ValueError(f"tau must be finite and >= 0, got {tau!r}")
    x = sigma_A * sigma_F * tau
    root = math.hypot(1.0, x)
    mu = x / (1.0 + root)
    xi = math.sqrt(2.0 * root)
    return MehlerParams(tau=float(tau), x=x, mu=mu, xi=xi)


@dataclass(frozen=True)
class AnalyticSpectrum:
    """Leading geometric eigenvalues lambda_k = (1 - mu^2) mu^(2k)."""

    eigenvalues: np.ndarray
    truncation_deficit: float

    def __post_init__(self) -> None:
        arr = np.asarray(self.eigenvalues, dtype=float)
        arr.setflags(write=False)
        object.__setattr__(self, "eigenvalues", arr)


def analytic_spectrum(params: MehlerParams, tail_tol: float = 1e-12) -> AnalyticSpectrum:
    """Geometric Schmidt spectrum truncated once the tail drops below tail_tol.

    The retained eigenvalues sum to 1 - mu^(2 (k_max + 1)), so the deficit is
    below tail_tol by construction.
    """
    if not (0.0 < tail_tol < 1.0):
        raise ValueError(f"tail_tol must be in (0, 1), got {tail_tol!r}")
    if params.mu == 0.0:
        return AnalyticSpectrum(eigenvalues=np.array([1.0]), truncation_deficit=0.0)
    log_mu2 = 2.0 * math.log(params.mu)
    threshold = math.log(tail_tol) / log_mu2
    k_max = max(0, int(math.floor(threshold)))
    if k_max + 1 <= threshold:
        k_max += 1
    k = np.arange(k_max + 1)
    eigenvalues = params.one_minus_mu_sq * np.exp(k * log_mu2)
    deficit = math.exp((k_max + 1) * log_mu2)
    return AnalyticSpectrum(eigenvalues=eigenvalues, truncation_deficit=deficit)


def analytic_entropy(params: MehlerParams) -> float:
    """Closed-form entropy of the full geometric spectrum.

    S = -[ mu^2 ln(mu^2) / (1 - mu^2) + ln(1 - mu^2) ], evaluated through the
    exact complement so large-x values keep full precision.
    """
    if params.mu == 0.0:
        return 0.0
    om = params.one_minus_mu_sq
    mu_sq = 1.0 - om
    return -((mu_sq / om) * math.log1p(-om) + math.log(om))


def analytic_schmidt_number(params: MehlerParams) -> float:
    """K = sqrt(1 + x^2), cross-checked against its geometric-sum form.

    The same quantity is (1 + mu^2) / (1 - mu^2); both routes are evaluated
    and must agree to 1e-12 relative, otherwise the parameter map itself is
    broken and ArithmeticError is raised.
    """
    direct = math.hypot(1.0, params.x)
    om = params.one_minus_mu_sq
    via_mu = (2.0 - om) / om
    if abs(direct - via_mu) > 1e-12 * direct:
        raise ArithmeticError(
            f"Schmidt number forms disagree: sqrt(1+x^2) = {direct!r} "
            f"vs (1+mu^2)/(1-mu^2) = {via_mu!r}"
        )
    return direct


def break_time(sigma_A: float, sigma_F: float) -> float:
    """tau_B = 1 / max(sigma_A, sigma_F): where the Gaussian picture degrades.

    Past this point the fastest phase gradient across the wider distribution
    exceeds one radian per grid step and the discrete state decoheres away
    from the continuum closed form.
    """
    for label, value in (("sigma_A", sigma_A), ("sigma_F", sigma_F)):
        if not (math.isfinite(value) and value > 0):
            raise ValueError(f"{label} must be finite and positive, got {value!r}")
    return 1.0 / max(sigma_A, sigma_F)


def _hermite_functions(u: np.ndarray, k_max: int) -> np.ndarray:
    """Unit-norm Hermite functions psi_0 .. psi_k_max evaluated at u (rows).

    Uses the stable two-term recurrence on the normalized functions; the
    Gaussian envelope is inside each row, so nothing overflows.
    """
    u = np.atleast_1d(np.asarray(u, dtype=float))
    table = np.empty((k_max + 1, u.size))
    table[0] = math.pi**-0.25 * np.exp(-0.5 * u * u)
    if k_max >= 1:
        table[1] = math.sqrt(2.0) * u * table[0]
    for k in range(1, k_max):
        table[k + 1] = (
            math.sqrt(2.0 / (k + 1)) * u * table[k]
            - math.sqrt(k / (k + 1)) * table[k - 1]
        )
    return table


def mode_resolution(k: int, width: float, scale: float) -> float:
    """Grid points per half-oscillation of mode k; below 1 is unresolvable.

    psi_k oscillates with local wavenumber up to sqrt(2k + 1) in its own
    coordinate, i.e. scale * sqrt(2k + 1) / width per grid step, and the
    integer grid can only represent wavenumbers below pi.
    """
    return math.pi * width / (scale * math.sqrt(2.0 * k + 1.0))


def hermite_mode(
    k: int, width: float, scale: float, center: float, grid: np.ndarray
) -> np.ndarray:
    """Continuum-normalized Hermite-Gaussian mode sampled on an integer grid.

    Returns sqrt(scale / width) * exp(-i pi k / 4) * psi_k(scale (z - center)
    / width); the phase is the principal branch of (-i)^(k/2).  Raises
    ModeResolutionError when the mode oscillates faster than the grid.
    """
    if k != int(k) or k < 0:
        raise ValueError(f"mode index must be a non-negative integer, got {k!r}")
    for label, value in (("width", width), ("scale", scale)):
        if not (math.isfinite(value) and value > 0):
            raise ValueError(f"{label} must be finite and positive, got {value!r}")
    k = int(k)
    if mode_resolution(k, width, scale) < 1.0:
        raise ModeResolutionError(
            f"mode k={k} with width {width:g} and scale {scale:g} oscillates "
            "below the integer grid spacing"
        )
    z = np.asarray(grid, dtype=float)
    u = scale * (z - center) / width
    psi = _hermite_functions(u, k)[k]
    return math.sqrt(scale / width) * np.exp(-1j * math.pi * k / 4.0) * psi


def analytic_schmidt_modes(
    spec: GaussianSpec,
    tau: float,
    k: int,
    *,
    m_grid: np.ndarray | None = None,
    n_grid: np.ndarray | None = None,
    window_mult: float = DEFAULT_WINDOW_MULT,
    twist: bool = True,
) -> tuple[np.ndarray, np.ndarray]:
    """Closed-form Schmidt mode pair k for Gaussian amplitudes at time tau.

    Both modes are Hermite-Gaussians of common shape parameter xi, carrying
    linear phase twists proportional to the opposite marginal's center
    (twist=False drops them, which is only correct when m0 = n0 = 0).  Grids
    default to the ones the builders would use; pass the numeric state's
    grids when comparing against an SVD.
    """
    params = mehler_params(spec.sigma_A, spec.sigma_F, tau)
    if m_grid is None:
        half = spec.N_A // 2
        m_grid = np.arange(-half, half + 1)
    if n_grid is None:
        center = int(round(spec.n0))
        half_n = math.ceil(window_mult * spec.sigma_F)
        n_grid = np.arange(center - half_n, center + half_n + 1)
    m = np.asarray(m_grid)
    n = np.asarray(n_grid)
    atomic = hermite_mode(k, spec.sigma_A, params.xi, spec.m0, m)
    field = hermite_mode(k, spec.sigma_F, params.xi, spec.n0, n)
    if twist:
        atomic = atomic * np.exp(1j * spec.n0 * (spec.m0 - 2.0 * m) * tau)
        field = field * np.exp(1j * spec.m0 * (spec.n0 - 2.0 * n) * tau)
    return atomic, field


def mehler_identity_check(
    x: float,
    y: float,
    tau: float,
    sigma_A: float,
    sigma_F: float,
    terms: int,
) -> float:
    """Pointwise residual of the bilinear Hermite expansion of the kernel.

    Compares sqrt(2 / (pi sigma_A sigma_F)) * exp(-x^2/sigma_A^2 -
    y^2/sigma_F^2 - 2i tau x y) against sqrt(1 - mu^2) * sum_k mu^k U_k(x)
    V_k(y) truncated at the given number of terms, and returns the absolute
    difference.
    """
    if terms != int(terms) or terms < 1:
        raise ValueError(f"terms must be a positive integer, got {terms!r}")
    terms = int(terms)
    params = mehler_params(sigma_A, sigma_F, tau)
    lhs = (
        math.sqrt(2.0 / (math.pi * sigma_A * sigma_F))
        * math.exp(-(x**2) / sigma_A**2 - (y**2) / sigma_F**2)
        * np.exp(-2j * tau * x * y)
    )
    psi_x = _hermite_functions(np.array([params.xi * x / sigma_A]), terms - 1)[:, 0]
    psi_y = _hermite_functions(np.array([params.xi * y / sigma_F]), terms - 1)[:, 0]
    k = np.arange(terms)
    # Phases of U_k and V_k combine to exp(-i pi k / 2) = (-i)^k.
    products = (
        params.mu**k
        * np.exp(-1j * math.pi * k / 2.0)
        * (params.xi / math.sqrt(sigma_A * sigma_F))
        * psi_x
        * psi_y
    )
    rhs = math.sqrt(params.one_minus_mu_sq) * np.sum(products)
    return float(abs(lhs - rhs))


# Hermite functions are uniformly bounded: |psi_k(u)| < 1.09 / pi^(1/4).
_PSI_SUP = 1.09 / math.pi**0.25


def mehler_terms_for_tolerance(
    sigma_A: float, sigma_F: float, tau: float, tol: float = 1e-8
) -> int:
    """Terms guaranteeing the truncated expansion residual stays below tol.

    Uses the uniform Hermite-function bound, so the estimate holds at every
    (x, y), not just near the center.
    """
    if not (0.0 < tol < 1.0):
        raise ValueError(f"tol must be in (0, 1), got {tol!r}")
    params = mehler_params(sigma_A, sigma_F, tau)
    if params.mu == 0.0:
        return 1
    coeff = (
        math.sqrt(params.one_minus_mu_sq)
        * _PSI_SUP**2
        * params.xi
        / math.sqrt(sigma_A * sigma_F)
        / (1.0 - params.mu)
    )
    if coeff <= tol:
        return 1
    needed = math.ceil(math.log(tol / coeff) / math.log(params.mu))
    return max(1, needed + 2)


@dataclass(frozen=True)
class ModeOverlap:
    """Squared-magnitude-free overlap of analytic mode k with the SVD modes.

    Both numbers are |<numeric subspace | analytic>| in [0, 1]; NaN flags a
    tau at which the analytic mode is no longer resolvable on the grid.
    """

    k: int
    atomic: float
    field: float


@dataclass(frozen=True)
class ComparisonRow:
    tau: float
    entropy_numeric: float
    entropy_analytic: float
    schmidt_number_numeric: float
    schmidt_number_analytic: float
    lambda0_numeric: float
    lambda0_analytic: float
    mode_overlaps: tuple[ModeOverlap, ...]
    inside_break_window: bool


def _subspace_overlap(
    eigenvalues: np.ndarray,
    modes: np.ndarray,
    k: int,
    reference: np.ndarray,
    degeneracy_tol: float,
) -> float:
    """Projection of the analytic mode onto the eigenvalue-k SVD subspace.

    SVD vectors within a degenerate cluster are only defined up to unitary
    mixing, so the overlap is taken with the whole cluster whose eigenvalue
    matches lambda_k within degeneracy_tol.
    """
    ref = np.asarray(reference, dtype=complex)
    ref = ref / np.linalg.norm(ref)
    cluster = np.abs(eigenvalues - eigenvalues[k]) <= degeneracy_tol
    amps = np.conj(modes[cluster]) @ ref
    return float(np.linalg.norm(amps))


def compare(
    spec: GaussianSpec,
    taus: Sequence[float],
    *,
    atomic: AmplitudeVector | None = None,
    field: AmplitudeVector | None = None,
    window_mult: float = DEFAULT_WINDOW_MULT,
    mode_ks: Sequence[int] = (0, 1, 2),
    degeneracy_tol: float = 1e-10,
) -> list[ComparisonRow]:
    """Numeric SVD sweep against the closed forms, one row per tau.

    Pass explicit amplitude vectors to compare non-Gaussian marginals (the
    closed-form columns then describe the Gaussian reference model with the
    same widths).  Mode overlaps use the numeric state's own grids.
    """
    if atomic is None:
        atomic = build_atomic_gaussian(spec)
    if field is None:
        field = build_field_gaussian(spec, window_mult=window_mult)
    tau_break = break_time(spec.sigma_A, spec.sigma_F)
    rows: list[ComparisonRow] = []
    for point in _schmidt.time_sweep(atomic, field, taus):
        params = mehler_params(spec.sigma_A, spec.sigma_F, point.tau)
        overlaps = []
        for k in mode_ks:
            try:
                mode_a, mode_f = analytic_schmidt_modes(
                    spec,
                    point.tau,
                    k,
                    m_grid=atomic.indices,
                    n_grid=field.indices,
                )
            except ModeResolutionError:
                overlaps.append(ModeOverlap(k=k, atomic=math.nan, field=math.nan))
                continue
            overlaps.append(
                ModeOverlap(
                    k=k,
                    atomic=_subspace_overlap(
                        point.spectrum.eigenvalues,
                        point.spectrum.atomic_modes,
                        k,
                        mode_a,
                        degeneracy_tol,
                    ),
                    field=_subspace_overlap(
                        point.spectrum.eigenvalues,
                        point.spectrum.field_modes,
                        k,
                        mode_f,
                        degeneracy_tol,
                    ),
                )
            )
        rows.append(
            ComparisonRow(
                tau=point.tau,
                entropy_numeric=point.entropy,
                entropy_analytic=analytic_entropy(params),
                schmidt_number_numeric=point.schmidt_number,
                schmidt_number_analytic=analytic_schmidt_number(params),
                lambda0_numeric=float(point.spectrum.eigenvalues[0]),
                lambda0_analytic=params.one_minus_mu_sq,
                mode_overlaps=tuple(overlaps),
                inside_break_window=point.tau <= tau_break,
            )
        )
    return rows
