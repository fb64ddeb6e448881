"""Construction of the joint photon-atom state before and after the Faraday interaction.

The atomic side lives on the magnetic quantum numbers m of a collective spin
J = N_A/2, the field side on the photon-number-difference index n between the
two circular polarization components.  Both marginals are represented as real
non-negative amplitude vectors on contiguous integer windows; the interaction
only ever multiplies the product state by the unimodular kernel
exp(-2i tau m n).
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass

import numpy as np
from scipy import stats

from .errors import ConfigError

logger = logging.getLogger("faraday_schmidt")

NORM_TOL = 1e-12
COEFF_NORM_TOL = 1e-10
TRUNCATION_WARN = 1e-8
DEFAULT_WINDOW_MULT = 5.0
MIN_WINDOW_MULT = 3.0


@dataclass(frozen=True)
class GaussianSpec:
    """Width/center parameters of the Gaussian amplitude model.

    sigma_A and sigma_F are amplitude-level 1/e widths: A_m ~ exp(-(m-m0)^2 /
    sigma_A^2), so the *squared* amplitudes have standard deviation sigma/2.
    N_A is the number of atoms; the collective spin grid is m = -N_A/2 ..
    N_A/2, which must leave room for the Gaussian to decay (N_A/2 > 2 sigma_A
    + |m0|).
    """

    sigma_A: float
    sigma_F: float
    N_A: int
    m0: float = 0.0
    n0: float = 0.0
    g: float = 1.0

    def __post_init__(self) -> None:
        for label in ("sigma_A", "sigma_F", "g"):
            value = getattr(self, label)
            if not (math.isfinite(value) and value > 0):
                raise ConfigError(f"{label} must be finite and positive, got {value!r}")
        for label in ("m0", "n0"):
            if not math.isfinite(getattr(self, label)):
                raise ConfigError(f"{label} must be finite")
        if self.N_A != int(self.N_A) or self.N_A <= 0:
            raise ConfigError(f"N_A must be a positive integer, got {self.N_A!r}")
        object.__setattr__(self, "N_A", int(self.N_A))
        if self.N_A % 2 != 0:
            raise ConfigError(
                f"N_A must be even so the m grid is integer-valued, got {self.N_A}"
            )
        if self.N_A / 2 <= 2.0 * self.sigma_A + abs(self.m0):
            raise ConfigError(
                "atomic grid too small for the requested Gaussian: need "
                f"N_A/2 > 2*sigma_A + |m0| = {2.0 * self.sigma_A + abs(self.m0):g}, "
                f"got N_A/2 = {self.N_A / 2:g}"
            )


@dataclass(frozen=True)
class AmplitudeVector:
    """Real non-negative unit-norm amplitudes on a contiguous integer window."""

    offset: int
    values: np.ndarray

    def __post_init__(self) -> None:
        vals = np.array(self.values, dtype=float, copy=True)
        if vals.ndim != 1 or vals.size == 0:
            raise ValueError("amplitude values must form a non-empty 1-d array")
        if not np.all(np.isfinite(vals)):
            raise ValueError("amplitude values must be finite")
        if np.any(vals < 0):
            raise ValueError("amplitude values must be non-negative")
        norm_sq = float(vals @ vals)
        if abs(norm_sq - 1.0) > NORM_TOL:
            raise ValueError(
                f"amplitudes must be unit-norm within {NORM_TOL:g}; "
                f"got sum of squares {norm_sq!r}"
            )
        vals.setflags(write=False)
        object.__setattr__(self, "values", vals)
        object.__setattr__(self, "offset", int(self.offset))

    @property
    def indices(self) -> np.ndarray:
        return self.offset + np.arange(self.values.size)

    def __len__(self) -> int:
        return self.values.size


@dataclass(frozen=True)
class TwoIndexFieldAmplitudes:
    """Field amplitudes resolved on total photon number s and difference n.

    Keys are (s, n) with s >= 0, |n| <= s and s - n even; the parity
    constraint reflects that n_+ = (s + n)/2 and n_- = (s - n)/2 must both be
    integers.  Values may be complex; only their squared moduli survive the
    collapse onto n.
    """

    entries: dict

    def __post_init__(self) -> None:
        if not self.entries:
            raise ValueError("two-index amplitudes must be non-empty")
        total = 0.0
        for key, value in self.entries.items():
            if not (isinstance(key, tuple) and len(key) == 2):
                raise ValueError(f"keys must be (s, n) pairs, got {key!r}")
            s, n = key
            if s != int(s) or n != int(n):
                raise ValueError(f"indices must be integers, got {key!r}")
            s, n = int(s), int(n)
            if s < 0:
                raise ValueError(f"total photon number must be >= 0, got s={s}")
            if abs(n) > s:
                raise ValueError(f"|n| <= s violated by (s, n) = ({s}, {n})")
            if (s - n) % 2 != 0:
                raise ValueError(
                    f"(s, n) = ({s}, {n}) violates parity: s - n must be even"
                )
            amp = complex(value)
            if not (math.isfinite(amp.real) and math.isfinite(amp.imag)):
                raise ValueError(f"amplitude for {key!r} is not finite")
            total += abs(amp) ** 2
        if abs(total - 1.0) > NORM_TOL:
            raise ValueError(
                f"two-index amplitudes must be unit-norm within {NORM_TOL:g}; "
                f"got total weight {total!r}"
            )


@dataclass(frozen=True)
class JointState:
    """Joint coefficient matrix C[m, n] on the product of two integer grids."""

    m_grid: np.ndarray
    n_grid: np.ndarray
    coeffs: np.ndarray
    tau: float

    def __post_init__(self) -> None:
        m = np.array(self.m_grid, dtype=int, copy=True)
        n = np.array(self.n_grid, dtype=int, copy=True)
        c = np.array(self.coeffs, dtype=complex, copy=True)
        if m.ndim != 1 or n.ndim != 1:
            raise ValueError("grids must be 1-d integer arrays")
        if c.shape != (m.size, n.size):
            raise ValueError(
                f"coefficient shape {c.shape} does not match grids "
                f"({m.size}, {n.size})"
            )
        if not np.all(np.isfinite(c)):
            raise ValueError("coefficients must be finite")
        norm_sq = float(np.sum(np.abs(c) ** 2))
        if abs(norm_sq - 1.0) > COEFF_NORM_TOL:
            raise ValueError(
                f"joint state must be unit Frobenius norm within {COEFF_NORM_TOL:g}; "
                f"got squared norm {norm_sq!r}"
            )
        for arr in (m, n, c):
            arr.setflags(write=False)
        object.__setattr__(self, "m_grid", m)
        object.__setattr__(self, "n_grid", n)
        object.__setattr__(self, "coeffs", c)
        object.__setattr__(self, "tau", float(self.tau))


def _finalize(offset: int, raw: np.ndarray, tail_mass: float, label: str) -> AmplitudeVector:
    """Normalize raw amplitudes, logging when the window clipped real weight."""
    mass = float(raw @ raw)
    if mass <= 0.0:
        raise ValueError(f"{label}: window carries no amplitude weight")
    if tail_mass > TRUNCATION_WARN * (mass + tail_mass):
        logger.warning(
            "%s: window discards fractional weight %.3e (renormalizing)",
            label,
            tail_mass / (mass + tail_mass),
        )
    return AmplitudeVector(offset=offset, values=raw / math.sqrt(mass))


def build_atomic_gaussian(spec: GaussianSpec) -> AmplitudeVector:
    """Gaussian atomic amplitudes on the full spin grid m = -N_A/2 .. N_A/2."""
    half = spec.N_A // 2
    m = np.arange(-half, half + 1)
    raw = np.exp(-((m - spec.m0) ** 2) / spec.sigma_A**2)
    # Weight the grid clips, estimated on a widened reference window.
    wide = np.arange(-half - _gauss_pad(spec.sigma_A), half + _gauss_pad(spec.sigma_A) + 1)
    wide_raw = np.exp(-((wide - spec.m0) ** 2) / spec.sigma_A**2)
    tail = float(wide_raw @ wide_raw) - float(raw @ raw)
    return _finalize(-half, raw, max(tail, 0.0), "atomic gaussian")


def build_field_gaussian(
    spec: GaussianSpec, window_mult: float = DEFAULT_WINDOW_MULT
) -> AmplitudeVector:
    """Gaussian field amplitudes on a window of +- window_mult*sigma_F around n0."""
    _check_window_mult(window_mult)
    center = int(round(spec.n0))
    half = math.ceil(window_mult * spec.sigma_F)
    n = np.arange(center - half, center + half + 1)
    raw = np.exp(-((n - spec.n0) ** 2) / spec.sigma_F**2)
    pad = _gauss_pad(spec.sigma_F)
    wide = np.arange(center - half - pad, center + half + pad + 1)
    wide_raw = np.exp(-((wide - spec.n0) ** 2) / spec.sigma_F**2)
    tail = float(wide_raw @ wide_raw) - float(raw @ raw)
    return _finalize(center - half, raw, max(tail, 0.0), "field gaussian")


def _gauss_pad(sigma: float) -> int:
    # 6 amplitude widths = 12 probability sigmas beyond the window edge.
    return math.ceil(6.0 * sigma) + 1


def _check_window_mult(window_mult: float) -> None:
    if not (math.isfinite(window_mult) and window_mult >= MIN_WINDOW_MULT):
        raise ConfigError(
            f"window_mult must be >= {MIN_WINDOW_MULT:g}, got {window_mult!r}"
        )


def preset_spin_coherent(N_A: int) -> AmplitudeVector:
    """x-polarized spin coherent state: binomial amplitudes over the full grid.

    A_m = sqrt(C(N_A, N_A/2 + m)) / 2^(N_A/2), evaluated in log space so that
    large atom numbers do not overflow.
    """
    if N_A != int(N_A) or N_A <= 0 or int(N_A) % 2 != 0:
        raise ConfigError(f"N_A must be a positive even integer, got {N_A!r}")
    N_A = int(N_A)
    half = N_A // 2
    m = np.arange(-half, half + 1)
    ln_norm = math.lgamma(N_A + 1)
    log_amp = np.array(
        [
            0.5 * (ln_norm - math.lgamma(half + mi + 1) - math.lgamma(half - mi + 1))
            - half * math.log(2.0)
            for mi in m
        ]
    )
    raw = np.exp(log_amp - log_amp.max())
    return _finalize(-half, raw, 0.0, "spin coherent")


def _difference_pmf(n: np.ndarray, mean_plus: float, mean_minus: float) -> np.ndarray:
    """PMF of n_+ - n_- for independent Poisson components.

    scipy's Skellam implementation returns NaN when either mean is exactly
    zero, so those cases fall back to the surviving Poisson factor.
    """
    if mean_plus == 0.0 and mean_minus == 0.0:
        return (n == 0).astype(float)
    if mean_minus == 0.0:
        return stats.poisson.pmf(n, mean_plus)
    if mean_plus == 0.0:
        return stats.poisson.pmf(-n, mean_minus)
    return stats.skellam.pmf(n, mean_plus, mean_minus)


def preset_dual_coherent(
    mean_plus: float,
    mean_minus: float,
    window_mult: float = DEFAULT_WINDOW_MULT,
) -> AmplitudeVector:
    """Photon-difference amplitudes for coherent states in both polarizations.

    The difference n = n_+ - n_- of two independent Poisson variables is
    Skellam distributed with mean mean_plus - mean_minus and variance
    mean_plus + mean_minus; the amplitude vector is the square root of that
    PMF on a window of +- window_mult standard deviations (in amplitude-width
    units, i.e. 2 sqrt(variance)).
    """
    _check_window_mult(window_mult)
    for label, value in (("mean_plus", mean_plus), ("mean_minus", mean_minus)):
        if not (math.isfinite(value) and value >= 0):
            raise ConfigError(f"{label} must be finite and >= 0, got {value!r}")
    total = mean_plus + mean_minus
    center = int(round(mean_plus - mean_minus))
    half = math.ceil(window_mult * 2.0 * math.sqrt(total)) if total > 0 else 0
    n = np.arange(center - half, center + half + 1)
    pmf = _difference_pmf(n, mean_plus, mean_minus)
    pad = math.ceil(6.0 * math.sqrt(total)) + 2
    wide = np.arange(center - half - pad, center + half + pad + 1)
    tail = float(np.sum(_difference_pmf(wide, mean_plus, mean_minus))) - float(np.sum(pmf))
    return _finalize(center - half, np.sqrt(np.clip(pmf, 0.0, None)), max(tail, 0.0), "dual coherent")


def collapse_field_amplitudes(amplitudes: TwoIndexFieldAmplitudes) -> AmplitudeVector:
    """Collapse (s, n)-resolved amplitudes onto the difference index n.

    Only |P_{s,n}|^2 enters the reduced problem, because the interaction
    phase depends on n alone and states of different total photon number s
    never interfere in the atomic reduced density matrix.
    """
    weights: dict[int, float] = {}
    for (s, n), value in amplitudes.entries.items():
        weights[int(n)] = weights.get(int(n), 0.0) + abs(complex(value)) ** 2
    n_min = min(weights)
    n_max = max(weights)
    raw = np.zeros(n_max - n_min + 1)
    for n, w in weights.items():
        raw[n - n_min] = math.sqrt(w)
    return _finalize(n_min, raw, 0.0, "collapsed field")


def assemble_joint(
    atomic: AmplitudeVector, field: AmplitudeVector, tau: float
) -> JointState:
    """Apply the Faraday phase kernel: C[m, n] = A_m F_n exp(-2i tau m n).

    tau = g t / 2 is the accumulated dimensionless interaction phase; the
    kernel is unimodular, so |C[m, n]| = A_m F_n for every tau.
    """
    if not math.isfinite(tau):
        raise ValueError(f"tau must be finite, got {tau!r}")
    m = atomic.indices
    n = field.indices
    kernel = np.exp(-2j * tau * np.outer(m, n))
    coeffs = np.outer(atomic.values, field.values) * kernel
    return JointState(m_grid=m, n_grid=n, coeffs=coeffs, tau=float(tau))


def spin_coherent_atom_count(sigma_A: float, width_match: bool = False) -> int:
    """Atom number whose spin coherent state corresponds to width sigma_A.

    Default convention: N_A = 2 sigma_A^2, identifying the binomial variance
    N_A/4 of |A_m|^2 with the sigma_A^2/2 variance implied by treating
    sigma_A as the *probability* Gaussian's 1/e half-width.  With
    width_match=True the amplitude profiles themselves are matched instead,
    giving N_A = sigma_A^2.  Either way the result is rounded to the nearest
    even integer (and at least 2).
    """
    if not (math.isfinite(sigma_A) and sigma_A > 0):
        raise ConfigError(f"sigma_A must be finite and positive, got {sigma_A!r}")
    count = sigma_A**2 if width_match else 2.0 * sigma_A**2
    return max(2, int(round(count / 2.0)) * 2)


def coherent_means_for_field(sigma_F: float, n0: float = 0.0) -> tuple[float, float]:
    """Coherent-state mean photon numbers reproducing (sigma_F, n0).

    The Skellam variance mean_plus + mean_minus equals sigma_F^2/4 and the
    mean difference equals n0, which requires |n0| <= sigma_F^2/4.
    """
    if not (math.isfinite(sigma_F) and sigma_F > 0):
        raise ConfigError(f"sigma_F must be finite and positive, got {sigma_F!r}")
    total = sigma_F**2 / 4.0
    if abs(n0) > total:
        raise ConfigError(
            f"cannot realize mean difference n0={n0:g} with total intensity "
            f"sigma_F^2/4 = {total:g}; need |n0| <= sigma_F^2/4"
        )
    return (total + n0) / 2.0, (total - n0) / 2.0


def sigma_field_for_means(mean_plus: float, mean_minus: float) -> float:
    """Effective Gaussian width of the photon-difference amplitudes."""
    for label, value in (("mean_plus", mean_plus), ("mean_minus", mean_minus)):
        if not (math.isfinite(value) and value >= 0):
            raise ConfigError(f"{label} must be finite and >= 0, got {value!r}")
    return 2.0 * math.sqrt(mean_plus + mean_minus)
