"""Input-output phase map of a single-sided cavity hosting the atoms.

Each circular polarization reflects with a conditional phase set by the
atomic magnetic number m; in the bad-cavity limit the two polarizations
accumulate the correlated phase exp(-2i g m n / kappa_c), i.e. the free-space
kernel with tau replaced by g / kappa_c.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

from .analytic import analytic_schmidt_number, mehler_params
from .errors import ConfigError
from .states import AmplitudeVector, JointState

CONVENTIONS = ("doubled", "tau_substitution")


@dataclass(frozen=True)
class CavityParams:
    """Single-sided cavity with collectively coupled atoms.

    kappa_c is the field decay rate of the coupling mirror, omega_c the bare
    cavity resonance, g the dispersive coupling per atom and photon.  The
    mean atomic shift g N_A / 2 is folded into the detuning, never stored.
    """

    kappa_c: float
    omega_c: float
    g: float
    N_A: int

    def __post_init__(self) -> None:
        for label in ("kappa_c", "g"):
            value = getattr(self, label)
            if not (math.isfinite(value) and value > 0):
                raise ConfigError(f"{label} must be finite and positive, got {value!r}")
        if not math.isfinite(self.omega_c):
            raise ConfigError("omega_c must be finite")
        if self.N_A != int(self.N_A) or self.N_A <= 0 or int(self.N_A) % 2 != 0:
            raise ConfigError(f"N_A must be a positive even integer, got {self.N_A!r}")
        object.__setattr__(self, "N_A", int(self.N_A))

    def detuning(self, omega: float) -> float:
        """delta = omega - omega_c - g N_A / 2, from the mean-shifted resonance."""
        return omega - self.omega_c - self.g * self.N_A / 2.0

    def resonant_frequency(self) -> float:
        """Input frequency at which the mean-shifted detuning vanishes."""
        return self.omega_c + self.g * self.N_A / 2.0


def _polarization_sign(polarization: str) -> float:
    if polarization == "+":
        return 1.0
    if polarization == "-":
        return -1.0
    raise ValueError(f"polarization must be '+' or '-', got {polarization!r}")


def exact_phase(params: CavityParams, omega: float, m: float, polarization: str) -> float:
    """Reflection half-phase theta for one polarization, conditioned on m.

    The reflection coefficient is exp(2i theta) with theta = atan2(delta -/+
    g m, kappa_c); kappa_c > 0 keeps the value on the continuous branch
    (-pi/2, pi/2), anchored at 0 for delta = g m = 0.
    """
    sign = _polarization_sign(polarization)
    return math.atan2(params.detuning(omega) - sign * params.g * m, params.kappa_c)


def bad_cavity_phase(
    params: CavityParams, omega: float, m: float, polarization: str
) -> float:
    """First order in (delta, g m) / kappa_c: theta ~ delta/kappa_c -/+ g m/kappa_c."""
    sign = _polarization_sign(polarization)
    return (params.detuning(omega) - sign * params.g * m) / params.kappa_c


def correlated_phase(params: CavityParams, m: float, n: float) -> complex:
    """Bad-cavity entangling factor exp(-2i g m n / kappa_c)."""
    return cmath.exp(-2j * params.g * m * n / params.kappa_c)


def output_phase_map(
    params: CavityParams, omega: float, m: float, n: int, s: int
) -> complex:
    """Bad-cavity phase acquired by the |m> x |s, n> component on reflection.

    n_+ = (s + n)/2 photons pick up 2 theta_+ each and n_- = (s - n)/2 pick
    up 2 theta_-; to first order the sum splits into a polarization-neutral
    global phase 2 theta_0 s (theta_0 = atan(delta / kappa_c)) and the
    entangling factor exp(-2i g m n / kappa_c).
    """
    if s != int(s) or s < 0:
        raise ValueError(f"total photon number must be a non-negative integer, got {s!r}")
    if n != int(n) or abs(int(n)) > int(s) or (int(s) - int(n)) % 2 != 0:
        raise ValueError(
            f"(s, n) = ({s}, {n}) is not a valid photon-number split: need "
            "|n| <= s with s - n even"
        )
    theta_0 = math.atan2(params.detuning(omega), params.kappa_c)
    return cmath.exp(2j * theta_0 * s) * correlated_phase(params, m, n)


def output_joint_state(
    atomic: AmplitudeVector, field: AmplitudeVector, params: CavityParams
) -> JointState:
    """Joint state leaving the cavity at resonant drive, in the bad-cavity limit.

    At delta = 0 the polarization-neutral factor exp(2i theta_0 s) is the
    identity, and for detuned drive it is a local unitary on the field that
    cannot change any Schmidt data, so it is dropped here.  What remains is
    exactly the free-space kernel at tau_eff = g / kappa_c.
    """
    tau_eff = params.g / params.kappa_c
    m = atomic.indices
    n = field.indices
    phases = np.exp(-2j * params.g * np.outer(m, n) / params.kappa_c)
    coeffs = np.outer(atomic.values, field.values) * phases
    return JointState(m_grid=m, n_grid=n, coeffs=coeffs, tau=tau_eff)


def output_schmidt_number(
    sigma_A: float,
    sigma_F: float,
    g: float,
    kappa_c: float,
    convention: str = "tau_substitution",
) -> float:
    """Closed-form K of the cavity output under either reading of the map.

    'tau_substitution' evaluates the free-space result at tau_eff = g /
    kappa_c (x = sigma_A sigma_F g / kappa_c); 'doubled' doubles the phase
    argument (x = 2 sigma_A sigma_F g / kappa_c).  The SVD of the output
    state adjudicates between them.
    """
    if not (math.isfinite(g) and g > 0):
        raise ValueError(f"g must be finite and positive, got {g!r}")
    if not (math.isfinite(kappa_c) and kappa_c > 0):
        raise ValueError(f"kappa_c must be finite and positive, got {kappa_c!r}")
    if convention == "tau_substitution":
        return analytic_schmidt_number(mehler_params(sigma_A, sigma_F, g / kappa_c))
    if convention == "doubled":
        return analytic_schmidt_number(mehler_params(sigma_A, sigma_F, 2.0 * g / kappa_c))
    raise ValueError(
        f"convention must be one of {CONVENTIONS}, got {convention!r}"
    )


def free_space_estimate(
    sigma_A: float,
    sigma_F: float,
    g_f: float,
    t_f: float,
    convention: str = "tau_substitution",
) -> float:
    """Free-space K after an interaction time t_f at coupling g_f.

    tau = g_f t_f / 2, so with matched conventions g_f t_f = 2 g / kappa_c
    reproduces the cavity output exactly.
    """
    if not (math.isfinite(g_f) and g_f > 0):
        raise ValueError(f"g_f must be finite and positive, got {g_f!r}")
    if not (math.isfinite(t_f) and t_f >= 0):
        raise ValueError(f"t_f must be finite and >= 0, got {t_f!r}")
    tau = g_f * t_f / 2.0
    if convention == "tau_substitution":
        return analytic_schmidt_number(mehler_params(sigma_A, sigma_F, tau))
    if convention == "doubled":
        return analytic_schmidt_number(mehler_params(sigma_A, sigma_F, 2.0 * tau))
    raise ValueError(
        f"convention must be one of {CONVENTIONS}, got {convention!r}"
    )


def enhancement_ratio(g: float, kappa_c: float, g_f: float, t_f: float) -> float:
    """Effective-time ratio (2 g / kappa_c) / (g_f t_f) of cavity to free space."""
    for label, value in (("g", g), ("kappa_c", kappa_c), ("g_f", g_f), ("t_f", t_f)):
        if not (math.isfinite(value) and value > 0):
            raise ValueError(f"{label} must be finite and positive, got {value!r}")
    return (2.0 * g / kappa_c) / (g_f * t_f)
