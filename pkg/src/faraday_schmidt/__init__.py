"""Schmidt analysis of photon-atom entanglement from cavity Faraday rotation.

The package builds the joint state C[m, n] = A_m F_n exp(-2i tau m n) of a
collective atomic spin and the photon-number difference of a two-polarization
field, factorizes it exactly by SVD, and checks the factorization against the
Gaussian closed forms (geometric eigenvalue spectrum, Hermite-Gaussian modes
with phase twists, entropy/Schmidt-number time laws, break time) as well as
the leaky-cavity input-output map that produces the same kernel with
tau_eff = g / kappa_c.
"""

from .__about__ import __version__
from .analytic import (
    AnalyticSpectrum,
    ComparisonRow,
    MehlerParams,
    ModeOverlap,
    analytic_entropy,
    analytic_schmidt_modes,
    analytic_schmidt_number,
    analytic_spectrum,
    break_time,
    compare,
    hermite_mode,
    mehler_identity_check,
    mehler_params,
    mehler_terms_for_tolerance,
    mode_resolution,
)
from .cavity import (
    CavityParams,
    bad_cavity_phase,
    correlated_phase,
    enhancement_ratio,
    exact_phase,
    free_space_estimate,
    output_joint_state,
    output_phase_map,
    output_schmidt_number,
)
from .config import (
    CavityReportSpec,
    ScenarioConfig,
    builtin_config,
    builtin_scenarios,
    config_from_mapping,
    load_config,
    parse_config_text,
)
from .errors import ConfigError, FactorizationError, ModeResolutionError
from .runner import RunResult, build_marginals, run_cavity_report, run_scenario
from .schmidt import (
    SchmidtSpectrum,
    SweepPoint,
    entropy,
    entropy_of_eigenvalues,
    schmidt_decompose,
    schmidt_number,
    schmidt_number_of_eigenvalues,
    time_sweep,
)
from .states import (
    AmplitudeVector,
    GaussianSpec,
    JointState,
    TwoIndexFieldAmplitudes,
    assemble_joint,
    build_atomic_gaussian,
    build_field_gaussian,
    coherent_means_for_field,
    collapse_field_amplitudes,
    preset_dual_coherent,
    preset_spin_coherent,
    sigma_field_for_means,
    spin_coherent_atom_count,
)

__all__ = [
    "__version__",
    "AmplitudeVector",
    "AnalyticSpectrum",
    "CavityParams",
    "CavityReportSpec",
    "ComparisonRow",
    "ConfigError",
    "FactorizationError",
    "GaussianSpec",
    "JointState",
    "MehlerParams",
    "ModeOverlap",
    "ModeResolutionError",
    "RunResult",
    "ScenarioConfig",
    "SchmidtSpectrum",
    "SweepPoint",
    "TwoIndexFieldAmplitudes",
    "analytic_entropy",
    "analytic_schmidt_modes",
    "analytic_schmidt_number",
    "analytic_spectrum",
    "assemble_joint",
    "bad_cavity_phase",
    "break_time",
    "build_atomic_gaussian",
    "build_field_gaussian",
    "build_marginals",
    "builtin_config",
    "builtin_scenarios",
    "coherent_means_for_field",
    "collapse_field_amplitudes",
    "compare",
    "config_from_mapping",
    "correlated_phase",
    "enhancement_ratio",
    "entropy",
    "entropy_of_eigenvalues",
    "exact_phase",
    "free_space_estimate",
    "hermite_mode",
    "load_config",
    "mehler_identity_check",
    "mehler_params",
    "mehler_terms_for_tolerance",
    "mode_resolution",
    "output_joint_state",
    "output_phase_map",
    "output_schmidt_number",
    "parse_config_text",
    "preset_dual_coherent",
    "preset_spin_coherent",
    "run_cavity_report",
    "run_scenario",
    "schmidt_decompose",
    "schmidt_number",
    "schmidt_number_of_eigenvalues",
    "sigma_field_for_means",
    "spin_coherent_atom_count",
    "time_sweep",
]
