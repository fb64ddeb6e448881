"""Numeric Schmidt factorization: spectra, entropy, Schmidt number, sweeps."""

import math

import numpy as np
import pytest
from numpy.testing import assert_allclose

from faraday_schmidt import (
    GaussianSpec,
    JointState,
    analytic_spectrum,
    assemble_joint,
    build_atomic_gaussian,
    build_field_gaussian,
    entropy,
    entropy_of_eigenvalues,
    mehler_params,
    schmidt_decompose,
    schmidt_number,
    schmidt_number_of_eigenvalues,
    time_sweep,
)

FIG2A = GaussianSpec(sigma_A=3, sigma_F=24, N_A=18)


@pytest.fixture(scope="module")
def fig2a_marginals():
    return build_atomic_gaussian(FIG2A), build_field_gaussian(FIG2A)


def test_rank_one_spectrum(fig2a_marginals):
    atomic, field = fig2a_marginals
    spectrum = schmidt_decompose(assemble_joint(atomic, field, 0.0))
    assert spectrum.eigenvalues[0] == pytest.approx(1.0, abs=1e-10)
    assert np.all(spectrum.eigenvalues[1:] < 1e-12)
    assert spectrum.rank_kept == 1


def test_entropy_trivial_spectra():
    assert entropy_of_eigenvalues(np.array([1.0, 0.0, 0.0])) == 0.0
    assert entropy_of_eigenvalues(np.array([0.5, 0.5])) == pytest.approx(math.log(2))


def test_schmidt_number_trivial_spectra():
    assert schmidt_number_of_eigenvalues(np.array([1.0, 0.0])) == 1.0
    assert schmidt_number_of_eigenvalues(np.array([0.5, 0.5])) == pytest.approx(2.0)


def test_entropy_of_geometric_spectrum():
    # frozen closed-form oracle at mu^2 = 0.17157287525380993 (x = 1)
    spectrum = analytic_spectrum(mehler_params(1.0, 1.0, 1.0))
    assert_allclose(
        entropy_of_eigenvalues(spectrum.eigenvalues), 0.5533032997205158, atol=5e-10
    )


def test_schmidt_number_of_geometric_spectrum_is_sqrt2():
    # algebraic identity at x = 1: (1 + mu^2)/(1 - mu^2) = sqrt(2)
    spectrum = analytic_spectrum(mehler_params(1.0, 1.0, 1.0))
    assert_allclose(
        schmidt_number_of_eigenvalues(spectrum.eigenvalues), math.sqrt(2.0), rtol=1e-10
    )


def test_eigenvalues_sorted_and_normalized(fig2a_marginals):
    atomic, field = fig2a_marginals
    spectrum = schmidt_decompose(assemble_joint(atomic, field, 0.03))
    lam = spectrum.eigenvalues
    assert np.all(np.diff(lam) <= 1e-15)
    assert_allclose(lam.sum(), 1.0, atol=1e-10)
    assert np.all(lam >= -1e-15)


def test_modes_orthonormal(fig2a_marginals):
    atomic, field = fig2a_marginals
    spectrum = schmidt_decompose(assemble_joint(atomic, field, 0.03))
    k = spectrum.eigenvalues.size
    gram_a = np.conj(spectrum.atomic_modes) @ spectrum.atomic_modes.T
    gram_f = np.conj(spectrum.field_modes) @ spectrum.field_modes.T
    assert np.max(np.abs(gram_a - np.eye(k))) < 1e-10
    assert np.max(np.abs(gram_f - np.eye(k))) < 1e-10


def test_reconstruction(fig2a_marginals):
    atomic, field = fig2a_marginals
    state = assemble_joint(atomic, field, 0.05)
    spectrum = schmidt_decompose(state)
    assert np.linalg.norm(spectrum.reconstruct() - state.coeffs) < 1e-8


def test_rank_cut_truncates_modes(fig2a_marginals):
    atomic, field = fig2a_marginals
    state = assemble_joint(atomic, field, 0.05)
    full = schmidt_decompose(state)
    cut = schmidt_decompose(state, rank_cut=3)
    assert cut.eigenvalues.size == 3
    assert cut.atomic_modes.shape[0] == 3
    assert_allclose(cut.eigenvalues, full.eigenvalues[:3], rtol=1e-13)
    with pytest.raises(ValueError):
        schmidt_decompose(state, rank_cut=0)


def test_local_phases_leave_spectrum_invariant(fig2a_marginals):
    atomic, field = fig2a_marginals
    state = assemble_joint(atomic, field, 0.04)
    rng = np.random.default_rng(42)
    row = np.exp(1j * rng.uniform(0, 2 * math.pi, state.m_grid.size))
    col = np.exp(1j * rng.uniform(0, 2 * math.pi, state.n_grid.size))
    dressed = JointState(
        m_grid=state.m_grid,
        n_grid=state.n_grid,
        coeffs=row[:, None] * state.coeffs * col[None, :],
        tau=state.tau,
    )
    lam_a = schmidt_decompose(state).eigenvalues
    lam_b = schmidt_decompose(dressed).eigenvalues
    assert np.max(np.abs(lam_a - lam_b)) < 1e-12


def test_transpose_leaves_invariants_unchanged(fig2a_marginals):
    atomic, field = fig2a_marginals
    state = assemble_joint(atomic, field, 0.04)
    swapped = JointState(
        m_grid=state.n_grid,
        n_grid=state.m_grid,
        coeffs=state.coeffs.T,
        tau=state.tau,
    )
    a = schmidt_decompose(state)
    b = schmidt_decompose(swapped)
    assert abs(entropy(a) - entropy(b)) < 1e-12
    assert abs(schmidt_number(a) - schmidt_number(b)) < 1e-12


def test_index_reflection_leaves_spectrum_unchanged(fig2a_marginals):
    atomic, field = fig2a_marginals
    state = assemble_joint(atomic, field, 0.04)
    reflected = JointState(
        m_grid=-state.m_grid[::-1],
        n_grid=-state.n_grid[::-1],
        coeffs=state.coeffs[::-1, ::-1],
        tau=state.tau,
    )
    lam_a = schmidt_decompose(state).eigenvalues
    lam_b = schmidt_decompose(reflected).eigenvalues
    assert np.max(np.abs(lam_a - lam_b)) < 1e-12


def test_entropy_zero_iff_schmidt_number_one(fig2a_marginals):
    atomic, field = fig2a_marginals
    spectrum = schmidt_decompose(assemble_joint(atomic, field, 0.0))
    assert entropy(spectrum) < 1e-8
    assert schmidt_number(spectrum) - 1.0 < 1e-8


class TestTimeSweep:
    def test_single_point(self, fig2a_marginals):
        atomic, field = fig2a_marginals
        points = time_sweep(atomic, field, [0.0])
        assert len(points) == 1
        assert points[0].entropy < 1e-10
        assert points[0].schmidt_number == pytest.approx(1.0, abs=1e-10)

    def test_matches_independent_calls(self, fig2a_marginals):
        atomic, field = fig2a_marginals
        taus = [0.01, 0.02, 0.03]
        points = time_sweep(atomic, field, taus)
        for tau, point in zip(taus, points):
            spectrum = schmidt_decompose(assemble_joint(atomic, field, tau))
            assert point.tau == tau
            assert point.entropy == pytest.approx(entropy(spectrum), abs=1e-13)
            assert point.schmidt_number == pytest.approx(
                schmidt_number(spectrum), abs=1e-12
            )

    def test_monotone_growth_inside_break_window(self, fig2a_marginals):
        atomic, field = fig2a_marginals
        taus = np.linspace(0.0, 1.0 / 24.0, 9)
        points = time_sweep(atomic, field, taus)
        entropies = [p.entropy for p in points]
        numbers = [p.schmidt_number for p in points]
        assert np.all(np.diff(entropies) > 0)
        assert np.all(np.diff(numbers) > 0)

    def test_bad_tau_reported_with_value(self, fig2a_marginals):
        atomic, field = fig2a_marginals
        with pytest.raises(ValueError, match="nan"):
            time_sweep(atomic, field, [0.01, math.nan])
