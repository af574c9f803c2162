"""Tests for the general second-order engine."""

import functools

import numpy as np
import pytest

from zenotraj.core import QubitState, SpectralDensity, binary_phases
from zenotraj.dephasing import DephasingParams, dephasing_exponent
from zenotraj.dissipative import MemoryKernel, decay_amplitude, memory_kernel
from zenotraj.errors import NullOutcome
from zenotraj.filters import FilterSpec, decay_factor_overlap, filter_diss, filter_deph
from zenotraj.numerics import TimeGrid
from zenotraj.perturbation import (
    CouplingModel,
    PhaseProfile,
    dephasing_coupling_model,
    dissipative_coupling_model,
    general_decay_factor,
    general_filter,
    interaction_picture_operator,
    phase_pair_sum_from_profile,
    second_order_block,
)

SX = np.array([[0.0, 1.0], [1.0, 0.0]], dtype=complex)
SY = np.array([[0.0, -1.0j], [1.0j, 0.0]], dtype=complex)
SZ = np.diag([1.0, -1.0]).astype(complex)

LORENTZIAN = SpectralDensity.lorentzian(gamma0=4.0, lam=2.0, omega_q=1.0)
OHMIC = SpectralDensity.ohmic(eta=1.0 / 3.0, s=1.0, omega_c=1.0)


class TestPhaseProfile:
    def test_binary_matches_phase_vector(self):
        prof = PhaseProfile.binary(5, 2)
        np.testing.assert_array_equal(prof.phases, binary_phases(5, 2))
        assert prof.n_paths == 5

    def test_pair_sum_identity_exact_small_n(self):
        # sum_{kl} e^{-i(phi_k - phi_l)} == (N - 2n)^2 exactly for binary phases
        for n_paths in range(1, 11):
            for n_shifts in range(0, n_paths // 2 + 1):
                s = phase_pair_sum_from_profile(PhaseProfile.binary(n_paths, n_shifts))
                assert s == float((n_paths - 2 * n_shifts) ** 2)

    def test_pair_sum_general_phases(self):
        prof = PhaseProfile(np.array([0.0, 0.4, -1.1]))
        w = np.exp(-1j * prof.phases)
        expected = abs(np.sum(w)) ** 2
        assert phase_pair_sum_from_profile(prof) == pytest.approx(expected, rel=1e-14)

    def test_validation(self):
        with pytest.raises(ValueError):
            PhaseProfile(np.array([]))
        with pytest.raises(ValueError):
            PhaseProfile(np.array([0.0, np.nan]))
        with pytest.raises(ValueError):
            PhaseProfile(np.zeros((2, 2)))


class TestCouplingModel:
    def test_validation(self):
        kern = lambda a, b, w, t1, t2: np.asarray(w) * 0.0
        with pytest.raises(ValueError):
            CouplingModel(np.array([[0.0, 1.0], [0.0, 0.0]]), (SX,), kern, (LORENTZIAN,))
        with pytest.raises(ValueError):
            CouplingModel(SZ, (np.array([[0.0, 1.0], [0.0, 0.0]]),), kern, (LORENTZIAN,))
        with pytest.raises(ValueError):
            CouplingModel(SZ, (), kern, (LORENTZIAN,))
        with pytest.raises(ValueError):
            CouplingModel(SZ, (SX,), kern, ())

    def test_single_density_broadcasts_over_paths(self):
        model = dissipative_coupling_model(LORENTZIAN, omega_q=1.0)
        assert model.density_for_path(0) is LORENTZIAN
        assert model.density_for_path(3) is LORENTZIAN

    def test_omega_scale_is_level_splitting(self):
        model = dissipative_coupling_model(LORENTZIAN, omega_q=1.7)
        assert model.omega_scale == pytest.approx(1.7, rel=1e-14)


class TestInteractionPicture:
    def test_sigma_x_rotation(self):
        # e^{i(wq/2)sz t} sx e^{-i(wq/2)sz t} = cos(wq t) sx - sin(wq t) sy
        omega_q, t = 1.7, 0.83
        rotated = interaction_picture_operator(SX, 0.5 * omega_q * SZ, t)
        expected = np.cos(omega_q * t) * SX - np.sin(omega_q * t) * SY
        np.testing.assert_allclose(rotated, expected, atol=1e-14)

    def test_commuting_operator_is_invariant(self):
        rotated = interaction_picture_operator(SZ, 0.5 * 2.3 * SZ, 1.4)
        np.testing.assert_allclose(rotated, SZ, atol=1e-15)

    def test_non_hermitian_generator_rejected(self):
        with pytest.raises(ValueError):
            interaction_picture_operator(SX, np.array([[0.0, 1.0], [0.0, 0.0]]), 0.5)


def _volterra_reference(j_unit, omega_q, eps_sq, grid):
    """G(t) for eps^2-scaled coupling, re-using the unit-coupling kernel."""
    base = memory_kernel(j_unit, omega_q)
    cached = functools.lru_cache(maxsize=None)(base.f)
    kernel = MemoryKernel(lambda tt: eps_sq * cached(tt), base.provenance)
    return decay_amplitude(j_unit, omega_q, grid, kernel=kernel)


class TestSecondOrderBlock:
    def test_matches_exact_dissipative_dynamics_to_fourth_order(self):
        # The block is the exact eps^2 coefficient, so the deviation from the
        # full solution must fall by ~2^4 per halving of eps.
        omega_q, t = 1.0, 0.2
        grid = TimeGrid(0.0, t / 800, 801)
        errs = {}
        for eps in (0.4, 0.2, 0.1):
            j = LORENTZIAN.scaled(eps**2)
            model = dissipative_coupling_model(j, omega_q=omega_q)
            block = second_order_block(model, QubitState.excited(), 0, t)
            g = _volterra_reference(LORENTZIAN, omega_q, eps**2, grid).values[-1]
            pop = abs(g) ** 2
            exact = np.diag([pop - 1.0, 1.0 - pop]).astype(complex)
            errs[eps] = np.max(np.abs(block - exact))
        assert 12.0 < errs[0.4] / errs[0.2] < 22.0
        assert 12.0 < errs[0.2] / errs[0.1] < 22.0
        assert errs[0.1] < 1e-6

    def test_matches_exact_dephasing_dynamics_to_fourth_order(self):
        t = 1.0
        errs = {}
        for eps in (0.4, 0.2, 0.1):
            j = OHMIC.scaled(eps**2)
            model = dephasing_coupling_model(j)
            block = second_order_block(model, QubitState.plus(), 0, t)
            decayed = 0.5 * (np.exp(-dephasing_exponent(DephasingParams(j), t)) - 1.0)
            exact = np.array([[0.0, decayed], [decayed, 0.0]], dtype=complex)
            errs[eps] = np.max(np.abs(block - exact))
        assert 12.0 < errs[0.4] / errs[0.2] < 22.0
        assert 12.0 < errs[0.2] / errs[0.1] < 22.0

    def test_block_is_traceless_and_hermitian(self):
        # Trace preservation holds exactly for the generator; quadrature
        # deviations are reported by this assertion rather than renormalized.
        model = dissipative_coupling_model(LORENTZIAN.scaled(0.04), omega_q=1.0)
        block = second_order_block(model, QubitState.excited(), 0, 0.3)
        assert abs(np.trace(block)) < 1e-12
        np.testing.assert_allclose(block, block.conj().T, atol=1e-14)

    def test_zero_kernel_gives_zero_block(self):
        kern = lambda a, b, w, t1, t2: np.zeros(np.broadcast(w, t1, t2).shape)
        model = CouplingModel(0.5 * SZ, (SX,), kern, (LORENTZIAN,))
        block = second_order_block(model, QubitState.excited(), 0, 0.5)
        np.testing.assert_array_equal(block, np.zeros((2, 2)))

    def test_time_edge_cases(self):
        model = dissipative_coupling_model(LORENTZIAN, omega_q=1.0)
        np.testing.assert_array_equal(
            second_order_block(model, QubitState.excited(), 0, 0.0),
            np.zeros((2, 2)))
        with pytest.raises(ValueError):
            second_order_block(model, QubitState.excited(), 0, -0.1)


class TestGeneralFilter:
    @pytest.mark.parametrize("n_paths,n_shifts", [(1, 0), (3, 1), (5, 2)])
    def test_reproduces_sinc_squared_filter(self, n_paths, n_shifts):
        # The Hermitian-pair decomposition of the energy-exchange coupling
        # must collapse to the sinc^2 filter (all four terms contribute
        # equally), here to machine precision on a 50-point grid.
        model = dissipative_coupling_model(LORENTZIAN, omega_q=1.0)
        grid = np.linspace(-2.0, 4.0, 50)
        t = 0.5
        got = general_filter(model, QubitState.excited(), grid, t,
                             PhaseProfile.binary(n_paths, n_shifts))
        want = filter_diss(grid, t, omega_q=1.0, n_paths=n_paths, n_shifts=n_shifts)
        np.testing.assert_allclose(got, want, rtol=1e-6)
        np.testing.assert_allclose(got, want, rtol=1e-12)  # actual accuracy

    def test_dephasing_shape_with_constant_ratio_four(self):
        # Same (1 - cos wt)/w^2 shape; the overall constant relating the
        # general normalization to the reference filter fits to exactly 4.
        model = dephasing_coupling_model(OHMIC)
        grid = np.linspace(0.05, 6.0, 50)
        t = 1.3
        got = general_filter(model, QubitState.plus(), grid, t, PhaseProfile.binary(4, 1))
        want = filter_deph(grid, t, n_paths=4, n_shifts=1)
        ratio = got / want
        fitted = np.median(ratio)
        assert np.ptp(ratio) < 1e-8
        assert fitted == pytest.approx(4.0, abs=1e-10)

    def test_scalar_matches_array_and_t_zero(self):
        model = dissipative_coupling_model(LORENTZIAN, omega_q=1.0)
        prof = PhaseProfile.binary(3, 1)
        arr = general_filter(model, QubitState.excited(), np.array([1.3]), 0.4, prof)
        scalar = general_filter(model, QubitState.excited(), 1.3, 0.4, prof)
        assert scalar == arr[0]
        assert general_filter(model, QubitState.excited(), 1.3, 0.0, prof) == 0.0

    def test_global_phase_shift_invariance(self):
        model = dissipative_coupling_model(LORENTZIAN, omega_q=1.0)
        base = PhaseProfile.binary(4, 1)
        shifted = PhaseProfile(base.phases + 0.7)
        f0 = general_filter(model, QubitState.excited(), 1.3, 0.4, base)
        f1 = general_filter(model, QubitState.excited(), 1.3, 0.4, shifted)
        assert f0 == pytest.approx(f1, rel=1e-12)

    def test_equal_phase_profile_scales_as_one_over_n(self):
        # For identical phases the prefactor is 2/N, so F(N) = F(1)/N and
        # any constant offset leaves the value unchanged.
        model = dissipative_coupling_model(LORENTZIAN, omega_q=1.0)
        f1 = general_filter(model, QubitState.excited(), 1.3, 0.4, PhaseProfile.binary(1, 0))
        f4 = general_filter(model, QubitState.excited(), 1.3, 0.4,
                            PhaseProfile(np.full(4, 0.3)))
        assert f4 == pytest.approx(f1 / 4.0, rel=1e-12)

    def test_null_phase_profile_rejected(self):
        model = dissipative_coupling_model(LORENTZIAN, omega_q=1.0)
        with pytest.raises(NullOutcome):
            general_filter(model, QubitState.excited(), 1.0, 0.4, PhaseProfile.binary(2, 1))
        with pytest.raises(NullOutcome):
            general_filter(model, QubitState.excited(), 1.0, 0.4,
                           PhaseProfile(np.array([0.0, 2 * np.pi / 3, 4 * np.pi / 3])))

    def test_mixed_initial_state_rejected(self):
        model = dissipative_coupling_model(LORENTZIAN, omega_q=1.0)
        mixed = QubitState(np.diag([0.6, 0.4]).astype(complex))
        with pytest.raises(ValueError):
            general_filter(model, mixed, 1.0, 0.4, PhaseProfile.binary(1, 0))

    def test_specializations_are_non_negative(self):
        model = dissipative_coupling_model(LORENTZIAN, omega_q=1.0)
        grid = np.linspace(-2.0, 4.0, 101)
        vals = general_filter(model, QubitState.excited(), grid, 0.5, PhaseProfile.binary(3, 1))
        assert np.min(vals) > -1e-15
        deph = dephasing_coupling_model(OHMIC)
        gridd = np.linspace(0.02, 8.0, 101)
        vals = general_filter(deph, QubitState.plus(), gridd, 1.3, PhaseProfile.binary(4, 1))
        assert np.min(vals) > -1e-15


class TestGeneralDecayFactor:
    def test_matches_overlap_integral_for_identical_paths(self):
        model = dissipative_coupling_model(LORENTZIAN, omega_q=1.0)
        for n_paths, n_shifts in [(1, 0), (3, 1)]:
            got = general_decay_factor(model, QubitState.excited(), 0.4,
                                       PhaseProfile.binary(n_paths, n_shifts))
            spec = FilterSpec("diss_superposed", t=0.4, omega_q=1.0,
                              n_paths=n_paths, n_shifts=n_shifts)
            want = decay_factor_overlap(LORENTZIAN, spec)
            assert got == pytest.approx(want, rel=1e-6)
            assert got == pytest.approx(want, rel=1e-12)  # actual accuracy
        frozen = general_decay_factor(model, QubitState.excited(), 0.4,
                                      PhaseProfile.binary(1, 0))
        assert frozen == pytest.approx(0.34338694154948596, rel=1e-10)

    def test_dephasing_factor_equals_half_exponent(self):
        # With the constant-4 normalization the overlap equals Gamma(t)/2,
        # which for this density at t=1 is (1/3) ln 2.
        model = dephasing_coupling_model(OHMIC)
        got = general_decay_factor(model, QubitState.plus(), 1.0, PhaseProfile.binary(1, 0))
        gamma = dephasing_exponent(DephasingParams(OHMIC), 1.0)
        assert got == pytest.approx(0.5 * gamma, rel=1e-12)
        assert got == pytest.approx(np.log(2.0) / 3.0, abs=1e-14)

    def test_silent_path_rescales_by_population_fraction(self):
        # One path with J == 0 contributes nothing: the average drops by (N-1)/N.
        zeros = SpectralDensity.tabulated(
            np.linspace(0.0, LORENTZIAN.omega_max, 30), np.zeros(30))
        base = dissipative_coupling_model(LORENTZIAN, omega_q=1.0)
        with_silent = CouplingModel(base.h_q, base.operators, base.kernel,
                                    (LORENTZIAN, LORENTZIAN, zeros))
        prof = PhaseProfile.binary(3, 0)
        partial = general_decay_factor(with_silent, QubitState.excited(), 0.4, prof)
        full = general_decay_factor(base, QubitState.excited(), 0.4, prof)
        assert partial == pytest.approx(2.0 / 3.0 * full, rel=1e-12)

    def test_exactly_quadratic_in_coupling(self):
        base = dissipative_coupling_model(LORENTZIAN, omega_q=1.0)
        scaled = dissipative_coupling_model(LORENTZIAN.scaled(0.09), omega_q=1.0)
        prof = PhaseProfile.binary(2, 0)
        g_base = general_decay_factor(base, QubitState.excited(), 0.4, prof)
        g_scaled = general_decay_factor(scaled, QubitState.excited(), 0.4, prof)
        assert g_scaled == pytest.approx(0.09 * g_base, rel=1e-13)

    def test_zero_time_and_path_count_mismatch(self):
        model = dissipative_coupling_model(LORENTZIAN, omega_q=1.0)
        assert general_decay_factor(model, QubitState.excited(), 0.0,
                                    PhaseProfile.binary(2, 0)) == 0.0
        bad = CouplingModel(model.h_q, model.operators, model.kernel,
                            (LORENTZIAN, LORENTZIAN))
        with pytest.raises(ValueError):
            general_decay_factor(bad, QubitState.excited(), 0.4, PhaseProfile.binary(3, 0))
