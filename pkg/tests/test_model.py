import math

import numpy as np
import pytest

import dotgate as dg
from dotgate.model import (
    DIM,
    I00,
    I01,
    I0X,
    I10,
    I11,
    I1X,
    IX0,
    IX1,
    IXX,
    DotLevel,
)

HBAR = dg.HBAR_MEV_PS


def _params(**kw):
    defaults = dict(delta_small=1.0, delta_big=4.0, delta_a=2.5,
                    omega0_a=0.4, omega0_b=0.4, tau=5.0)
    defaults.update(kw)
    return dg.SystemParams(**defaults)


def _random_valid_params(rng):
    delta = float(rng.uniform(0.0, 1.4))
    big = float(rng.uniform(3.0, 5.0))
    da = float(rng.uniform(delta + 0.3, big - 0.3))
    return dg.SystemParams(
        delta_small=delta, delta_big=big, delta_a=da,
        omega0_a=float(rng.uniform(0, 1.5)), omega0_b=float(rng.uniform(0, 1.5)),
        tau=float(rng.uniform(0.5, 8.0)),
    )


class TestBasis:
    def test_corner_indices(self):
        assert dg.basis_index(DotLevel.ZERO, DotLevel.ZERO) == 0
        assert dg.basis_index(DotLevel.ONE, DotLevel.ONE) == 4
        assert dg.basis_index(DotLevel.EXCITON, DotLevel.EXCITON) == 8

    def test_bijective_row_major(self):
        seen = set()
        for a in DotLevel:
            for b in DotLevel:
                idx = dg.basis_index(a, b)
                assert idx == 3 * int(a) + int(b)
                seen.add(idx)
        assert seen == set(range(9))

    def test_state_from_label(self):
        psi = dg.state_from_label("1X")
        assert psi[I1X] == 1.0 and np.count_nonzero(psi) == 1
        with pytest.raises(dg.ParameterError):
            dg.state_from_label("2X")


class TestDetunings:
    def test_optimal_point(self):
        det = dg.derive_detunings(_params(delta_a=2.5))
        assert det.d_b == pytest.approx(1.5, abs=1e-15)
        assert det.d_b_prime == pytest.approx(1.5, abs=1e-15)
        assert det.d_a_prime == pytest.approx(2.5, abs=1e-15)
        assert det.d_min == pytest.approx(1.5, abs=1e-15)
        assert det.resonance_residual == 0.0

    def test_asymmetric_point(self):
        det = dg.derive_detunings(_params(delta_a=1.5))
        assert det.as_tuple() == pytest.approx((1.5, 3.5, 0.5, 2.5), abs=1e-15)
        assert det.d_min == pytest.approx(0.5)

    def test_identical_dots(self):
        det = dg.derive_detunings(_params(delta_small=0.0, delta_a=2.0))
        assert det.as_tuple() == pytest.approx((2.0, 2.0, 2.0, 2.0), abs=1e-15)
        assert det.d_min == pytest.approx(2.0)

    def test_two_photon_resonance_random(self):
        rng = np.random.default_rng(7)
        for _ in range(200):
            p = _random_valid_params(rng)
            det = dg.derive_detunings(p)
            # residual is zero up to float rounding of the detuning algebra
            assert det.resonance_residual < 1e-12
            assert abs(det.d_a + det.d_b_prime - p.delta_big) < 1e-12
            assert abs(det.d_b + det.d_a_prime - p.delta_big) < 1e-12

    @pytest.mark.parametrize("delta_a", [1.0, 0.5, 4.0, 4.5, -1.0])
    def test_rejects_non_blue_detuning(self, delta_a):
        with pytest.raises(dg.ParameterError):
            _params(delta_a=delta_a)

    def test_pole_message_names_detuning(self):
        with pytest.raises(dg.ParameterError, match="pole"):
            _params(delta_a=1.0)  # delta_b = 0


class TestParamValidation:
    def test_rejects_short_window(self):
        with pytest.raises(dg.ParameterError):
            _params(window_factor=2.0)

    def test_rejects_bad_scalars(self):
        with pytest.raises(dg.ParameterError):
            _params(tau=0.0)
        with pytest.raises(dg.ParameterError):
            _params(delta_big=-4.0)
        with pytest.raises(dg.ParameterError):
            _params(omega0_a=-0.1)

    def test_window_property(self):
        p = _params(tau=2.0, window_factor=8.0)
        assert p.window == pytest.approx(16.0)


class TestBareHamiltonian:
    def test_matrix_elements(self):
        p = _params()
        h0 = dg.build_h0(p)
        assert h0[IXX, IXX] == pytest.approx(p.omega_a + p.omega_b + p.delta_big)
        assert h0[I00, I00] == 0.0
        assert h0[IX1, IX1] == pytest.approx(p.omega_a)
        assert h0[IX0, IX0] == pytest.approx(p.omega_a)
        assert h0[I1X, I1X] == pytest.approx(p.omega_b)
        assert np.count_nonzero(h0 - np.diag(np.diag(h0))) == 0

    def test_computational_states_unshifted(self):
        h0 = dg.build_h0(_params())
        for idx in (I00, I01, I10, I11):
            assert h0[idx, idx] == 0.0


class TestLabDrive:
    def test_pauli_blocked_elements_are_exact_zeros(self):
        p = _params()
        rng = np.random.default_rng(3)
        for t in rng.uniform(-20, 20, size=25):
            h = dg.build_drive_lab(float(t), p)
            assert h[IX0, I00] == 0.0
            assert h[I00, IX0] == 0.0
            assert h[I0X, I00] == 0.0
            # the whole |00> row and column are dark
            assert np.all(h[I00, :] == 0.0) and np.all(h[:, I00] == 0.0)

    def test_peak_element_is_full_coupling(self):
        # At t = 0 both laser phase factors equal 1, so the bichromatic sum
        # doubles the half-coupling: <X1|H_I|11> = omega0_a.
        p = _params(omega0_a=0.7, omega0_b=0.3)
        h = dg.build_drive_lab(0.0, p)
        assert h[IX1, I11] == pytest.approx(0.7, abs=1e-15)
        assert h[I1X, I11].conjugate() == pytest.approx(0.3, abs=1e-15)

    def test_hermitian_random(self):
        rng = np.random.default_rng(11)
        for _ in range(100):
            p = _random_valid_params(rng)
            t = float(rng.uniform(-p.window / 2, p.window / 2))
            h = dg.build_drive_lab(t, p)
            assert np.abs(h - h.conj().T).max() < 1e-12


class TestRotatingDrive:
    def test_biexciton_leg_carries_shift_phase(self):
        p = _params(omega0_a=0.6, omega0_b=0.2)
        det = dg.derive_detunings(p)
        rng = np.random.default_rng(5)
        for t in rng.uniform(-10, 10, size=20):
            h = dg.build_drive_rotating(float(t), p)
            env_a = dg.drive_envelope(t, p.omega0_a, p.tau)
            expected = (
                0.5 * env_a
                * (np.exp(1j * det.d_a * t / HBAR) + np.exp(1j * det.d_a_prime * t / HBAR))
                * np.exp(-1j * p.delta_big * t / HBAR)
            )
            assert h[I1X, IXX] == pytest.approx(expected, abs=1e-14)
            # same leg without a biexciton partner has no shift phase
            plain = 0.5 * env_a * (
                np.exp(1j * det.d_a * t / HBAR) + np.exp(1j * det.d_a_prime * t / HBAR)
            )
            assert h[I11, IX1] == pytest.approx(plain, abs=1e-14)

    def test_00_is_dark(self):
        p = _params()
        for t in (-3.3, 0.0, 1.7):
            h = dg.build_drive_rotating(t, p)
            assert np.all(h[I00, :] == 0.0) and np.all(h[:, I00] == 0.0)

    def test_elementwise_bound(self):
        rng = np.random.default_rng(13)
        for _ in range(50):
            p = _random_valid_params(rng)
            t = float(rng.uniform(-p.window / 2, p.window / 2))
            h = dg.build_drive_rotating(t, p)
            bound = (dg.drive_envelope(t, p.omega0_a, p.tau)
                     + dg.drive_envelope(t, p.omega0_b, p.tau))
            assert np.abs(h).max() <= bound + 1e-15

    def test_matches_frame_transform_of_lab_drive(self):
        # H'(t) must be exp(+i H0 t / hbar) H_I(t) exp(-i H0 t / hbar); the
        # lab side carries optical phase arguments of order 1e4 rad, so float
        # argument reduction limits the match to ~|arg| * eps.
        rng = np.random.default_rng(17)
        for _ in range(40):
            p = _random_valid_params(rng)
            t = float(rng.uniform(-p.window / 2, p.window / 2))
            phases = np.exp(1j * np.diag(dg.build_h0(p)).real * t / p.hbar)
            transformed = phases[:, None] * dg.build_drive_lab(t, p) * np.conj(phases)[None, :]
            assert np.abs(transformed - dg.build_drive_rotating(t, p)).max() < 1e-10

    def test_hermitian_random(self):
        rng = np.random.default_rng(19)
        for _ in range(100):
            p = _random_valid_params(rng)
            t = float(rng.uniform(-p.window / 2, p.window / 2))
            h = dg.build_drive_rotating(t, p)
            assert np.abs(h - h.conj().T).max() < 1e-12


class TestEffectiveCoupling:
    def test_inverse_detuning_sum_optimal(self):
        # 1/2.5 + 1/2.5 + 1/1.5 + 1/1.5 = 32/15
        assert dg.inverse_detuning_sum(_params(delta_a=2.5)) == pytest.approx(32 / 15, abs=1e-14)

    def test_inverse_detuning_sum_asymmetric(self):
        # 1/1.5 + 1/3.5 + 1/0.5 + 1/2.5 = 352/105
        assert dg.inverse_detuning_sum(_params(delta_a=1.5)) == pytest.approx(352 / 105, abs=1e-14)

    def test_closed_form_equals_field_sum_random(self):
        rng = np.random.default_rng(23)
        for _ in range(200):
            p = _random_valid_params(rng)
            closed = (
                1 / p.delta_a
                + 1 / (p.delta_big + p.delta_small - p.delta_a)
                + 1 / (p.delta_a - p.delta_small)
                + 1 / (p.delta_big - p.delta_a)
            )
            assert abs(dg.inverse_detuning_sum(p) - closed) < 1e-12

    def test_vanishes_without_drive(self):
        p = _params(omega0_a=0.0)
        assert dg.effective_rabi(0.0, p) == 0.0

    def test_h_eff_spectrum_and_dark_states(self):
        p = _params()
        h = dg.build_h_eff(0.3, p)
        half = 0.5 * dg.effective_rabi(0.3, p)
        eigenvalues = np.sort(np.linalg.eigvalsh(h))
        expected = np.sort(np.array([-half, half] + [0.0] * 7))
        assert eigenvalues == pytest.approx(expected, abs=1e-14)
        assert np.linalg.matrix_rank(h) == 2
        for idx in (I00, I01, I10):
            assert np.all(h[:, idx] == 0.0)

    def test_envelope_shape(self):
        assert dg.drive_envelope(0.0, 1.3, 2.0) == pytest.approx(1.3)
        assert dg.drive_envelope(0.9, 1.3, 2.0) == dg.drive_envelope(-0.9, 1.3, 2.0)
        assert dg.drive_envelope(2.0, 1.3, 2.0) == pytest.approx(1.3 * math.exp(-0.5))


class TestHermiticityAllBuilders:
    def test_hundred_random_draws(self):
        rng = np.random.default_rng(29)
        worst = 0.0
        for _ in range(100):
            p = _random_valid_params(rng)
            t = float(rng.uniform(-p.window / 2, p.window / 2))
            for h in (dg.build_h0(p), dg.build_drive_lab(t, p),
                      dg.build_drive_rotating(t, p), dg.build_h_eff(t, p)):
                worst = max(worst, float(np.abs(h - h.conj().T).max()))
        assert worst < 1e-12
