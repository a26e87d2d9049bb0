import math
from dataclasses import replace

import numpy as np
import pytest

import dotgate as dg
from dotgate.pulses import PulseSpec, gaussian_envelope

HBAR = dg.HBAR_MEV_PS
TWO_PI = 2 * math.pi


def _params(**kw):
    defaults = dict(delta_small=1.0, delta_big=4.0, delta_a=2.5,
                    omega0_a=0.4, omega0_b=0.4, tau=5.0)
    defaults.update(kw)
    return dg.SystemParams(**defaults)


class TestEnvelope:
    def test_peak_and_symmetry(self):
        spec = PulseSpec(omega0=1.5, tau=0.5, window=4.0)
        assert gaussian_envelope(0.0, spec) == pytest.approx(1.5)
        assert gaussian_envelope(0.37, spec) == gaussian_envelope(-0.37, spec)

    def test_one_sigma_value(self):
        spec = PulseSpec(omega0=2.0, tau=0.8, window=6.4)
        assert gaussian_envelope(0.8, spec) == pytest.approx(2.0 * math.exp(-0.5), rel=1e-12)

    def test_spec_validation(self):
        with pytest.raises(dg.ParameterError):
            PulseSpec(omega0=-1.0, tau=1.0, window=4.0)
        with pytest.raises(dg.ParameterError):
            PulseSpec(omega0=1.0, tau=1.0, window=3.0)


class TestPulseArea:
    def test_zero_drive(self):
        assert dg.pulse_area(_params(omega0_a=0.0)) == pytest.approx(0.0, abs=1e-15)

    def test_against_trapezoid_oracle(self):
        # Independent route: dense trapezoid integration of the same integrand.
        p = _params(omega0_a=0.7, omega0_b=0.5, tau=2.3)
        ts = np.linspace(-p.window / 2, p.window / 2, 400001)
        oracle = np.trapezoid(dg.effective_rabi(ts, p) / HBAR, ts)
        assert dg.pulse_area(p) == pytest.approx(float(oracle), rel=1e-9)

    def test_against_infinite_window_closed_form(self):
        # erf(4) truncation keeps the 8-tau window within 1e-6 of the
        # infinite-window Gaussian integral omega0^2 B sqrt(pi) tau / hbar.
        p = _params(omega0_a=0.4286, omega0_b=0.4286, tau=5.95)
        closed = dg.pulse_area_closed_form(p, infinite_window=True)
        assert abs(dg.pulse_area(p) - closed) / closed < 1e-6

    def test_linear_in_tau(self):
        p1 = _params(tau=2.0)
        p2 = _params(tau=4.0)  # window scales with tau
        assert dg.pulse_area(p2) == pytest.approx(2.0 * dg.pulse_area(p1), rel=1e-10)


class TestSolveOmega0:
    def test_round_trip_hits_target_area(self):
        p = _params()
        for tau in (0.5, 2.0, 10.0):
            omega0 = dg.solve_omega0_for_gate(tau, p)
            solved = replace(p, omega0_a=omega0, omega0_b=omega0, tau=tau)
            assert abs(dg.pulse_area(solved) - TWO_PI) < 1e-9

    def test_known_operating_point(self):
        # tau = 0.4861 ps at the shortest-gate detuning needs ~1.5 meV,
        # i.e. r = 1/2 with d_min = 1.5 meV.
        omega0 = dg.solve_omega0_for_gate(0.4861, _params())
        assert omega0 == pytest.approx(1.5, abs=1e-3)
        assert omega0 / (2 * 1.5) == pytest.approx(0.5, abs=1e-3)

    def test_scaling_with_detuning_weight(self):
        p1 = _params(delta_a=2.5)
        p2 = _params(delta_a=1.5)
        b1 = dg.inverse_detuning_sum(p1)
        b2 = dg.inverse_detuning_sum(p2)
        om1 = dg.solve_omega0_for_gate(3.0, p1)
        om2 = dg.solve_omega0_for_gate(3.0, p2)
        assert om2 / om1 == pytest.approx(math.sqrt(b1 / b2), rel=1e-9)

    def test_rejects_bad_tau(self):
        with pytest.raises(dg.ParameterError):
            dg.solve_omega0_for_gate(0.0, _params())


class TestSolveTau:
    def test_conservative_point(self):
        point = dg.solve_tau_for_r(1 / 7, 2.5, _params())
        assert point.omega0 == pytest.approx(3 / 7, abs=1e-12)
        assert point.tau == pytest.approx(5.9548, abs=2e-3)
        assert point.gate_time == pytest.approx(8 * point.tau, rel=1e-12)
        assert point.nbar_estimate == pytest.approx(2 / 49, abs=1e-15)

    def test_fast_point(self):
        point = dg.solve_tau_for_r(0.5, 2.5, _params())
        assert point.omega0 == pytest.approx(1.5, abs=1e-12)
        assert point.tau == pytest.approx(0.48610, abs=2e-4)

    def test_exact_ratio_infinite_window(self):
        slow = dg.solve_tau_for_r(1 / 7, 2.5, _params(), infinite_window=True)
        fast = dg.solve_tau_for_r(0.5, 2.5, _params(), infinite_window=True)
        assert slow.tau / fast.tau == pytest.approx(12.25, abs=1e-9)

    def test_tau_r2_invariant_along_curve(self):
        for delta_a in (1.5, 2.5, 3.0):
            values = [
                dg.solve_tau_for_r(r, delta_a, _params(), infinite_window=True).tau * r * r
                for r in np.linspace(0.05, 0.5, 19)
            ]
            assert max(values) - min(values) < 1e-9 * max(values)

    def test_designed_area_is_two_pi(self):
        point = dg.solve_tau_for_r(0.3, 2.0, _params())
        solved = dg.apply_design(point, _params())
        assert abs(dg.pulse_area(solved) - TWO_PI) < 1e-9

    def test_rejects_bad_r(self):
        with pytest.raises(dg.ParameterError):
            dg.solve_tau_for_r(0.0, 2.5, _params())


class TestFigureOfMeritOrdering:
    def test_detuning_weight_table(self):
        # d_min^2 * B decides the gate speed; 2.5 meV wins among the three cases.
        expected = {1.5: 88 / 105, 2.5: 4.8, 3.0: 7 / 3}
        for delta_a, value in expected.items():
            p = _params(delta_a=delta_a)
            dmin = dg.derive_detunings(p).d_min
            assert dmin**2 * dg.inverse_detuning_sum(p) == pytest.approx(value, abs=1e-12)

    @pytest.mark.parametrize("r", [0.1, 0.2, 0.3, 0.4, 0.5])
    def test_shortest_gate_at_middle_detuning(self, r):
        taus = {
            delta_a: dg.solve_tau_for_r(r, delta_a, _params()).tau
            for delta_a in (1.5, 2.5, 3.0)
        }
        assert taus[2.5] < taus[3.0] < taus[1.5]


class TestSolverConsistency:
    def test_round_trip(self):
        p = _params()
        for r, delta_a in ((0.1, 2.5), (0.35, 1.8), (0.5, 3.0)):
            point = dg.solve_tau_for_r(r, delta_a, p)
            base = replace(p, delta_a=delta_a)
            omega0 = dg.solve_omega0_for_gate(point.tau, base)
            assert omega0 == pytest.approx(point.omega0, rel=1e-8)

    def test_finite_window_area_monotone_in_window(self):
        areas = []
        for wf in (4.0, 5.0, 6.0, 8.0, 12.0):
            areas.append(dg.pulse_area(_params(window_factor=wf)))
        assert all(a < b for a, b in zip(areas, areas[1:]))
        closed = dg.pulse_area_closed_form(_params(), infinite_window=True)
        assert areas[-1] == pytest.approx(closed, rel=1e-8)

    def test_design_params_helper(self):
        point, solved = dg.design_params(0.2, 2.5)
        assert solved.omega0_a == solved.omega0_b == point.omega0
        assert solved.tau == point.tau
        assert abs(dg.pulse_area(solved) - TWO_PI) < 1e-9

    def test_budget_flag(self):
        fast = dg.solve_tau_for_r(0.5, 2.5, _params())
        assert fast.within_budget
        crawl = dg.solve_tau_for_r(0.01, 1.5, _params())
        assert crawl.gate_time > 1000 and not crawl.within_budget
