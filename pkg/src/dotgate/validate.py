"""Numerical integrity suite: structural identities the simulator must obey.

Each check is a pure function returning a :class:`CheckResult`; the CLI
``validate`` command runs them all and prints a table.  The checks cover
constructor identities (Hermiticity, Pauli-blocking zeros, detuning
algebra), propagator health (unitarity, norm drift, step-halving
convergence, convergence order), frame consistency between the lab and
rotating pictures, exact stationarity of the dark |00> state, and gauge
invariance of the gate metrics.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import metrics, model, pulses
from .evolve import ModelKind, default_step, fixed_step_unitary, run_gate
from .model import DIM, DotLevel, SystemParams, basis_index

_ALL_LEVELS = (DotLevel.ZERO, DotLevel.ONE, DotLevel.EXCITON)


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    detail: str


def _random_params(rng: np.random.Generator) -> SystemParams:
    delta_small = float(rng.uniform(0.0, 1.4))
    delta_big = float(rng.uniform(3.0, 5.0))
    delta_a = float(rng.uniform(delta_small + 0.3, delta_big - 0.3))
    return SystemParams(
        delta_small=delta_small,
        delta_big=delta_big,
        delta_a=delta_a,
        omega0_a=float(rng.uniform(0.0, 1.5)),
        omega0_b=float(rng.uniform(0.0, 1.5)),
        tau=float(rng.uniform(0.5, 8.0)),
    )


def check_hermiticity(seed: int = 1234, draws: int = 100) -> CheckResult:
    """All Hamiltonian constructors return Hermitian matrices (< 1e-12)."""
    rng = np.random.default_rng(seed)
    worst = 0.0
    for _ in range(draws):
        p = _random_params(rng)
        t = float(rng.uniform(-p.window / 2, p.window / 2))
        for build in (model.build_h0, model.build_drive_lab, model.build_drive_rotating,
                      model.build_h_eff):
            h = build(p) if build is model.build_h0 else build(t, p)
            worst = max(worst, float(np.abs(h - h.conj().T).max()))
    return CheckResult("hermiticity", worst < 1e-12, f"max |H - H^dag| = {worst:.3e}")


def check_pauli_blocking(seed: int = 1234, draws: int = 60) -> CheckResult:
    """Drive elements that would take a dot from |0> to |X> vanish exactly."""
    rng = np.random.default_rng(seed)
    worst = 0.0
    forbidden: list[tuple[int, int]] = []
    for partner_i in _ALL_LEVELS:
        for partner_j in _ALL_LEVELS:
            forbidden.append(
                (basis_index(DotLevel.ZERO, partner_i), basis_index(DotLevel.EXCITON, partner_j))
            )
            forbidden.append(
                (basis_index(partner_i, DotLevel.ZERO), basis_index(partner_j, DotLevel.EXCITON))
            )
    for _ in range(draws):
        p = _random_params(rng)
        t = float(rng.uniform(-p.window / 2, p.window / 2))
        for h in (model.build_drive_lab(t, p), model.build_drive_rotating(t, p)):
            for i, j in forbidden:
                worst = max(worst, abs(h[i, j]), abs(h[j, i]))
    return CheckResult("pauli_blocking", worst == 0.0, f"max forbidden element = {worst:.1e}")


def check_detuning_algebra(seed: int = 1234, draws: int = 200) -> CheckResult:
    """Two-photon resonance holds to machine precision for random inputs."""
    rng = np.random.default_rng(seed)
    worst = 0.0
    for _ in range(draws):
        p = _random_params(rng)
        det = model.derive_detunings(p)
        worst = max(
            worst,
            det.resonance_residual,
            abs(det.d_a + det.d_b_prime - p.delta_big),
            abs(det.d_b + det.d_a_prime - p.delta_big),
            abs(det.d_b - (p.delta_a - p.delta_small)),
            abs(det.d_min - min(det.as_tuple())),
        )
    return CheckResult("detuning_algebra", worst < 1e-12, f"max residual = {worst:.3e}")


def check_inverse_detuning_sum(seed: int = 1234, draws: int = 200) -> CheckResult:
    """Detuning-field sum agrees with the (Delta, delta, delta_a) closed form."""
    rng = np.random.default_rng(seed)
    worst = 0.0
    for _ in range(draws):
        p = _random_params(rng)
        from_fields = sum(1.0 / d for d in model.derive_detunings(p).as_tuple())
        closed = (
            1.0 / p.delta_a
            + 1.0 / (p.delta_big + p.delta_small - p.delta_a)
            + 1.0 / (p.delta_a - p.delta_small)
            + 1.0 / (p.delta_big - p.delta_a)
        )
        worst = max(worst, abs(from_fields - closed))
    return CheckResult("inverse_detuning_sum", worst < 1e-12, f"max |fields - closed| = {worst:.3e}")


def check_unitarity(seed: int = 1234, draws: int = 20) -> CheckResult:
    """Converged propagators are unitary to 1e-7 for random designed pulses."""
    rng = np.random.default_rng(seed)
    worst = 0.0
    for _ in range(draws):
        base = _random_params(rng)
        r = float(rng.uniform(0.15, 0.5))
        point = pulses.solve_tau_for_r(r, base.delta_a, base)
        p = pulses.apply_design(point, base)
        kind = ModelKind.FULL_ROTATING if rng.uniform() < 0.7 else ModelKind.EFFECTIVE
        u = run_gate(kind, p, samples=0).unitary
        worst = max(worst, float(np.abs(u.conj().T @ u - np.eye(DIM)).max()))
    return CheckResult("unitarity", worst < 1e-7, f"max |U^dag U - 1| = {worst:.3e}")


def check_norm_drift(params: SystemParams) -> CheckResult:
    """Norm of the propagated |11> state stays within 1e-9 of unity."""
    run = run_gate(ModelKind.FULL_ROTATING, params)
    return CheckResult("norm_drift", run.norm_drift < 1e-9, f"max drift = {run.norm_drift:.3e}")


def check_step_halving(params: SystemParams) -> CheckResult:
    """Halving the default step changes the propagator by < 1e-8."""
    run = run_gate(ModelKind.FULL_ROTATING, params, samples=0)
    return CheckResult(
        "step_halving",
        run.halving_diff < 1e-8,
        f"|U(h) - U(h/2)| = {run.halving_diff:.3e} at {run.steps} steps",
    )


def check_convergence_order(params: SystemParams) -> CheckResult:
    """Halving the step cuts the error by the nominal order within a factor 2."""
    t0, t1 = -params.window / 2, params.window / 2
    n = max(64, int(math.ceil((t1 - t0) / default_step(ModelKind.FULL_ROTATING, params))) // 4)
    details = []
    ok = True
    for order, nominal in ((2, 4.0), (4, 16.0)):
        u1, _ = fixed_step_unitary(ModelKind.FULL_ROTATING, params, t0, t1, n, order=order)
        u2, _ = fixed_step_unitary(ModelKind.FULL_ROTATING, params, t0, t1, 2 * n, order=order)
        u4, _ = fixed_step_unitary(ModelKind.FULL_ROTATING, params, t0, t1, 4 * n, order=order)
        err1 = float(np.abs(u1 - u4).max())
        err2 = float(np.abs(u2 - u4).max())
        ratio = err1 / err2 if err2 > 0 else float("inf")
        ok = ok and nominal / 2 <= ratio <= nominal * 2
        details.append(f"order {order}: ratio {ratio:.1f}")
    return CheckResult("convergence_order", ok, "; ".join(details))


def check_frame_equivalence(params: SystemParams) -> CheckResult:
    """Lab-frame and rotating-frame evolutions agree through the frame map.

    Spot check over a short window around the pulse peak: the lab frame
    carries optical phases near omega_a, so it needs tiny steps and is
    only sampled, never used for full gate metrics.
    """
    t0, t1 = -0.75, 0.75
    psi_rot0 = np.zeros(DIM, dtype=complex)
    psi_rot0[model.I11] = 0.8
    psi_rot0[model.I01] = 0.5
    psi_rot0[model.I1X] = 0.33166247903554
    psi_rot0 /= math.sqrt(float(np.vdot(psi_rot0, psi_rot0).real))
    run = run_gate(ModelKind.FULL_ROTATING, params, t0=t0, t1=t1, samples=0)
    psi_rot1 = run.unitary @ psi_rot0

    psi_lab0 = model.from_rotating_frame(psi_rot0, t0, params)
    n_lab = int(math.ceil((t1 - t0) / default_step(ModelKind.FULL_LAB, params)))
    u_lab, _ = fixed_step_unitary(ModelKind.FULL_LAB, params, t0, t1, n_lab, order=4)
    psi_from_lab = model.to_rotating_frame(u_lab @ psi_lab0, t1, params)

    diff = float(np.abs(psi_rot1 - psi_from_lab).max())
    return CheckResult("frame_equivalence", diff < 1e-6, f"max |psi_rot - psi_lab->rot| = {diff:.3e}")


def check_stationary_00(params: SystemParams) -> CheckResult:
    """|00> is exactly dark: its propagator column is the unit vector, bitwise."""
    worst = 0.0
    expected = np.zeros(DIM, dtype=complex)
    expected[model.I00] = 1.0
    for kind in (ModelKind.FULL_ROTATING, ModelKind.EFFECTIVE):
        u = run_gate(kind, params, samples=0).unitary
        worst = max(worst, float(np.abs(u[:, model.I00] - expected).max()),
                    float(np.abs(u[model.I00, :] - expected).max()))
    return CheckResult("stationary_00", worst == 0.0, f"max deviation = {worst:.1e}")


def check_gauge_invariance(params: SystemParams, seed: int = 1234, draws: int = 40) -> CheckResult:
    """Conditional phase and fidelity ignore single-dot Z phases (< 1e-12)."""
    rng = np.random.default_rng(seed)
    u = run_gate(ModelKind.FULL_ROTATING, params, samples=0).unitary
    phi0 = metrics.conditional_phase(u)
    fid0 = metrics.compensated_fidelity(u)
    worst = 0.0
    for _ in range(draws):
        left = _random_gauge(rng)
        right = _random_gauge(rng)
        v = left @ u @ right
        worst = max(
            worst,
            abs(metrics.wrap_angle(metrics.conditional_phase(v) - phi0)),
            abs(metrics.compensated_fidelity(v) - fid0),
        )
    return CheckResult("gauge_invariance", worst < 1e-12, f"max metric shift = {worst:.3e}")


def _random_gauge(rng: np.random.Generator) -> np.ndarray:
    """Random (global phase) x (Z_a x Z_b), embedded in the 9-level space."""
    g, za, zb = rng.uniform(-math.pi, math.pi, size=3)
    phase_a = {DotLevel.ZERO: 0.0, DotLevel.ONE: za, DotLevel.EXCITON: 0.0}
    phase_b = {DotLevel.ZERO: 0.0, DotLevel.ONE: zb, DotLevel.EXCITON: 0.0}
    diag = np.zeros(DIM, dtype=complex)
    for a in _ALL_LEVELS:
        for b in _ALL_LEVELS:
            diag[basis_index(a, b)] = np.exp(1j * (g + phase_a[a] + phase_b[b]))
    return np.diag(diag)


def run_all(params: SystemParams | None = None, seed: int = 1234) -> list[CheckResult]:
    """Run the full integrity suite against a designed gate (default R = 1/7)."""
    if params is None:
        _, params = pulses.design_params(1.0 / 7.0, 2.5, SystemParams())
    return [
        check_hermiticity(seed),
        check_pauli_blocking(seed),
        check_detuning_algebra(seed),
        check_inverse_detuning_sum(seed),
        check_unitarity(seed),
        check_norm_drift(params),
        check_step_halving(params),
        check_convergence_order(params),
        check_frame_equivalence(params),
        check_stationary_00(params),
        check_gauge_invariance(params, seed),
    ]
