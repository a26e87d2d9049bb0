"""Core model of two optically driven quantum dots.

Each dot holds one excess conduction electron. Its spin projections -1/2
and +1/2 serve as the qubit states |0> and |1>; the optically excited
exciton |X> is an ancillary level reachable only from |1> (Pauli blocking:
a sigma- photon can create the s-shell exciton only when the resident
electron spin is +1/2, so |0> never couples to the light).

The two-dot Hilbert space is the 9-dimensional product {0,1,X} x {0,1,X},
ordered row-major with dot a as the major index, see :func:`basis_index`.

Two lasers at frequencies ``w_L1 = omega_a + delta_a`` and
``w_L2 = omega_a + delta_a_prime`` shine on both dots.  The four
laser-exciton detunings satisfy the two-photon resonance

    delta_a + delta_b' = delta_b + delta_a' = Delta

with Delta the biexcitonic shift of |XX>, so that |11> and |XX> are
coupled resonantly at second order while every single-exciton state stays
off-resonant (blue detuned).

Units: energies in meV, times in ps, hbar = 0.6582119569 meV ps carried
explicitly.  All drive phase factors are exp(i E t / hbar) with E in meV.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np

HBAR_MEV_PS = 0.6582119569
"""Reduced Planck constant in meV ps."""

DIM = 9


class ParameterError(ValueError):
    """Raised for physically inadmissible model parameters."""


class DotLevel(enum.IntEnum):
    """Single-dot levels; the integer value fixes the basis ordering."""

    ZERO = 0
    ONE = 1
    EXCITON = 2


def basis_index(level_a: DotLevel | int, level_b: DotLevel | int) -> int:
    """Index of |level_a, level_b> in the row-major product basis."""
    return 3 * int(level_a) + int(level_b)


# Frequently used indices.
I00 = basis_index(DotLevel.ZERO, DotLevel.ZERO)
I01 = basis_index(DotLevel.ZERO, DotLevel.ONE)
I0X = basis_index(DotLevel.ZERO, DotLevel.EXCITON)
I10 = basis_index(DotLevel.ONE, DotLevel.ZERO)
I11 = basis_index(DotLevel.ONE, DotLevel.ONE)
I1X = basis_index(DotLevel.ONE, DotLevel.EXCITON)
IX0 = basis_index(DotLevel.EXCITON, DotLevel.ZERO)
IX1 = basis_index(DotLevel.EXCITON, DotLevel.ONE)
IXX = basis_index(DotLevel.EXCITON, DotLevel.EXCITON)

COMPUTATIONAL_INDICES = (I00, I01, I10, I11)
COMPUTATIONAL_LABELS = ("00", "01", "10", "11")
INTERMEDIATE_INDICES = (I1X, IX1)

_LEVEL_CHARS = {"0": DotLevel.ZERO, "1": DotLevel.ONE, "X": DotLevel.EXCITON}


def basis_state(level_a: DotLevel | int, level_b: DotLevel | int) -> np.ndarray:
    """Unit state vector for the product basis state |level_a, level_b>."""
    psi = np.zeros(DIM, dtype=complex)
    psi[basis_index(level_a, level_b)] = 1.0
    return psi


def state_from_label(label: str) -> np.ndarray:
    """Parse labels like '11' or '0X' into a basis state vector."""
    if len(label) != 2 or label[0] not in _LEVEL_CHARS or label[1] not in _LEVEL_CHARS:
        raise ParameterError(f"unknown basis-state label {label!r}")
    return basis_state(_LEVEL_CHARS[label[0]], _LEVEL_CHARS[label[1]])


@dataclass(frozen=True)
class SystemParams:
    """Physical parameters of the two-dot, two-laser system.

    Attributes
    ----------
    omega_a : float
        Exciton resonance energy of dot a (meV).  Gate metrics are
        evaluated in the rotating frame and do not depend on it; the
        default of 1000 meV keeps lab-frame runs honest about the fast
        optical phases.
    delta_small : float
        Resonance difference delta = omega_b - omega_a (meV).
    delta_big : float
        Biexcitonic shift Delta of |XX> (meV), > 0.
    delta_a : float
        Detuning of laser 1 from dot a, w_L1 - omega_a (meV).
    omega0_a, omega0_b : float
        Peak Rabi couplings of the Gaussian pulses on dots a and b (meV).
    tau : float
        Gaussian pulse duration (ps).
    window_factor : float
        The gate runs over a window T = window_factor * tau centred on the
        pulse peak; must be >= 4 so the pulse is essentially contained.
    hbar : float
        Reduced Planck constant (meV ps); fixed by convention.
    """

    omega_a: float = 1000.0
    delta_small: float = 1.0
    delta_big: float = 4.0
    delta_a: float = 2.5
    omega0_a: float = 0.5
    omega0_b: float = 0.5
    tau: float = 5.0
    window_factor: float = 8.0
    hbar: float = HBAR_MEV_PS

    def __post_init__(self) -> None:
        if not self.delta_big > 0:
            raise ParameterError(f"biexcitonic shift must be > 0, got {self.delta_big}")
        if not self.tau > 0:
            raise ParameterError(f"pulse duration must be > 0, got {self.tau}")
        if not self.window_factor >= 4:
            raise ParameterError(
                f"window_factor must be >= 4 (window too short at {self.window_factor})"
            )
        if self.omega0_a < 0 or self.omega0_b < 0:
            raise ParameterError("peak Rabi couplings must be >= 0")
        if not self.hbar > 0:
            raise ParameterError("hbar must be > 0")
        derive_detunings(self)  # rejects non-blue detunings

    @property
    def omega_b(self) -> float:
        """Exciton resonance energy of dot b (meV)."""
        return self.omega_a + self.delta_small

    @property
    def window(self) -> float:
        """Length of the simulation window T = window_factor * tau (ps)."""
        return self.window_factor * self.tau


@dataclass(frozen=True)
class Detunings:
    """The four laser-exciton detunings (meV), all > 0 for blue driving."""

    d_a: float
    d_a_prime: float
    d_b: float
    d_b_prime: float
    d_min: float
    resonance_residual: float

    def as_tuple(self) -> tuple[float, float, float, float]:
        return (self.d_a, self.d_a_prime, self.d_b, self.d_b_prime)

    @property
    def d_max(self) -> float:
        return max(self.as_tuple())


def derive_detunings(params: SystemParams) -> Detunings:
    """Detunings implied by (Delta, delta, delta_a) at two-photon resonance.

    With the laser frequencies pinned by delta_a and the resonance
    condition, the remaining three detunings follow algebraically:

        d_b  = delta_a - delta
        d_b' = Delta - delta_a
        d_a' = Delta - delta_a + delta

    Raises
    ------
    ParameterError
        If any detuning is <= 0 (the model assumes blue detuning; a zero
        detuning is a pole of the effective coupling).
    """
    d_a = params.delta_a
    d_b = params.delta_a - params.delta_small
    d_b_prime = params.delta_big - params.delta_a
    d_a_prime = params.delta_big - params.delta_a + params.delta_small
    values = {"delta_a": d_a, "delta_a'": d_a_prime, "delta_b": d_b, "delta_b'": d_b_prime}
    bad = {name: v for name, v in values.items() if v <= 0}
    if bad:
        msg = ", ".join(f"{name} = {v:g} meV" for name, v in bad.items())
        raise ParameterError(
            f"non-positive detuning ({msg}): blue detuning violated, "
            "effective coupling has a pole"
        )
    residual = abs(d_a + d_b_prime - params.delta_big) + abs(d_b + d_a_prime - params.delta_big)
    return Detunings(
        d_a=d_a,
        d_a_prime=d_a_prime,
        d_b=d_b,
        d_b_prime=d_b_prime,
        d_min=min(values.values()),
        resonance_residual=residual,
    )


def inverse_detuning_sum(params: SystemParams) -> float:
    """Sum of inverse detunings (meV^-1) weighting the two-photon coupling.

    Equals 1/d_a + 1/d_a' + 1/d_b + 1/d_b'; in closed form over the raw
    inputs, 1/delta_a + 1/(Delta+delta-delta_a) + 1/(delta_a-delta)
    + 1/(Delta-delta_a).
    """
    det = derive_detunings(params)
    return sum(1.0 / d for d in det.as_tuple())


def drive_envelope(t, omega0: float, tau: float):
    """Gaussian pulse envelope omega0 * exp(-t^2 / (2 tau^2)), peak at t=0."""
    t = np.asarray(t, dtype=float)
    return omega0 * np.exp(-(t * t) / (2.0 * tau * tau))


def build_h0(params: SystemParams) -> np.ndarray:
    """Bare-exciton Hamiltonian: diagonal exciton energies plus dipole shift.

    omega_a (omega_b) on every state with dot a (b) excited, additively,
    and the biexcitonic shift Delta on |XX> only.  Computational states
    carry zero energy (the spin splitting is absorbed in the qubit frame).
    """
    diag = np.zeros(DIM)
    for ib in range(3):
        diag[basis_index(DotLevel.EXCITON, ib)] += params.omega_a
        diag[basis_index(ib, DotLevel.EXCITON)] += params.omega_b
    diag[IXX] += params.delta_big
    return np.diag(diag).astype(complex)


def _laser_energies(params: SystemParams) -> tuple[float, float]:
    """Photon energies (meV) of the two driving lasers, w_L1 and w_L2."""
    det = derive_detunings(params)
    return params.omega_a + det.d_a, params.omega_a + det.d_a_prime


def lab_drive_stack(ts: np.ndarray, params: SystemParams) -> np.ndarray:
    """Lab-frame bichromatic drive H_I(t) for an array of times (ps).

    Places (Omega_k(t)/2)(e^{i w_L1 t/hbar} + e^{i w_L2 t/hbar}) on the
    lowering operator |1>_k<X| of each dot, independent of the partner
    level, plus the Hermitian conjugate.  No element ever connects |0> of
    a dot to |X> of the same dot (Pauli blocking).
    """
    ts = np.atleast_1d(np.asarray(ts, dtype=float))
    wl1, wl2 = _laser_energies(params)
    om_a = drive_envelope(ts, params.omega0_a, params.tau)
    om_b = drive_envelope(ts, params.omega0_b, params.tau)
    bichromatic = np.exp(1j * wl1 * ts / params.hbar) + np.exp(1j * wl2 * ts / params.hbar)
    fa = 0.5 * om_a * bichromatic
    fb = 0.5 * om_b * bichromatic
    h = np.zeros((len(ts), DIM, DIM), dtype=complex)
    for ib in range(3):  # dot-a lowering, any partner level
        h[:, basis_index(DotLevel.ONE, ib), basis_index(DotLevel.EXCITON, ib)] = fa
    for ia in range(3):  # dot-b lowering
        h[:, basis_index(ia, DotLevel.ONE), basis_index(ia, DotLevel.EXCITON)] = fb
    return h + np.conj(np.swapaxes(h, 1, 2))


def rotating_drive_stack(ts: np.ndarray, params: SystemParams) -> np.ndarray:
    """Rotating-frame drive H'(t) for an array of times (ps).

    Interaction picture of H_I with respect to the bare Hamiltonian: the
    dot-a lowering coefficient becomes
    (Omega_a(t)/2)(e^{i w_L1 t/hbar} + e^{i w_L2 t/hbar}) e^{-i omega_a t/hbar},
    with an extra e^{-i Delta t/hbar} on the component whose partner dot
    is in |X>; symmetrically for dot b.  Only detuning-scale phases
    survive, so omega_a drops out of the matrix elements.
    """
    ts = np.atleast_1d(np.asarray(ts, dtype=float))
    det = derive_detunings(params)
    om_a = drive_envelope(ts, params.omega0_a, params.tau)
    om_b = drive_envelope(ts, params.omega0_b, params.tau)
    arg = ts / params.hbar
    fa = 0.5 * om_a * (np.exp(1j * det.d_a * arg) + np.exp(1j * det.d_a_prime * arg))
    fb = 0.5 * om_b * (np.exp(1j * det.d_b * arg) + np.exp(1j * det.d_b_prime * arg))
    shift = np.exp(-1j * params.delta_big * arg)
    h = np.zeros((len(ts), DIM, DIM), dtype=complex)
    h[:, I10, IX0] = fa
    h[:, I11, IX1] = fa
    h[:, I1X, IXX] = fa * shift
    h[:, I01, I0X] = fb
    h[:, I11, I1X] = fb
    h[:, IX1, IXX] = fb * shift
    return h + np.conj(np.swapaxes(h, 1, 2))


def effective_rabi(t, params: SystemParams):
    """Second-order coupling strength between |11> and |XX> (meV).

    Omega_eff(t) = Omega_a(t) * Omega_b(t) * inverse_detuning_sum.  Valid
    well below saturation, Omega_k / 2 << d_min.
    """
    weight = inverse_detuning_sum(params)
    om_a = drive_envelope(t, params.omega0_a, params.tau)
    om_b = drive_envelope(t, params.omega0_b, params.tau)
    return om_a * om_b * weight


def effective_stack(ts: np.ndarray, params: SystemParams) -> np.ndarray:
    """Effective two-level Hamiltonian for an array of times (ps)."""
    ts = np.atleast_1d(np.asarray(ts, dtype=float))
    half = 0.5 * effective_rabi(ts, params)
    h = np.zeros((len(ts), DIM, DIM), dtype=complex)
    h[:, IXX, I11] = half
    h[:, I11, IXX] = half
    return h


def build_drive_lab(t: float, params: SystemParams) -> np.ndarray:
    """Lab-frame drive H_I at a single time (meV)."""
    return lab_drive_stack(np.array([t]), params)[0]


def build_drive_rotating(t: float, params: SystemParams) -> np.ndarray:
    """Rotating-frame drive H' at a single time (meV)."""
    return rotating_drive_stack(np.array([t]), params)[0]


def build_h_eff(t: float, params: SystemParams) -> np.ndarray:
    """Effective |11><XX| coupling Hamiltonian at a single time (meV)."""
    return effective_stack(np.array([t]), params)[0]


def rotating_frame_phases(t: float, params: SystemParams) -> np.ndarray:
    """Diagonal of exp(+i H0 t / hbar), mapping lab states to the rotating frame."""
    diag = np.diag(build_h0(params)).real
    return np.exp(1j * diag * t / params.hbar)


def to_rotating_frame(state: np.ndarray, t: float, params: SystemParams) -> np.ndarray:
    """Map a lab-frame state at time t into the rotating frame."""
    return rotating_frame_phases(t, params) * state


def from_rotating_frame(state: np.ndarray, t: float, params: SystemParams) -> np.ndarray:
    """Map a rotating-frame state at time t back to the lab frame."""
    return np.conj(rotating_frame_phases(t, params)) * state
