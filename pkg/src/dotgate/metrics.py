"""Gate-quality figures of merit.

The target operation is a conditional phase gate on the computational
subspace {|00>, |01>, |10>, |11>}: a -1 on |11> and identity elsewhere,
up to single-dot Z rotations and a global phase (those are free in any
architecture with local control, and the full drive inevitably adds
light-shift phases).  Accordingly the conditional phase and the fidelity
below are gauge invariants: they do not move under U -> e^{i g} (Za x Zb) U.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .model import (
    COMPUTATIONAL_INDICES,
    COMPUTATIONAL_LABELS,
    DIM,
    SystemParams,
)
from .evolve import intermediate_population
from .pulses import DEPHASING_BUDGET_PS

_CZ_DIAG = np.array([1.0, 1.0, 1.0, -1.0])


class MetricsError(RuntimeError):
    """Raised when a metric is undefined for the supplied gate."""


@dataclass(frozen=True)
class GateReport:
    """Summary of one simulated gate.

    ``leakage_per_input`` maps the computational input labels to the
    population lost from the computational subspace; ``phase_error`` is
    the circular distance of the conditional phase from pi.
    """

    conditional_phase: float
    phase_error: float
    leakage_per_input: dict[str, float]
    peak_intermediate: float
    compensated_fidelity: float
    gate_time: float
    within_dephasing_budget: bool


def wrap_angle(phi: float) -> float:
    """Wrap an angle to (-pi, pi]."""
    wrapped = math.fmod(phi + math.pi, 2.0 * math.pi)
    if wrapped <= 0.0:
        wrapped += 2.0 * math.pi
    return wrapped - math.pi


def computational_block(u: np.ndarray) -> np.ndarray:
    """4x4 block of U on the computational subspace, ordered 00, 01, 10, 11."""
    idx = np.array(COMPUTATIONAL_INDICES)
    return u[np.ix_(idx, idx)]


def leakage(u: np.ndarray, state: np.ndarray) -> float:
    """Population driven out of the computational subspace, 1 - |P U psi|^2."""
    out = u @ np.asarray(state, dtype=complex)
    kept = float(sum(abs(out[i]) ** 2 for i in COMPUTATIONAL_INDICES))
    return max(0.0, 1.0 - kept)


def conditional_phase(u: np.ndarray) -> float:
    """Gauge-invariant conditional phase arg[U_11 U_00 / (U_01 U_10)] in (-pi, pi].

    Built from the diagonal computational matrix elements, so single-dot Z
    rotations and global phases cancel.

    Raises
    ------
    MetricsError
        If a diagonal element has magnitude below 1e-6 (the gate failed;
        leakage dominates and the phase is meaningless).
    """
    m = computational_block(u)
    diag = np.diag(m)
    if np.abs(diag).min() < 1e-6:
        raise MetricsError(
            "vanishing computational diagonal element; gate failed, leakage dominated"
        )
    return wrap_angle(float(np.angle(diag[3] * diag[0] / (diag[1] * diag[2]))))


def phase_error(phi: float) -> float:
    """Circular distance |phi - pi| of a conditional phase from the target pi."""
    return abs(wrap_angle(phi - math.pi))


def compensated_fidelity(u: np.ndarray) -> float:
    """Trace overlap with the ideal phase gate after removing free phases.

    The computational block M is multiplied by the unique combination of
    single-dot Z rotations and global phase that makes its 00, 01 and 10
    diagonal entries real and positive; the score is then
    |tr(diag(1,1,1,-1)^dagger M')| / 4.  Equals 1 exactly for the ideal
    gate dressed with arbitrary local Z phases, and 0.5 for the identity.
    """
    m = computational_block(u)
    a00, a01, a10 = (float(np.angle(m[i, i])) for i in range(3))
    g = -a00
    zb = -a01 - g
    za = -a10 - g
    comp = np.exp(1j * np.array([g, g + zb, g + za, g + za + zb]))
    trace = np.sum(_CZ_DIAG * comp * np.diag(m))
    return float(abs(trace)) / 4.0


def gate_report(
    u: np.ndarray,
    params: SystemParams,
    trajectory: list[tuple[float, np.ndarray]],
) -> GateReport:
    """Assemble the figures of merit for a simulated gate window.

    ``trajectory`` must be the sampled evolution of the |11> input; its
    peak single-exciton population enters the report.
    """
    if u.shape != (DIM, DIM):
        raise MetricsError(f"propagator must be {DIM}x{DIM}")
    phi = conditional_phase(u)
    leaks = {
        label: leakage(u, _basis_vec(i))
        for label, i in zip(COMPUTATIONAL_LABELS, COMPUTATIONAL_INDICES)
    }
    gate_time = params.window
    return GateReport(
        conditional_phase=phi,
        phase_error=phase_error(phi),
        leakage_per_input=leaks,
        peak_intermediate=intermediate_population(trajectory),
        compensated_fidelity=compensated_fidelity(u),
        gate_time=gate_time,
        within_dephasing_budget=gate_time < DEPHASING_BUDGET_PS,
    )


def _basis_vec(index: int) -> np.ndarray:
    vec = np.zeros(DIM, dtype=complex)
    vec[index] = 1.0
    return vec
