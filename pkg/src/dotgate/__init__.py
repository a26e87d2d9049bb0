"""dotgate: bichromatic two-qubit phase gate on coupled quantum dots.

Simulates the optically driven |11> <-> |XX> two-photon transition of two
neighboring semiconductor quantum dots, designs the Gaussian pulses that
close the conditional phase gate, and scores the result (leakage,
conditional phase, compensated fidelity, dephasing budget).
"""

__version__ = "0.1.0"

from .model import (
    HBAR_MEV_PS,
    DotLevel,
    Detunings,
    ParameterError,
    SystemParams,
    basis_index,
    basis_state,
    build_drive_lab,
    build_drive_rotating,
    build_h0,
    build_h_eff,
    derive_detunings,
    drive_envelope,
    effective_rabi,
    inverse_detuning_sum,
    state_from_label,
)
from .pulses import (
    DEPHASING_BUDGET_PS,
    DesignPoint,
    PulseSpec,
    QuadratureError,
    apply_design,
    design_params,
    gaussian_envelope,
    pulse_area,
    pulse_area_closed_form,
    solve_omega0_for_gate,
    solve_tau_for_r,
)
from .evolve import (
    GateRun,
    IntegrationError,
    ModelKind,
    PropagationResult,
    default_step,
    fixed_step_unitary,
    intermediate_population,
    propagate,
    propagator,
    run_gate,
)
from .metrics import (
    GateReport,
    MetricsError,
    compensated_fidelity,
    conditional_phase,
    gate_report,
    leakage,
    phase_error,
    wrap_angle,
)

__all__ = [
    "HBAR_MEV_PS",
    "DEPHASING_BUDGET_PS",
    "DotLevel",
    "Detunings",
    "SystemParams",
    "PulseSpec",
    "DesignPoint",
    "ModelKind",
    "PropagationResult",
    "GateRun",
    "GateReport",
    "ParameterError",
    "QuadratureError",
    "IntegrationError",
    "MetricsError",
    "basis_index",
    "basis_state",
    "state_from_label",
    "derive_detunings",
    "inverse_detuning_sum",
    "drive_envelope",
    "build_h0",
    "build_drive_lab",
    "build_drive_rotating",
    "build_h_eff",
    "effective_rabi",
    "gaussian_envelope",
    "pulse_area",
    "pulse_area_closed_form",
    "solve_omega0_for_gate",
    "solve_tau_for_r",
    "apply_design",
    "design_params",
    "default_step",
    "fixed_step_unitary",
    "propagate",
    "propagator",
    "run_gate",
    "intermediate_population",
    "leakage",
    "conditional_phase",
    "phase_error",
    "wrap_angle",
    "compensated_fidelity",
    "gate_report",
]
