import pytest

import dotgate as dg

R_DESIGN = 1.0 / 7.0
DELTA_A_OPT = 2.5


@pytest.fixture(scope="session")
def designed():
    """The R = 1/7, delta_a = 2.5 meV operating point and its parameters."""
    point, params = dg.design_params(R_DESIGN, DELTA_A_OPT)
    return point, params


@pytest.fixture(scope="session")
def designed_run(designed):
    """Converged full-model propagator run at the designed point (shared: slow)."""
    _, params = designed
    run = dg.run_gate(dg.ModelKind.FULL_ROTATING, params)
    return params, run


@pytest.fixture(scope="session")
def designed_report(designed_run):
    params, run = designed_run
    return dg.gate_report(run.unitary, params, run.trajectory)
