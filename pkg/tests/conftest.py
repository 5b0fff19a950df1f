import pytest
from hypothesis import HealthCheck, settings, strategies as st

from cpt_shift import DetuningSpec, ModelParams

settings.register_profile("default", deadline=None, max_examples=25,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")


@st.composite
def model_params(draw, gamma_12=True, p_range=1.5, rabi=(0.01, 0.3)):
    return ModelParams(
        omega_34=draw(st.floats(0.2, 20.0)),
        rabi_1=draw(st.floats(*rabi)),
        rabi_2=draw(st.floats(*rabi)),
        p_1=draw(st.floats(-p_range, p_range)),
        p_2=draw(st.floats(-p_range, p_range)),
        gamma_12=draw(st.floats(0.0, 0.01)) if gamma_12 else 0.0,
    )


@st.composite
def detunings(draw, scale=0.05):
    return DetuningSpec(draw(st.floats(-scale, scale)), draw(st.floats(-0.3, 0.3)))


@pytest.fixture
def fig2_params():
    shape = ModelParams(omega_34=10.0, rabi_1=3.0, rabi_2=1.0, p_1=1.0, p_2=-1.0)
    return shape.with_drive(1e-4, 9.0)
