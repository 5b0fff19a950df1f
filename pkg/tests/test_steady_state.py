import numpy as np
import pytest
from hypothesis import given
from scipy.linalg import expm

from cpt_shift import (DensityMatrix, DetuningSpec, IllConditioned, ModelParams, SingularSystem,
                       StepTooLarge, evolve, iter_evolve, solve_steady, validate)
from cpt_shift.steady_state import (STATE_LABELS, build_system, generator, hamiltonian,
                                    max_step, relaxation_rates, steady_residual)

from conftest import detunings, model_params


def test_hamiltonian_is_hermitian_with_expected_couplings():
    p = ModelParams(omega_34=0.7, rabi_1=0.2, rabi_2=0.1, p_1=0.5, p_2=-2.0)
    H = hamiltonian(p, DetuningSpec(0.01, 0.03))
    assert np.allclose(H, H.conj().T)
    assert H[2, 0] == -0.2 and H[3, 0] == -0.1 and H[3, 1] == pytest.approx(0.2)
    assert H[0, 0].real == pytest.approx(0.035) and H[1, 1].real == pytest.approx(0.025)
    assert H[3, 3] == 0.7


def test_generator_preserves_trace():
    M = generator(ModelParams(omega_34=1.0, rabi_1=0.1, rabi_2=0.2, p_1=1, p_2=1), 0.01)
    # d/dt of sum(rho_nn) is identically zero
    assert np.allclose(M[:4].sum(axis=0), 0.0, atol=1e-15)


def test_system_labels():
    s = build_system(ModelParams(omega_34=1.0, rabi_1=0.1, rabi_2=0.1), 0.0)
    assert s.labels[0] == "trace" and len(s.labels) == len(STATE_LABELS) == 16


@pytest.mark.parametrize("p1, p2, omega_34", [(0.0, 0.0, 1.0), (0.8, 0.8, 0.5), (-1.3, -1.3, 5.0)])
def test_dark_state_is_exact_at_two_photon_resonance(p1, p2, omega_34):
    # equal dipole ratios keep the ground superposition dark for level 4 too
    p = ModelParams(omega_34=omega_34, rabi_1=0.12, rabi_2=0.05, p_1=p1, p_2=p2)
    rho = solve_steady(p, DetuningSpec(0.0, 0.1))
    s = p.rabi_sq_sum
    assert rho.rho11 == pytest.approx(0.05 ** 2 / s, abs=1e-12)
    assert rho.rho12 == pytest.approx(-0.12 * 0.05 / s, abs=1e-12)
    assert rho.excited_population == pytest.approx(0.0, abs=1e-12)


def test_single_component_pumps_into_the_other_ground_level():
    p = ModelParams(omega_34=1.0, rabi_1=0.1, rabi_2=0.0, p_1=0.4)
    rho = solve_steady(p, 0.02)
    assert rho.rho22 == pytest.approx(1.0, abs=1e-12)


def test_frozen_values_weak_coupling_example(fig2_params):
    rho = solve_steady(fig2_params, DetuningSpec(2e-5))
    assert rho.rho11 == pytest.approx(0.09932699060478208, rel=1e-9)
    assert rho.rho12 == pytest.approx(-0.29274827991310487 + 0.011446144404630853j, rel=1e-9)
    assert rho.excited_population == pytest.approx(7.328125838644886e-07, rel=1e-8)


@given(model_params(), detunings())
def test_steady_state_is_a_physical_density_matrix(p, det):
    # keep the relaxation completely positive: Gamma >= (gamma + gamma_12)/2
    p = p.replace(gamma_opt=1.0 + 0.5 * p.gamma_12)
    rho = solve_steady(p, det)
    assert rho.violations() == []
    assert steady_residual(p, det, rho) < 1e-10


@given(model_params(), detunings())
def test_steady_state_trace_and_hermiticity_hold_always(p, det):
    rho = solve_steady(p, det)
    assert rho.hermiticity_error() < 1e-12 and rho.trace_error() < 1e-12


def test_ground_dephasing_at_the_radiative_limit_can_break_positivity():
    p = ModelParams(omega_34=1.0, rabi_1=0.25, rabi_2=0.015625, p_2=1.0, gamma_12=0.0078125)
    assert any("positivity" in a for a in validate(p).advisories)
    assert -1e-7 < solve_steady(p, 0.0).min_eigenvalue() < -1e-9


@given(model_params(), detunings())
def test_relabelling_ground_states_mirrors_the_solution(p, det):
    a = solve_steady(p, det)
    b = solve_steady(p.swapped(), DetuningSpec(-det.delta, det.delta_common))
    assert b.rho11 == pytest.approx(a.rho22, abs=1e-10)
    assert b.rho12 == pytest.approx(np.conj(a.rho12), abs=1e-10)
    assert b.excited_population == pytest.approx(a.excited_population, abs=1e-12)


def test_zero_drive_is_singular():
    with pytest.raises(SingularSystem):
        solve_steady(ModelParams(omega_34=1.0, rabi_1=0.0, rabi_2=0.0), 0.0)


def test_strict_mode_flags_near_singular_systems():
    p = ModelParams(omega_34=1.0, rabi_1=1e-9, rabi_2=1e-9)
    with pytest.raises(IllConditioned) as info:
        solve_steady(p, 0.0, strict=True)
    assert info.value.condition_number > 1e12


def test_relaxation_rates_have_one_zero_mode():
    rates = relaxation_rates(ModelParams(omega_34=1.0, rabi_1=0.1, rabi_2=0.1, gamma_12=1e-3), 0.0)
    assert abs(rates[0]) < 1e-12 and rates[1] > 1e-6


# ---------------------------------------------------------------------------
# time evolution

P_EV = ModelParams(omega_34=2.0, rabi_1=0.3, rabi_2=0.2, p_1=0.5, p_2=-0.5, gamma_12=0.01)
DET_EV = DetuningSpec(0.01, 0.1)


def _exact_propagation(t):
    return DensityMatrix.from_vector(expm(generator(P_EV, DET_EV) * t) @
                                     DensityMatrix.pure(1).to_vector())


def test_evolve_zero_time_is_identity():
    rho = evolve(P_EV, DET_EV, DensityMatrix.pure(2), 0.0, 0.01)
    assert np.array_equal(rho.matrix, DensityMatrix.pure(2).matrix)


def test_evolve_rejects_unstable_steps():
    with pytest.raises(StepTooLarge):
        evolve(P_EV, DET_EV, DensityMatrix.pure(1), 1.0, 2 * max_step(P_EV, DET_EV))


def test_evolve_is_fourth_order():
    ref = _exact_propagation(3.0).matrix
    errs = [np.max(np.abs(evolve(P_EV, DET_EV, DensityMatrix.pure(1), 3.0, h).matrix - ref))
            for h in (0.04, 0.02)]
    assert 12 < errs[0] / errs[1] < 20


def test_evolve_lands_on_final_time():
    # 1.0 / 0.03 is not an integer; the step is shortened to fit
    rho = evolve(P_EV, DET_EV, DensityMatrix.pure(1), 1.0, 0.03)
    assert np.max(np.abs(rho.matrix - _exact_propagation(1.0).matrix)) < 1e-8


def test_iter_evolve_matches_evolve():
    states = list(iter_evolve(P_EV, DET_EV, DensityMatrix.pure(1), 0.02, 50))
    assert len(states) == 50
    final = evolve(P_EV, DET_EV, DensityMatrix.pure(1), 1.0, 0.02)
    assert np.allclose(states[-1].matrix, final.matrix, atol=1e-13)
    assert all(abs(s.trace_error()) < 1e-12 for s in states)
