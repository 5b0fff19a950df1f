import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from cpt_shift import (DetuningSpec, ModelParams, Unsupported, ZeroDrive, appendix_b_coefficients,
                       chi_adiabatic, chi_weak, corrected_rational, excited_population, gamma_d,
                       reconstruct_rational, rho_exc_from_chi, solve_steady, spectrum,
                       susceptibility)
from cpt_shift._tables import corrected_table, printed_table

from conftest import detunings, model_params

SHARED = ("A1", "A5", "A6", "A7", "B1", "B4", "B6", "B8", "B9")
MISPRINTED = ("A2", "A3", "A4", "B2", "B3", "B5", "B7")


def _named(A, B):
    out = {f"A{n}": A[n] for n in range(1, 8)}
    out.update({f"B{n}": B[n] for n in range(1, 10)})
    return out


@given(model_params(), detunings())
def test_excited_population_identity(p, det):
    rho = solve_steady(p, det)
    direct = excited_population(p, rho)  # raises if the two expressions disagree
    c1, c2 = susceptibility(p, det, rho)
    assert rho_exc_from_chi(p, c1.imag, c2.imag) == pytest.approx(direct, abs=1e-12)


def test_absorption_is_positive_and_dips_at_resonance(fig2_params):
    p, gd = fig2_params, gamma_d(fig2_params)
    chi = lambda d: chi_adiabatic(p, d)
    assert chi(20 * gd) > 0
    assert chi(1.6e-5) < chi(1.6e-5 + gd) and chi(1.6e-5) < chi(1.6e-5 - gd)


def test_susceptibility_needs_both_drives():
    p = ModelParams(omega_34=1.0, rabi_1=0.1, rabi_2=0.0)
    with pytest.raises(ZeroDrive):
        susceptibility(p, 0.0, solve_steady(p, 0.0))


def test_weak_profile_tracks_the_adiabatic_one(fig2_params):
    p, gd = fig2_params, gamma_d(fig2_params)
    d = np.linspace(-5, 5, 11) * gd
    exact = np.array([chi_adiabatic(p, x) for x in d])
    depth = exact.max() - exact.min()
    assert np.max(np.abs(chi_weak(p, d) - exact)) < 0.05 * depth


@given(model_params(gamma_12=False), st.floats(-20, 20), st.sampled_from([1, 2]))
def test_corrected_rational_form_equals_the_adiabatic_solution(p, u, g):
    d = u * gamma_d(p)
    want = chi_adiabatic(p, d, g)
    assert corrected_rational(p, g)(d) == pytest.approx(want, rel=1e-9, abs=1e-12 * abs(want) + 1e-14)


@settings(max_examples=5)
@given(model_params(gamma_12=False, p_range=1.0, rabi=(0.05, 0.3)))
def test_reconstruction_matches_the_corrected_table(p):
    rec, ref = reconstruct_rational(p), corrected_rational(p)
    d = np.linspace(-3, 3, 7) * gamma_d(p)
    assert np.allclose(rec(d), ref(d), rtol=1e-9)
    if "degree" in rec.provenance:
        return  # common factors cancelled (e.g. p_1 = p_2); only the profile is comparable
    scale = np.max(np.abs(ref.denominator))
    assert np.allclose(rec.numerator, ref.numerator, rtol=1e-8, atol=1e-12 * scale)
    assert np.allclose(rec.denominator, ref.denominator, rtol=1e-8, atol=1e-12 * scale)
    assert rec.numerator[0] == 0 and rec.denominator[0] == 0


def test_reconstruction_drops_to_lower_degree_without_the_fourth_level():
    p = ModelParams(omega_34=1.0, rabi_1=0.1, rabi_2=0.2)
    rec = reconstruct_rational(p)
    assert rec.provenance["degree"] == "reduced 3/5"
    d = np.linspace(-0.2, 0.2, 7)
    assert np.allclose(rec(d), [chi_adiabatic(p, x) for x in d], rtol=1e-10)


def test_printed_and_corrected_tables_share_the_correct_entries():
    args = (1.0, 0.8, 0.2, 0.13, 0.7, -0.4)
    printed, corrected = _named(*printed_table(*args)), _named(*corrected_table(*args))
    for name in SHARED:
        assert printed[name] == corrected[name]
    for name in MISPRINTED:
        assert printed[name] != pytest.approx(corrected[name], rel=1e-3), name


def test_printed_table_does_not_reproduce_the_solver():
    p = ModelParams(omega_34=0.8, rabi_1=0.2, rabi_2=0.13, p_1=0.7, p_2=-0.4)
    d = np.linspace(-0.5, 0.5, 9) * gamma_d(p)
    want = np.array([chi_adiabatic(p, x) for x in d])
    printed = appendix_b_coefficients(p, "printed")(d)
    corrected = appendix_b_coefficients(p, "corrected")(d)
    assert np.allclose(corrected, want, rtol=1e-9)
    assert np.max(np.abs(printed - want) / np.abs(want)) > 1e-2


def test_tabulated_coefficients_carry_provenance():
    p = ModelParams(omega_34=0.8, rabi_1=0.2, rabi_2=0.13, p_1=0.7, p_2=-0.4)
    chi = appendix_b_coefficients(p, "printed")
    assert chi.provenance["A0"] == "reconstructed" and chi.provenance["B6"] == "table:printed"


@pytest.mark.parametrize("change, exc", [({"gamma_12": 1e-3}, Unsupported), ({"rabi_2": 0.0}, ZeroDrive)])
def test_rational_form_domain(change, exc):
    p = ModelParams(omega_34=0.8, rabi_1=0.2, rabi_2=0.13, p_1=0.7, p_2=-0.4).replace(**change)
    with pytest.raises(exc):
        corrected_rational(p)


def test_second_component_is_the_mirrored_first():
    p = ModelParams(omega_34=0.8, rabi_1=0.2, rabi_2=0.13, p_1=0.7, p_2=-0.4)
    d = np.linspace(-0.02, 0.02, 5)
    assert np.allclose(corrected_rational(p, 2)(d), corrected_rational(p.swapped(), 1)(-d), rtol=1e-12)
    mirrored = corrected_rational(p.swapped(), 1).swapped_sign()
    assert np.allclose(mirrored.numerator, corrected_rational(p, 2).numerator)


# ---------------------------------------------------------------------------
# spectra

def test_spectrum_paths_agree_in_the_adiabatic_regime(fig2_params):
    grid = np.linspace(-3, 3, 7) * gamma_d(fig2_params)
    ex = spectrum(fig2_params, grid, "exact")
    ad = spectrum(fig2_params, grid, "adiabatic")
    ra = spectrum(fig2_params, grid, "rational")
    assert np.allclose(ex.column("chi1_im"), ad.column("chi1_im"), rtol=1e-3)
    assert np.allclose(ad.column("chi1_im"), ra.column("chi1_im"), rtol=1e-9)
    assert np.allclose(ex.column("rho_exc"), ra.column("rho_exc"), rtol=1e-3)
    assert ra.sources["chi1_im"] == "rational" and ra.sources["rho11"] == "adiabatic"


def test_spectrum_single_point_and_threads(fig2_params):
    assert len(spectrum(fig2_params, [0.0])) == 1
    grid = np.linspace(-1e-4, 1e-4, 9)
    a = spectrum(fig2_params, grid, workers=1)
    b = spectrum(fig2_params, grid, workers=4)
    assert a.points == b.points


def test_spectrum_rejects_bad_grids(fig2_params):
    with pytest.raises(ValueError):
        spectrum(fig2_params, [])
    with pytest.raises(ValueError):
        spectrum(fig2_params, [0.0, 1e-5, 0.5e-5])
    with pytest.raises(Unsupported):
        spectrum(fig2_params, [0.0], "rational", delta_common=0.1)
