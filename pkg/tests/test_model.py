import math

import pytest
from hypothesis import given, strategies as st

from cpt_shift import (BranchingRatios, DetuningSpec, InvalidParameters, ModelParams,
                       drive_from_intensity, uniform_preset, validate)


def test_uniform_preset_has_equal_channels():
    p = uniform_preset(gamma_exc=2.0, rabi_1=0.01, rabi_2=0.01)
    b = p.branching
    assert b.gamma_31 == b.gamma_32 == b.gamma_41 == b.gamma_42 == 1.0
    assert p.branching.asymmetries() == (0.0, 0.0)


def test_uniform_preset_is_valid_without_advisories():
    rep = validate(uniform_preset(gamma_exc=2.0, rabi_1=0.01, rabi_2=0.01))
    assert rep.ok and not rep.advisories


def test_uniform_preset_propagates_hard_errors():
    with pytest.raises(InvalidParameters):
        uniform_preset(gamma_exc=2.0, gamma_opt=0.5, rabi_1=0.01, rabi_2=0.01)


@pytest.mark.parametrize("change, fragment", [
    ({"gamma_opt": 0.5}, "Gamma >= gamma/2"),
    ({"omega_34": 0.0}, "omega_34"),
    ({"gamma_12": -1e-3}, "gamma_12"),
    ({"rabi_1": 0.0, "rabi_2": 0.0}, "no drive"),
    ({"rabi_1": math.nan}, "not finite"),
    ({"branching": BranchingRatios(1.0, 0.5, 1.0, 1.0)}, "normalization"),
])
def test_validate_reports_hard_errors(change, fragment):
    p = ModelParams(omega_34=1.0, rabi_1=0.01, rabi_2=0.01).replace(**change)
    rep = validate(p)
    assert not rep.ok
    assert any(fragment in e for e in rep.errors)
    with pytest.raises(InvalidParameters):
        rep.raise_for_errors()


def test_validate_advisories_do_not_block():
    p = ModelParams(omega_34=1.0, rabi_1=0.5, rabi_2=0.01)
    rep = validate(p, DetuningSpec(0.0, 0.4))
    assert rep.ok
    assert len(rep.advisories) == 2


def test_validate_is_deterministic():
    p = ModelParams(omega_34=1.0, rabi_1=0.5, rabi_2=0.0, gamma_opt=0.2)
    assert validate(p) == validate(p)


def test_replace_keeps_uniform_decay_uniform():
    p = ModelParams(omega_34=1.0, rabi_1=0.1, rabi_2=0.1).replace(gamma_exc=1.5)
    assert p.branching == BranchingRatios.uniform(1.5)


def test_detuning_split_is_symmetric():
    d = DetuningSpec(0.2, 0.05)
    assert d.delta_1 - d.delta_2 == pytest.approx(0.2)
    assert 0.5 * (d.delta_1 + d.delta_2) == pytest.approx(0.05)


@given(st.floats(1e-6, 0.1), st.floats(1e-3, 1e3))
def test_drive_from_intensity_round_trip(x, ratio):
    r1, r2 = drive_from_intensity(x, ratio)
    assert r1 ** 2 + r2 ** 2 == pytest.approx(x, rel=1e-12)
    assert r1 ** 2 / r2 ** 2 == pytest.approx(ratio, rel=1e-12)


def test_with_drive_sets_intensity():
    p = ModelParams(omega_34=1.0, rabi_1=1.0, rabi_2=1.0, p_1=0.3).with_drive(1e-3, 4.0)
    assert p.intensity == pytest.approx(1e-3)
    assert p.rabi_1 == pytest.approx(2 * p.rabi_2)
    assert p.p_1 == 0.3


def test_swapped_is_an_involution():
    p = ModelParams(omega_34=1.0, rabi_1=0.2, rabi_2=0.1, p_1=0.3, p_2=-0.7,
                    branching=BranchingRatios(1.2, 0.8, 0.9, 1.1))
    assert p.swapped().swapped() == p
    assert p.swapped().rabi_1 == 0.1 and p.swapped().p_1 == -0.7
