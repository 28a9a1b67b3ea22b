import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from minlen_hydrogen.units import (
    CONSTANTS,
    DeformationParams,
    Representation,
    minimal_length,
    momentum_rep_coefficient,
    representation,
    require_factorizable,
)

small = st.floats(min_value=0.0, max_value=1.0, allow_nan=False)


@pytest.mark.parametrize("system", [CONSTANTS.atomic, CONSTANTS.si])
def test_bohr_and_hartree_relations(system):
    assert system.bohr_radius == pytest.approx(system.hbar**2 / (system.mass_e * system.alpha_strength), rel=1e-12)
    assert system.hartree == pytest.approx(system.mass_e * system.alpha_strength**2 / system.hbar**2, rel=1e-12)


def test_si_values_match_codata_table():
    # Derived SI scales agree with the directly tabulated CODATA numbers.
    assert CONSTANTS.si.bohr_radius * 1e15 == pytest.approx(CONSTANTS.bohr_radius_fm, rel=1e-12)
    assert CONSTANTS.si.hartree == pytest.approx(4.3597447222071e-18, rel=1e-9)
    hartree_mhz = CONSTANTS.si.hartree / CONSTANTS.si.planck_h / 1e6
    assert hartree_mhz == pytest.approx(CONSTANTS.hartree_over_h_mhz, rel=1e-9)


def test_atomic_units_are_unity():
    au = CONSTANTS.atomic
    assert (au.hbar, au.mass_e, au.alpha_strength) == (1.0, 1.0, 1.0)
    assert au.bohr_radius == 1.0 and au.hartree == 1.0


@given(st.floats(min_value=-1e3, max_value=1e3, allow_nan=False, allow_subnormal=False).filter(lambda e: e == 0 or abs(e) > 1e-250))
def test_energy_round_trip(e):
    back = CONSTANTS.energy_si_to_au(CONSTANTS.energy_au_to_si(e))
    assert back == pytest.approx(e, rel=1e-12, abs=0.0)


def test_minimal_length_examples():
    assert minimal_length(DeformationParams(0.0, 0.0)).au == 0.0
    ml = minimal_length(DeformationParams(1e-6, 2e-6))
    assert ml.au == pytest.approx(math.sqrt(5e-6), rel=1e-14)
    assert ml.au == pytest.approx(2.23607e-3, rel=1e-5)
    assert ml.fm == pytest.approx(118.3, rel=1e-3)


@given(small)
def test_minimal_length_factorizable_is_sqrt_5beta(beta):
    assert minimal_length(DeformationParams.factorizable(beta)).au == pytest.approx(math.sqrt(5 * beta), rel=1e-14)


@given(small, small, st.floats(min_value=1e-9, max_value=1.0))
def test_minimal_length_monotone(beta, beta_prime, bump):
    base = minimal_length(DeformationParams(beta, beta_prime)).au
    assert minimal_length(DeformationParams(beta + bump, beta_prime)).au > base
    assert minimal_length(DeformationParams(beta, beta_prime + bump)).au > base


@pytest.mark.parametrize("bad", [(-1e-9, 0.0), (0.0, -1.0), (float("nan"), 0.0)])
def test_deformation_params_reject_invalid(bad):
    with pytest.raises(ValueError):
        DeformationParams(*bad)


def test_factorizable_constructor_enforced():
    assert require_factorizable(DeformationParams.factorizable(3e-5)) == 3e-5
    with pytest.raises(ValueError):
        require_factorizable(DeformationParams(1e-5, 1e-5))


def test_brau_undeformed():
    spec = representation("Brau", DeformationParams(0.0, 0.0))
    assert momentum_rep_coefficient(spec, 3.0) == 3.0


def test_akhoury_yao_momentum_is_identity():
    spec = representation(Representation.AKHOURY_YAO, DeformationParams(0.3, 0.1))
    assert momentum_rep_coefficient(spec, 1.7) == 1.7
    assert spec.gamma == 0.0
    assert spec.position_coefficient("p") == 0.0
    assert spec.position_coefficient("p2_x") == 0.3
    assert spec.position_coefficient("pp_x") == 0.1


@given(st.floats(min_value=0.0, max_value=1e-2), st.lists(st.floats(min_value=-50, max_value=50), min_size=1, max_size=20))
def test_stetsko_equals_brau_at_beta_prime_2beta(beta, ps):
    params = DeformationParams.factorizable(beta)
    p = np.array(ps)
    brau = momentum_rep_coefficient(representation("Brau", params), p)
    st_ = momentum_rep_coefficient(representation("StetskoTkachuk", params), p)
    np.testing.assert_array_equal(brau, st_)


@given(st.floats(min_value=0.0, max_value=1.0))
def test_stetsko_position_correction_vanishes(beta):
    spec = representation("StetskoTkachuk", DeformationParams.factorizable(beta))
    assert spec.position_coefficient("p2x_xp2") == 0.0
    assert spec.position_coefficient("x") == 1.0


def test_stetsko_position_correction_general():
    spec = representation("StetskoTkachuk", DeformationParams(0.4, 0.2))
    assert spec.position_coefficient("p2x_xp2") == pytest.approx((2 * 0.4 - 0.2) / 4)
