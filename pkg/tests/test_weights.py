from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from cplstab.weights import (
    ALPHA0, ALPHA1, DELTA, LAMBDA0, LAMBDA1, AffineWeight, form, format_weight, parse_weight, reflect, sigma,
    translate, weight_of_CL, weight_of_wn,
)

weights = st.builds(AffineWeight, st.integers(-3, 3), st.integers(-6, 6),
                    st.builds(Fraction, st.integers(-80, 80), st.sampled_from([1, 2, 4])))
halves = st.integers(-6, 6).map(lambda k: Fraction(k, 2))


def test_basic_pairings():
    assert form(ALPHA1, ALPHA1) == 2
    assert form(ALPHA0, ALPHA0) == 2
    assert form(ALPHA0 + ALPHA1, ALPHA1) == 0  # delta is isotropic and orthogonal to alpha1
    assert form(LAMBDA0, DELTA) == 1
    assert LAMBDA1.pair_h() == 1 and LAMBDA1.pair_c() == 1


@given(weights, halves, halves)
def test_translations_compose(mu, p, q):
    assert translate(translate(mu, p), q) == translate(mu, p + q)


@given(weights, halves)
def test_translation_is_isometry(mu, p):
    assert form(translate(mu, p), translate(mu, p)) == form(mu, mu)


@given(weights)
def test_reflections_and_sigma(mu):
    for i in (0, 1):
        assert reflect(reflect(mu, i), i) == mu
        assert form(reflect(mu, i), reflect(mu, i)) == form(mu, mu)
    assert sigma(sigma(mu)) == mu


def test_sigma_swaps_fundamental_weights_up_to_delta():
    s = sigma(LAMBDA0)
    assert (s.cL, s.cw) == (LAMBDA1.cL, LAMBDA1.cw)


def test_wn_and_cl_weights():
    assert weight_of_wn(0) == LAMBDA0
    assert weight_of_wn(4) == AffineWeight(1, 4, -4)
    assert weight_of_CL((4, 2, (2, 1))) == AffineWeight(1, 0, -3)
    with pytest.raises(ValueError):
        weight_of_wn(-1)
    with pytest.raises(ValueError):
        translate(LAMBDA0, Fraction(1, 3))


@given(weights)
def test_weight_text_and_json_round_trip(mu):
    assert parse_weight(format_weight(mu)) == mu
    assert AffineWeight.from_json(mu.to_json()) == mu


def test_scaling_stays_on_lattice():
    assert ALPHA1 * Fraction(1, 2) == AffineWeight(0, 1, 0)
    with pytest.raises(ValueError):
        LAMBDA0 * Fraction(1, 2)
