from fractions import Fraction

import pytest
from hypothesis import assume, given, strategies as st

from cplstab.combinatorics import Partition, partitions
from cplstab.fock import H, V_LAMBDA0, apply_word
from cplstab.straighten import (
    H_lambda, H_pq, H_pq_naive, HeisenbergPoly, HypothesisViolation, W_monomial, c2_rhs, coeff_C,
    coeff_C_recursive, coeff_Cprime, f_lambda, hypothesis_witness, straighten_yx, yx_word,
)

partition_st = st.integers(0, 8).flatmap(lambda d: st.sampled_from(list(partitions(d))))


def valid_pq(max_r: int):
    @st.composite
    def build(draw):
        r = draw(st.integers(1, max_r))
        base = draw(st.integers(r, r + 3))
        q = tuple(base + draw(st.integers(0, 1)) for _ in range(r))
        p = tuple(max(0, base - draw(st.integers(1, 3))) for _ in range(r))
        assume(hypothesis_witness(p, q) is None)
        return p, q
    return build()


def test_coefficients():
    assert [coeff_C((k,)) for k in range(1, 5)] == [1, 2, 12, 144]
    assert coeff_C((2, 2, 1)) == 4
    assert coeff_Cprime((3, 2)) == 2
    assert coeff_C(()) == coeff_Cprime(()) == 1


@given(partition_st)
def test_coeff_C_recursion(pi):
    assert coeff_C_recursive(pi) == coeff_C(pi)


@given(valid_pq(4))
def test_collapsed_sum_matches_naive(case):
    p, q = case
    for pi in partitions(len(p)):
        assert H_pq(pi, p, q) == H_pq_naive(pi, p, q)


def test_hypothesis_witness():
    assert hypothesis_witness((0,), (1,)) is None
    assert "hypothesis (1)" in hypothesis_witness((2,), (1,))
    assert "hypothesis (2)" in hypothesis_witness((0, 0), (1, 1))
    assert hypothesis_witness((), ()) is not None
    with pytest.raises(HypothesisViolation):
        straighten_yx((0, 0), (1, 1))


def test_W_monomial_rejects_non_negative_blocks():
    assert W_monomial([(1,)], (1,), (0,), (2,)) == HeisenbergPoly.var(2)
    with pytest.raises(HypothesisViolation):
        W_monomial([(1,)], (1,), (3,), (2,))


@given(valid_pq(3))
def test_straightening_matches_direct_action(case):
    p, q = case
    direct = apply_word(yx_word(p, q), V_LAMBDA0)
    assert straighten_yx(p, q).act_on(V_LAMBDA0) == direct


def test_single_pair():
    # y t^p x t^{-q} v0 = -h t^{p-q} v0 for p < q
    assert straighten_yx((1,), (3,)) == HeisenbergPoly.var(2) * -1


def test_f_lambda_values():
    h = HeisenbergPoly.var
    assert f_lambda(()) == HeisenbergPoly.one()
    assert f_lambda((1,)) == h(1) * -1
    assert f_lambda((2, 1)) == h(3) + h(2) * h(1)
    assert f_lambda((1, 1)) == (h(1) * h(1) + h(2)) * Fraction(1, 2)


def test_H_lambda_and_c2_rhs():
    assert H_lambda((2,), (2, 1)) == HeisenbergPoly.var(3)
    assert c2_rhs((1, 1)) == f_lambda((1, 1)) * 2
    with pytest.raises(ValueError):
        H_lambda((1,), (2, 1))


@given(partition_st)
def test_f_lambda_is_homogeneous(lam):
    poly = f_lambda(lam)
    assert poly.is_homogeneous()
    assert poly.degrees() <= {sum(lam)}


@given(partition_st)
def test_poly_round_trips(lam):
    poly = f_lambda(lam)
    assert HeisenbergPoly.parse(poly.to_text()) == poly
    assert HeisenbergPoly.from_json(poly.to_json()) == poly


def test_poly_arithmetic():
    h = HeisenbergPoly.var
    assert h(1) * h(2) == h(2) * h(1)
    assert (h(1) + h(2)) - h(2) == h(1)
    assert not (h(1) - h(1))
    assert (h(2) * h(1)).act_on(V_LAMBDA0) == apply_word([H(-2), H(-1)], V_LAMBDA0)

