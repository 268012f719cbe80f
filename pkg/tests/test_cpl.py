from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from cplstab.combinatorics import enum_P, psi
from cplstab.cpl import B_vec, Bbar_vec, CL_vec, CL_via_complement, make_vn, make_wn, normalization
from cplstab.fock import V_LAMBDA0, FockVector, parse_text, to_text
from cplstab.linalg import rank
from cplstab.weights import weight_of_CL, weight_of_wn

small_triples = st.integers(0, 6).flatmap(lambda n: st.sampled_from(enum_P(n)))


def test_counterexample_pair():
    a = CL_vec((4, 2, (2, 1)))
    b = CL_vec((6, 3, (2, 1)))
    assert to_text(a) == "1/3·h[-3]·e{0} − 1/3·h[-1]^3·e{0}"
    assert b == parse_text("h[-3]·e{0} + h[-2]·h[-1]·e{0}")
    assert a != b


def test_generators():
    assert make_wn(0) == V_LAMBDA0
    # the sign of w_n against |n; 0> is a convention, so only the line is asserted
    assert make_wn(2) in (FockVector.basis(2), -FockVector.basis(2))
    assert make_wn(1) in (FockVector.basis(1), -FockVector.basis(1))
    for n in range(9):
        assert make_wn(n).weight() == weight_of_wn(n)
    assert make_vn(4) in (FockVector.basis(-4), -FockVector.basis(-4))
    with pytest.raises(ValueError):
        make_vn(3)


def test_normalization():
    data = normalization((4, 2, (2, 1)))
    assert data.m == (0, 1, 1)
    assert data.z == data.eps
    assert normalization((6, 3, ())).m == (3, 0, 0, 0)
    assert normalization((6, 3, ())).z == Fraction(normalization((6, 3, ())).eps, 6)


@given(small_triples)
def test_cl_weight_and_routes(xi):
    v = CL_vec(xi)
    assert v
    assert v.weight() == weight_of_CL(xi)
    assert CL_via_complement(xi) == v


@given(st.integers(0, 6))
def test_bases_have_full_rank(n):
    assert rank(B_vec(xi) for xi in enum_P(n)) == 2 ** n
    assert rank(CL_vec(xi) for xi in enum_P(n)) == 2 ** n


def test_bbar_full_rank():
    for n in range(6):
        assert rank(Bbar_vec(xi) for xi in enum_P(n)) == 2 ** n


def test_invalid_triples():
    with pytest.raises(ValueError):
        CL_vec((3, 4, ()))
    with pytest.raises(ValueError):
        B_vec((4, 2, (3,)))


def test_stable_pair_agrees():
    xi = (4, 2, (1, 1))
    assert CL_vec(xi) == CL_vec(psi(xi))
