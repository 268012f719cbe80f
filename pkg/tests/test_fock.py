from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from cplstab import fock
from cplstab.combinatorics import Partition, partition_count, partitions
from cplstab.fock import (
    C, D, E0, E1, F0, F1, H, X, Y, AlgebraGen, DegreeCapExceeded, FockVector, V_LAMBDA0, V_LAMBDA1, act,
    apply_word, bracket, check_relations, parse_text, to_text,
)
from cplstab.weights import LAMBDA0, LAMBDA1, fock_weight

state_st = st.tuples(st.integers(-4, 4), st.lists(st.integers(1, 4), max_size=4).map(Partition.from_parts))
vector_st = st.lists(
    st.tuples(state_st, st.fractions(max_denominator=6).filter(lambda f: f != 0)), max_size=6,
).map(lambda items: FockVector({k: c for k, c in items}))
gen_st = st.builds(AlgebraGen, st.sampled_from("XYH"), st.integers(-3, 3))


@pytest.fixture
def python_backend():
    previous = fock.BACKEND
    fock.use_backend("python")
    yield
    fock.use_backend(previous)


def test_vacua():
    assert V_LAMBDA0.weight() == LAMBDA0
    assert V_LAMBDA1.weight() == LAMBDA1
    for g in (E0, E1):
        assert not act(g, V_LAMBDA0)
        assert not act(g, V_LAMBDA1)
    assert act(F0, V_LAMBDA0) in (FockVector.basis(2), -FockVector.basis(2))
    assert act(F1, V_LAMBDA1) in (FockVector.basis(-1), -FockVector.basis(-1))


def test_heisenberg_action():
    v = FockVector.basis(2, (1,))
    assert act(H(-2), v) == FockVector.basis(2, (2, 1))
    assert act(H(1), v) == FockVector.basis(2) * 2
    assert act(H(0), v) == v * 2
    assert act(C, v) == v
    assert act(D, v) == v * -2


def test_known_vertex_values():
    assert act(X(-1), V_LAMBDA0) == FockVector.basis(2)
    assert act(X(-2), V_LAMBDA0) == FockVector.basis(2, (1,))
    assert act(X(-3), V_LAMBDA0) == (FockVector.basis(2, (2,)) + FockVector.basis(2, (1, 1))) * Fraction(1, 2)
    assert not act(X(0), V_LAMBDA0)


@given(gen_st, gen_st)
def test_bracket_antisymmetry(a, b):
    ab = dict(bracket(a, b))
    ba = dict(bracket(b, a))
    assert {g: -c for g, c in ba.items()} == ab


def test_relations_small_grid():
    assert check_relations(3, 2, 2) == []


def test_relations_detect_a_wrong_bracket(monkeypatch):
    real = fock.bracket
    monkeypatch.setattr(fock, "bracket", lambda a, b: [] if (a.kind, b.kind) == ("X", "Y") else real(a, b))
    assert check_relations(1, 1, 1)


def test_weight_multiplicities_in_charge_zero():
    # the charge-0 states of degree d span the weight Lambda0 - d delta, of dimension p(d)
    for d in range(8):
        states = [FockVector.basis(0, mu) for mu in partitions(d)]
        assert len(states) == partition_count(d)
        assert {s.weight() for s in states} == {fock_weight(0, d)}


def test_apply_word_divided_powers():
    v = apply_word([(X(-1), 1)], V_LAMBDA0)
    assert apply_word([(X(-2), 2)], V_LAMBDA0) == apply_word([X(-2), X(-2)], V_LAMBDA0) / 2
    assert v == act(X(-1), V_LAMBDA0)
    assert apply_word([], V_LAMBDA0) == V_LAMBDA0
    with pytest.raises(ValueError):
        apply_word([(X(0), -1)], V_LAMBDA0)


@given(vector_st)
def test_text_round_trip(v):
    assert parse_text(to_text(v)) == v


@given(vector_st)
def test_json_round_trip(v):
    assert FockVector.from_json(v.to_json()) == v


def test_text_format():
    v = (FockVector.basis(0, (3,)) - FockVector.basis(0, (1, 1, 1))) * Fraction(1, 3)
    assert to_text(v) == "1/3·h[-3]·e{0} − 1/3·h[-1]^3·e{0}"
    assert to_text(FockVector()) == "0"
    with pytest.raises(ValueError):
        parse_text("h[-1]·e{")


@given(vector_st, vector_st, st.fractions(max_denominator=5))
def test_vector_space_axioms(u, v, s):
    assert u + v == v + u
    assert (u + v) * s == u * s + v * s
    assert u - u == FockVector()
    assert u + FockVector() == u


@given(vector_st, gen_st)
def test_python_and_compiled_kernels_agree(v, g):
    if fock._fockcore is None:
        pytest.skip("compiled kernel not built")
    fast = fock._fockcore.apply_ops(v.raw, [(g.kind, g.degree, 1)])
    slow = fock._pykernel.apply_ops(v.raw, [(g.kind, g.degree, 1)])
    assert fast == slow


def test_kernels_agree_on_words():
    if fock._fockcore is None:
        pytest.skip("compiled kernel not built")
    v = (FockVector.basis(1, (2, 1)) + FockVector.basis(-1, (3,)) * Fraction(2, 7)).raw
    ops = [("Y", 1, 2), ("X", -3, 3), ("H", -2, 1), ("Y", 0, 1)]
    assert fock._fockcore.apply_ops(v, ops) == fock._pykernel.apply_ops(v, ops)


def test_python_backend_runs(python_backend):
    assert fock.BACKEND == "python"
    assert act(X(-3), V_LAMBDA0) == (FockVector.basis(2, (2,)) + FockVector.basis(2, (1, 1))) * Fraction(1, 2)


def test_degree_cap(monkeypatch):
    monkeypatch.setenv("CPLSTAB_MAX_DEGREE", "3")
    act(X(-3), V_LAMBDA0)
    with pytest.raises(DegreeCapExceeded):
        act(X(-6), V_LAMBDA0)


def test_weight_requires_homogeneity():
    with pytest.raises(ValueError):
        (FockVector.basis(0) + FockVector.basis(0, (1,))).weight()
    with pytest.raises(ValueError):
        FockVector().weight()
