from math import comb

import pytest
from hypothesis import given, strategies as st

from cplstab.combinatorics import (
    IndexTriple, Partition, SetPartition, complement, enum_P, enum_P_mu, enum_P_stab, format_triple,
    is_stable, parse_partition, parse_triple, partition_count, partitions, partitions_in_box, psi,
    set_partition_count, set_partitions_of_type,
)

partition_st = st.lists(st.integers(1, 6), max_size=6).map(Partition.from_parts)


def test_partition_rejects_bad_parts():
    with pytest.raises(ValueError):
        Partition((1, 2))
    with pytest.raises(ValueError):
        Partition((2, 0))


def test_partition_counts_match_enumeration():
    assert [partition_count(d) for d in range(10)] == [1, 1, 2, 3, 5, 7, 11, 15, 22, 30]
    for d in range(12):
        assert len(list(partitions(d))) == partition_count(d)
    assert partition_count(100) == 190569292


def test_partitions_are_graded_lex():
    assert list(partitions(4)) == [(4,), (3, 1), (2, 2), (2, 1, 1), (1, 1, 1, 1)]


@given(st.integers(0, 5), st.integers(0, 5))
def test_box_count(a, b):
    box = partitions_in_box(a, b)
    assert len(box) == comb(a + b, a)
    assert len(set(box)) == len(box)
    assert all(len(lam) <= a and (not lam or lam[0] <= b) for lam in box)


@given(partition_st)
def test_partition_text_round_trip(lam):
    assert parse_partition(str(lam)) == lam


def test_parse_partition_errors():
    with pytest.raises(ValueError):
        parse_partition("2,x")
    with pytest.raises(ValueError):
        parse_partition("1,2")


def test_set_partitions_of_type():
    blocks = set_partitions_of_type(4, (2, 2))
    assert len(blocks) == 3
    assert SetPartition([{1, 2}, {3, 4}]) in blocks
    assert set_partitions_of_type(3, (2, 1))[0].type() == Partition((2, 1))
    with pytest.raises(ValueError):
        set_partitions_of_type(3, (2, 2))


@given(st.integers(1, 7).flatmap(lambda r: st.tuples(st.just(r), st.sampled_from(list(partitions(r))))))
def test_set_partition_count_formula(case):
    r, pi = case
    found = set_partitions_of_type(r, pi)
    assert len(found) == set_partition_count(r, pi)
    assert len(set(found)) == len(found)
    assert all(b.type() == pi and b.r == r for b in found)


def test_dim_is_power_of_two():
    for n in range(9):
        assert len(enum_P(n)) == 2 ** n


def test_triple_parsing():
    xi = parse_triple("4:2:2,1")
    assert xi == IndexTriple(4, 2, Partition((2, 1)))
    assert format_triple(xi) == "4:2:2,1"
    assert parse_triple("3:3:") == IndexTriple(3, 3, Partition())
    for bad in ("4:2", "4:5:", "4:2:3", "4:1:1,1,1,1", "a:b:"):
        with pytest.raises(ValueError):
            parse_triple(bad)


@given(st.integers(0, 8).flatmap(lambda n: st.sampled_from(enum_P(n))))
def test_complement_is_involution(xi):
    c = complement(xi)
    assert c.is_valid()
    assert complement(c) == xi
    n, k, lam = xi
    assert lam.weight() + c.lam.weight() == k * (n - k)


def test_stability_and_psi():
    assert is_stable((4, 2, (1,)))
    assert not is_stable((4, 2, (2, 1)))
    assert is_stable((6, 3, (2, 1)))
    assert not is_stable((5, 2, (2,)))  # odd n uses min(n-k, k-1)
    for n in range(9):
        for xi in enum_P_stab(n):
            assert is_stable(psi(xi))


def test_enum_P_mu():
    assert [x.lam for x in enum_P_mu(0, 2, 4)] == [(2,), (1, 1)]
    assert enum_P_mu(5, 0, 4) == []
    with pytest.raises(ValueError):
        enum_P_mu(0, 0, 3)
