import pytest

from cplstab.combinatorics import partition_count
from cplstab.cpl import CL_vec
from cplstab.limit import basis_up_to, check_stability, stable_basis_at, weights_up_to
from cplstab.linalg import in_span, is_independent, rank
from cplstab.fock import FockVector
from cplstab.weights import translate, LAMBDA0, DELTA


def test_stability_small_n():
    for n in range(9):
        report = check_stability(n)
        assert report.ok, report.violations
        assert report.checked > 0 or n == 0
    with pytest.raises(ValueError):
        check_stability(-1)


def test_stable_basis_entry():
    entry = stable_basis_at(1, 2)
    assert entry.chosen_n == 6
    assert len(entry.vectors) == partition_count(2)
    assert entry.mu == translate(LAMBDA0, 1) - DELTA * 2
    data = entry.to_json()
    assert data["n"] == 6 and len(data["vectors"]) == 2
    for (xi, v), item in zip(entry.vectors, data["vectors"]):
        assert FockVector.from_json(item["vector"]) == v == CL_vec(xi)


def test_odd_sector_smoke():
    for e in basis_up_to(3, odd=True):
        assert len(e.vectors) == partition_count(e.d)
        assert is_independent([v for _, v in e.vectors])


def test_weights_up_to():
    assert set(weights_up_to(1)) == {(0, 0), (0, 1), (1, 0), (-1, 0)}


def test_linalg():
    a, b = FockVector.basis(0, (1,)), FockVector.basis(0, (2,))
    assert rank([a, b, a + b]) == 2
    assert is_independent([a, b])
    assert not is_independent([a, a * 3])
    assert in_span(a - b, [a, b])
    assert not in_span(FockVector.basis(2), [a, b])
    assert rank([]) == 0
