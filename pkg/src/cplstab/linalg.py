"""Exact rank and span membership for Fock vectors over the rationals."""
from __future__ import annotations

import heapq
from fractions import Fraction
from typing import Iterable

from .fock import FockVector


class _Echelon:
    """Incrementally reduced row echelon basis of sparse rational rows."""

    def __init__(self):
        self.pivots: dict = {}  # pivot key -> row with coefficient 1 at the pivot

    def reduce(self, row: dict) -> dict:
        row = dict(row)
        # eliminating a pivot only introduces keys later in the order, so a heap
        # visits every key that may still need clearing
        heap = [(_order(k), k) for k in row if k in self.pivots]
        heapq.heapify(heap)
        seen = set()
        while heap:
            _, key = heapq.heappop(heap)
            if key in seen:
                continue
            seen.add(key)
            c = row.get(key)
            if not c:
                continue
            for k2, v2 in self.pivots[key].items():
                nv = row.get(k2, 0) - c * v2
                if nv:
                    row[k2] = nv
                else:
                    row.pop(k2, None)
                if k2 != key and k2 in self.pivots and k2 not in seen:
                    heapq.heappush(heap, (_order(k2), k2))
        return row

    def add(self, row: dict) -> bool:
        """Insert a row; return True when it was independent of the basis so far."""
        row = self.reduce(row)
        if not row:
            return False
        key = min(row, key=_order)
        inv = 1 / Fraction(row[key])
        self.pivots[key] = {k: v * inv for k, v in row.items()}
        return True

    @property
    def rank(self) -> int:
        return len(self.pivots)


def _order(key):
    charge, parts = key
    return (charge, sum(parts), tuple(-p for p in parts))


def rank(vectors: Iterable[FockVector]) -> int:
    """Exact rank; homogeneous families are split by weight since weight spaces are independent."""
    vectors = [v for v in vectors if v]
    if all(v.is_homogeneous() for v in vectors):
        groups: dict = {}
        for v in vectors:
            groups.setdefault(v.weight(), []).append(v)
    else:
        groups = {None: vectors}
    total = 0
    for vs in groups.values():
        ech = _Echelon()
        for v in vs:
            ech.add(v.raw)
        total += ech.rank
    return total


def is_independent(vectors) -> bool:
    vectors = list(vectors)
    return rank(vectors) == len(vectors)


def in_span(v: FockVector, vectors: Iterable[FockVector]) -> bool:
    ech = _Echelon()
    for w in vectors:
        ech.add(w.raw)
    return not ech.reduce(v.raw)
