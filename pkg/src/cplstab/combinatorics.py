"""Partitions, boxed partitions, set partitions and the CPL index sets.

Serialization: a partition is written as its comma-separated parts
(``"2,1"``, the empty string for the empty partition) and an index triple
as ``"n:k:parts"`` (``"4:2:2,1"``).
"""
from __future__ import annotations

from functools import lru_cache
from itertools import combinations
from math import comb, factorial
from typing import Iterator, NamedTuple


class Partition(tuple):
    """A weakly decreasing tuple of positive integers."""

    __slots__ = ()

    def __new__(cls, parts=()):
        parts = tuple(parts)
        for i, p in enumerate(parts):
            if not isinstance(p, int) or isinstance(p, bool) or p <= 0:
                raise ValueError(f"partition parts must be positive integers: {parts!r}")
            if i and parts[i - 1] < p:
                raise ValueError(f"partition parts must be weakly decreasing: {parts!r}")
        return super().__new__(cls, parts)

    @classmethod
    def from_parts(cls, parts) -> "Partition":
        """Build from an unordered collection of positive parts."""
        return cls(sorted(parts, reverse=True))

    @property
    def parts(self) -> tuple:
        return tuple(self)

    def weight(self) -> int:
        return sum(self)

    def supp(self) -> int:
        return len(self)

    def mult(self, j: int) -> int:
        return self.count(j)

    def multiplicities(self) -> dict[int, int]:
        out: dict[int, int] = {}
        for p in self:
            out[p] = out.get(p, 0) + 1
        return out

    def sort_key(self):
        """Graded lexicographic key: by weight, then parts in decreasing lex order."""
        return (sum(self), tuple(-p for p in self))

    def __repr__(self):
        return f"Partition({tuple(self)!r})"

    def __str__(self):
        return format_partition(self)


EMPTY = Partition()


def format_partition(lam) -> str:
    return ",".join(str(p) for p in lam)


def parse_partition(text: str) -> Partition:
    text = text.strip()
    if not text or text in {"()", "∅"}:
        return EMPTY
    try:
        parts = [int(tok) for tok in text.strip("()").split(",") if tok.strip()]
    except ValueError as exc:
        raise ValueError(f"malformed partition {text!r}") from exc
    return Partition(parts)


def partitions(d: int, max_part: int | None = None, max_len: int | None = None) -> Iterator[Partition]:
    """All partitions of ``d`` with bounded largest part and length, in decreasing lex order."""
    if max_part is None:
        max_part = d
    if max_len is None:
        max_len = d

    def rec(rem, cap, slots, prefix):
        if rem == 0:
            yield Partition(prefix)
            return
        if slots == 0:
            return
        for p in range(min(rem, cap), 0, -1):
            if p * slots < rem:
                break
            prefix.append(p)
            yield from rec(rem - p, p, slots - 1, prefix)
            prefix.pop()

    if d < 0:
        return
    yield from rec(d, max_part, max_len, [])


@lru_cache(maxsize=None)
def partition_count(d: int) -> int:
    """p(d) via Euler's pentagonal recurrence."""
    if d < 0:
        return 0
    p = [1] + [0] * d
    for n in range(1, d + 1):
        total, k = 0, 1
        while True:
            g1 = k * (3 * k - 1) // 2
            if g1 > n:
                break
            sign = 1 if k % 2 else -1
            total += sign * p[n - g1]
            g2 = k * (3 * k + 1) // 2
            if g2 <= n:
                total += sign * p[n - g2]
            k += 1
        p[n] = total
    return p[d]


def partitions_in_box(a: int, b: int) -> list[Partition]:
    """The partitions with at most ``a`` parts, each at most ``b``; graded lex order."""
    if a < 0 or b < 0:
        raise ValueError("box dimensions must be non-negative")
    out = []
    for d in range(a * b + 1):
        out.extend(partitions(d, max_part=b, max_len=a))
    return out


class SetPartition(tuple):
    """Unordered set partition of {1..r}, stored canonically.

    Blocks are sorted ascending internally and ordered by decreasing size,
    ties broken by smallest element.
    """

    __slots__ = ()

    def __new__(cls, blocks):
        canon = [tuple(sorted(b)) for b in blocks]
        if any(not b for b in canon):
            raise ValueError("blocks must be nonempty")
        canon.sort(key=lambda b: (-len(b), b[0]))
        flat = sorted(x for b in canon for x in b)
        if flat != list(range(1, len(flat) + 1)):
            raise ValueError(f"blocks do not partition [r]: {blocks!r}")
        return super().__new__(cls, canon)

    @property
    def blocks(self) -> tuple:
        return tuple(self)

    @property
    def r(self) -> int:
        return sum(len(b) for b in self)

    def type(self) -> Partition:
        return Partition(len(b) for b in self)

    def __repr__(self):
        inner = ", ".join("{" + ",".join(map(str, b)) + "}" for b in self)
        return "{" + inner + "}"


def set_partitions_of_type(r: int, pi) -> list[SetPartition]:
    pi = Partition(pi)
    if pi.weight() != r:
        raise ValueError(f"|pi| = {pi.weight()} does not match r = {r}")
    return [SetPartition(bs) for bs in _set_partitions_cached(r, tuple(pi))]


@lru_cache(maxsize=None)
def _set_partitions_cached(r: int, pi: tuple) -> tuple:
    out = []

    # the block holding the smallest unplaced element fixes one block per step
    def rec(remaining: tuple, sizes: dict, acc: list):
        if not remaining:
            out.append(tuple(acc))
            return
        first, rest = remaining[0], remaining[1:]
        for s in sorted(sizes, reverse=True):
            sizes[s] -= 1
            if sizes[s] == 0:
                del sizes[s]
            for others in combinations(rest, s - 1):
                block = (first,) + others
                left = tuple(x for x in rest if x not in others)
                acc.append(block)
                rec(left, sizes, acc)
                acc.pop()
            sizes[s] = sizes.get(s, 0) + 1

    sizes: dict[int, int] = {}
    for p in pi:
        sizes[p] = sizes.get(p, 0) + 1
    rec(tuple(range(1, r + 1)), sizes, [])
    canon = sorted((tuple(SetPartition(bs)) for bs in out))
    return tuple(canon)


def set_partition_count(r: int, pi) -> int:
    """r! / (prod pi_i! * prod_j mult_j(pi)!)."""
    pi = Partition(pi)
    denom = 1
    for p in pi:
        denom *= factorial(p)
    for m in pi.multiplicities().values():
        denom *= factorial(m)
    return factorial(r) // denom


class IndexTriple(NamedTuple):
    """xi = (n, k, lam) indexing a CPL basis vector of W(n)."""

    n: int
    k: int
    lam: Partition

    @classmethod
    def make(cls, n: int, k: int, lam=()) -> "IndexTriple":
        return cls(n, k, Partition(lam))

    def is_valid(self) -> bool:
        n, k, lam = self
        return n >= k >= 0 and lam.supp() <= n - k and (not lam or lam[0] <= k)

    @property
    def m0(self) -> int:
        return self.n - self.k - self.lam.supp()

    def __str__(self):
        return format_triple(self)


def require_valid(xi) -> IndexTriple:
    if not isinstance(xi, IndexTriple):
        n, k, lam = xi
        xi = IndexTriple(n, k, Partition(lam))
    if not xi.is_valid():
        raise ValueError(f"{format_triple(xi)} is not a valid index triple")
    return xi


def format_triple(xi) -> str:
    n, k, lam = xi
    return f"{n}:{k}:{format_partition(lam)}"


def parse_triple(text: str) -> IndexTriple:
    pieces = text.strip().split(":")
    if len(pieces) != 3:
        raise ValueError(f"malformed index triple {text!r}; expected n:k:parts")
    try:
        n, k = int(pieces[0]), int(pieces[1])
    except ValueError as exc:
        raise ValueError(f"malformed index triple {text!r}") from exc
    return require_valid(IndexTriple(n, k, parse_partition(pieces[2])))


def complement(xi) -> IndexTriple:
    n, k, lam = require_valid(xi)
    s = lam.supp()
    parts = [k] * (n - k - s) + [k - lam[i] for i in range(s - 1, -1, -1)]
    return IndexTriple(n, k, Partition(p for p in parts if p > 0))


def psi(xi) -> IndexTriple:
    n, k, lam = require_valid(xi)
    return IndexTriple(n + 2, k + 1, lam)


def is_stable(xi) -> bool:
    n, k, lam = require_valid(xi)
    bound = min(n - k, k) if n % 2 == 0 else min(n - k, k - 1)
    return lam.weight() <= bound


def enum_P(n: int) -> list[IndexTriple]:
    return [IndexTriple(n, k, lam) for k in range(n + 1) for lam in partitions_in_box(n - k, k)]


def enum_P_stab(n: int) -> list[IndexTriple]:
    return [xi for xi in enum_P(n) if is_stable(xi)]


def enum_P_mu(j: int, d: int, n: int) -> list[IndexTriple]:
    """Triples in P(n) whose CL vector has weight t_{j alpha1}(Lambda0) - d delta."""
    if n % 2:
        raise ValueError("enum_P_mu needs even n")
    k = j + n // 2
    if not 0 <= k <= n:
        return []
    return [IndexTriple(n, k, lam) for lam in partitions(d, max_part=k, max_len=n - k)]


def box_count(a: int, b: int) -> int:
    return comb(a + b, a)
