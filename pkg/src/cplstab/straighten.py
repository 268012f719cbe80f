"""Straightening of (prod y t^{p_i})(prod x t^{-q_j}) v_Lambda0 into Heisenberg polynomials.

All results are :class:`HeisenbergPoly` values: polynomials with exact
rational coefficients in the commuting creation operators H[-1], H[-2], ...
"""
from __future__ import annotations

import json
from fractions import Fraction
from itertools import permutations
from math import factorial

from . import fock
from .combinatorics import Partition, partitions, set_partitions_of_type
from .fock import FockVector, format_terms, parse_factors


class HypothesisViolation(ValueError):
    """Raised when (p, q) does not meet the straightening hypotheses."""


class HeisenbergPoly:
    """Polynomial in H[-1], H[-2], ...; monomials are partitions."""

    __slots__ = ("_terms",)

    def __init__(self, terms=None):
        raw: dict = {}
        if terms:
            items = terms.items() if isinstance(terms, dict) else terms
            for mono, c in items:
                mono = tuple(Partition.from_parts(mono))
                c = Fraction(c)
                raw[mono] = raw.get(mono, 0) + c
        self._terms = {k: v for k, v in raw.items() if v}

    @classmethod
    def one(cls) -> "HeisenbergPoly":
        return cls({(): 1})

    @classmethod
    def var(cls, k: int) -> "HeisenbergPoly":
        """The variable H[-k], k > 0."""
        if k <= 0:
            raise ValueError("creation variables are H[-k] with k > 0")
        return cls({(k,): 1})

    @property
    def raw(self) -> dict:
        return self._terms

    def terms(self) -> list[tuple[Partition, Fraction]]:
        return [(Partition(m), c) for m, c in
                sorted(self._terms.items(), key=lambda kv: (sum(kv[0]), tuple(-p for p in kv[0])))]

    def __eq__(self, other):
        if isinstance(other, HeisenbergPoly):
            return self._terms == other._terms
        return NotImplemented

    def __hash__(self):
        return hash(frozenset(self._terms.items()))

    def __bool__(self):
        return bool(self._terms)

    def __add__(self, other: "HeisenbergPoly") -> "HeisenbergPoly":
        out = dict(self._terms)
        for k, c in other._terms.items():
            out[k] = out.get(k, 0) + c
        return HeisenbergPoly._from_raw(out)

    def __sub__(self, other: "HeisenbergPoly") -> "HeisenbergPoly":
        return self + other * -1

    def __mul__(self, other) -> "HeisenbergPoly":
        if isinstance(other, HeisenbergPoly):
            out: dict = {}
            for a, ca in self._terms.items():
                for b, cb in other._terms.items():
                    k = tuple(sorted(a + b, reverse=True))
                    out[k] = out.get(k, 0) + ca * cb
            return HeisenbergPoly._from_raw(out)
        s = Fraction(other)
        return HeisenbergPoly._from_raw({k: c * s for k, c in self._terms.items()})

    __rmul__ = __mul__

    @classmethod
    def _from_raw(cls, raw: dict) -> "HeisenbergPoly":
        p = cls.__new__(cls)
        p._terms = {k: Fraction(v) for k, v in raw.items() if v}
        return p

    def degrees(self) -> set[int]:
        return {sum(m) for m in self._terms}

    def is_homogeneous(self) -> bool:
        return len(self.degrees()) <= 1

    def act_on(self, v: FockVector) -> FockVector:
        """Apply the polynomial as a product of h t^{-k} actions."""
        out = FockVector()
        for mono, c in self._terms.items():
            word = [fock.H(-k) for k in mono]
            out = out + fock.apply_word(word, v) * c
        return out

    def to_text(self) -> str:
        return format_terms((m, c, None) for m, c in self.terms())

    def __str__(self):
        return self.to_text()

    def __repr__(self):
        return f"HeisenbergPoly({self.to_text()})"

    def to_json(self) -> dict:
        return {"terms": [{"mu": list(m), "coeff": str(c)} for m, c in self.terms()]}

    @classmethod
    def from_json(cls, data) -> "HeisenbergPoly":
        if isinstance(data, str):
            data = json.loads(data)
        return cls((tuple(t["mu"]), Fraction(t["coeff"])) for t in data["terms"])

    @classmethod
    def parse(cls, text: str) -> "HeisenbergPoly":
        terms = []
        for sign, body in fock._split_terms(text):
            c, mu, charge = parse_factors(body)
            if charge is not None:
                raise ValueError("Heisenberg polynomials carry no charge factor")
            terms.append((tuple(mu), sign * c))
        return cls(terms)


def coeff_C(pi) -> int:
    out = 1
    for p in Partition(pi):
        out *= factorial(p) * factorial(p - 1)
    return out


def coeff_Cprime(pi) -> int:
    out = 1
    for p in Partition(pi):
        out *= factorial(p - 1)
    return out


def coeff_C_recursive(pi) -> int:
    """C(pi) from the two-case recursion on the last part (pi_s = 1 or pi_s >= 2)."""
    pi = Partition(pi)
    if not pi:
        return 1
    last = pi[-1]
    if last == 1:
        return coeff_C_recursive(pi[:-1])
    shorter = Partition(pi[:-1] + (last - 1,))
    return (last * (last - 1) // 2) * 2 * coeff_C_recursive(shorter)


def W_monomial(B, sigma, p, q) -> HeisenbergPoly:
    """prod_j H[sum_{i in B_j} (p_i - q_{sigma(i)})]; indices are 1-based in B and sigma."""
    r = len(p)
    if len(q) != r or len(sigma) != r:
        raise ValueError("p, q and sigma must have the same length")
    mono = []
    for block in B:
        s = sum(p[i - 1] - q[sigma[i - 1] - 1] for i in block)
        if s >= 0:
            raise HypothesisViolation(
                f"hypothesis (1) violated: block {sorted(block)} has non-negative sum {s}")
        mono.append(-s)
    return HeisenbergPoly({tuple(mono): 1})


def _distributions(sizes, counts: dict):
    """Ways to deal a multiset (value -> count) into blocks of the given sizes.

    Yields (per-block value sums, number of index assignments realising it).
    """
    values = sorted(counts)
    total = {v: factorial(c) for v, c in counts.items()}
    base = 1
    for v in values:
        base *= total[v]

    def fill(j, remaining, sums, weight):
        if j == len(sizes):
            yield tuple(sums), base // weight
            return
        yield from choose(j, 0, sizes[j], remaining, 0, 1, sums, weight)

    def choose(j, vi, need, remaining, acc, w, sums, weight):
        if need == 0:
            sums.append(acc)
            yield from fill(j + 1, remaining, sums, weight * w)
            sums.pop()
            return
        if vi == len(values):
            return
        v = values[vi]
        have = remaining.get(v, 0)
        for take in range(min(have, need), -1, -1):
            remaining[v] = have - take
            yield from choose(j, vi + 1, need - take, remaining, acc + take * v, w * factorial(take), sums, weight)
        remaining[v] = have

    yield from fill(0, dict(counts), [], 1)


def H_pq(pi, p, q) -> HeisenbergPoly:
    """(1/prod pi_i!) sum over set partitions B of type pi and sigma in S_r of W(B, sigma; p, q).

    The sigma-sum is collapsed by counting assignments of equal q-values.
    """
    pi = Partition(pi)
    r = len(p)
    if len(q) != r:
        raise ValueError("p and q must have the same length")
    counts: dict = {}
    for v in q:
        counts[v] = counts.get(v, 0) + 1
    out: dict = {}
    for B in set_partitions_of_type(r, pi):
        psums = [sum(p[i - 1] for i in block) for block in B]
        sizes = [len(block) for block in B]
        for qsums, mult in _distributions(sizes, counts):
            mono = []
            for ps, qs, block in zip(psums, qsums, B):
                s = ps - qs
                if s >= 0:
                    raise HypothesisViolation(
                        f"hypothesis (1) violated: block {list(block)} has non-negative sum {s}")
                mono.append(-s)
            key = tuple(sorted(mono, reverse=True))
            out[key] = out.get(key, 0) + mult
    return HeisenbergPoly._from_raw(out)


def H_pq_naive(pi, p, q) -> HeisenbergPoly:
    """Reference double sum over set partitions and all of S_r."""
    pi = Partition(pi)
    r = len(p)
    out = HeisenbergPoly()
    for B in set_partitions_of_type(r, pi):
        for sigma in permutations(range(1, r + 1)):
            out = out + W_monomial(B, sigma, p, q)
    denom = 1
    for part in pi:
        denom *= factorial(part)
    return out * Fraction(1, denom)


def hypothesis_witness(p, q):
    """Return None if (p, q) meets hypotheses (1)-(2), else a description of a witness."""
    r = len(p)
    if len(q) != r or r == 0:
        return "p and q must be nonempty and of equal length"
    for i, pi_ in enumerate(p, 1):
        for j, qj in enumerate(q, 1):
            if pi_ >= qj:
                return f"hypothesis (1): p_{i}={pi_} >= q_{j}={qj}"
    p_order = sorted(range(r), key=lambda i: p[i])
    q_order = sorted(range(r), key=lambda j: -q[j])
    for s in range(1, r + 1):
        A = p_order[:s]
        Bq = q_order[:s - 1]
        if sum(p[i] for i in A) < sum(q[j] for j in Bq):
            return (f"hypothesis (2): A={sorted(i + 1 for i in A)}, B={sorted(j + 1 for j in Bq)} "
                    f"give {sum(p[i] for i in A)} < {sum(q[j] for j in Bq)}")
    return None


def straighten_yx(p, q) -> HeisenbergPoly:
    """Polynomial f with (prod y t^{p_i})(prod x t^{-q_j}) v_Lambda0 = f v_Lambda0."""
    p, q = tuple(p), tuple(q)
    witness = hypothesis_witness(p, q)
    if witness:
        raise HypothesisViolation(witness)
    r = len(p)
    out = HeisenbergPoly()
    for pi in partitions(r):
        out = out + H_pq(pi, p, q) * coeff_C(pi)
    return out * (-1) ** r


def H_lambda(pi, lam) -> HeisenbergPoly:
    pi, lam = Partition(pi), Partition(lam)
    if pi.weight() != lam.supp():
        raise ValueError(f"|pi| = {pi.weight()} must equal supp(lam) = {lam.supp()}")
    out: dict = {}
    for B in set_partitions_of_type(lam.supp(), pi):
        key = tuple(sorted((sum(lam[j - 1] for j in block) for block in B), reverse=True))
        out[key] = out.get(key, 0) + 1
    return HeisenbergPoly._from_raw(out)


def f_lambda(lam) -> HeisenbergPoly:
    lam = Partition(lam)
    r = lam.supp()
    if r == 0:
        return HeisenbergPoly.one()
    denom = 1
    for m in lam.multiplicities().values():
        denom *= factorial(m)
    out = HeisenbergPoly()
    for pi in partitions(r):
        out = out + H_lambda(pi, lam) * coeff_Cprime(pi)
    return out * Fraction((-1) ** r, denom)


def c2_rhs(lam) -> HeisenbergPoly:
    """(-1)^r sum_pi C'(pi) H(pi, lam), the k-independent side of the k-independence identity."""
    lam = Partition(lam)
    r = lam.supp()
    out = HeisenbergPoly()
    for pi in partitions(r):
        out = out + H_lambda(pi, lam) * coeff_Cprime(pi)
    return out * (-1) ** r


def yx_word(p, q):
    """The word (prod y t^{p_i})(prod x t^{-q_j}) as fock generators, leftmost first."""
    return [fock.Y(pi_) for pi_ in p] + [fock.X(-qj) for qj in q]
