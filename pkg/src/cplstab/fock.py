"""Level-1 realization of L(Lambda0) + L(Lambda1) on lattice-charged Fock space.

A basis state ``|m; mu>`` is the lattice vector e^{m omega1} times the
Heisenberg monomial h_{-mu_1} h_{-mu_2} ... .  Even charges span L(Lambda0)
and odd charges span L(Lambda1).  The generators x t^m, y t^m act through
vertex operators (see :mod:`cplstab._pykernel`); h t^m acts as creation,
charge or annihilation operator; c is the identity and d reads off the
delta-coefficient of the weight.

The kernel is compiled (``cplstab._fockcore``) when available, otherwise
the pure-Python one is used.  Set ``CPLSTAB_BACKEND=python`` to force the
fallback.  ``CPLSTAB_MAX_DEGREE`` caps the Heisenberg degree of any state
produced by :func:`act`/:func:`apply_word`.
"""
from __future__ import annotations

import json
import os
import re
from fractions import Fraction
from itertools import combinations_with_replacement
from typing import Iterable, NamedTuple

from . import _pykernel
from .combinatorics import Partition, partitions
from .weights import AffineWeight, fock_weight

try:
    from . import _fockcore
except ImportError:  # pragma: no cover - depends on the build
    _fockcore = None


class DegreeCapExceeded(RuntimeError):
    pass


def _select_backend():
    choice = os.environ.get("CPLSTAB_BACKEND", "auto").lower()
    if choice == "python" or _fockcore is None:
        if choice == "compiled":
            raise ImportError("CPLSTAB_BACKEND=compiled but cplstab._fockcore is not built")
        return "python", _pykernel.apply_ops
    return "compiled", _fockcore.apply_ops


BACKEND, _apply_ops = _select_backend()


def use_backend(name: str) -> None:
    """Switch the kernel at runtime ("python" or "compiled")."""
    global BACKEND, _apply_ops
    if name == "python":
        BACKEND, _apply_ops = "python", _pykernel.apply_ops
    elif name == "compiled":
        if _fockcore is None:
            raise ImportError("cplstab._fockcore is not built")
        BACKEND, _apply_ops = "compiled", _fockcore.apply_ops
    else:
        raise ValueError(f"unknown backend {name!r}")


class FockState(NamedTuple):
    charge: int
    mu: Partition

    def degree(self) -> int:
        return sum(self.mu)

    def weight(self) -> AffineWeight:
        return fock_weight(self.charge, sum(self.mu))


def _state_key(key):
    m, parts = key
    return (m, sum(parts), tuple(-p for p in parts))


class FockVector:
    """Immutable finite combination of Fock states with exact rational coefficients."""

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms=None):
        raw = {}
        if terms:
            items = terms.items() if isinstance(terms, dict) else terms
            for key, c in items:
                m, parts = key
                parts = tuple(parts)
                c = Fraction(c)
                if c:
                    k = (int(m), parts)
                    raw[k] = raw.get(k, 0) + c
        self._terms = {k: v for k, v in raw.items() if v}
        self._hash = None

    @classmethod
    def _wrap(cls, raw: dict) -> "FockVector":
        v = cls.__new__(cls)
        v._terms = raw
        v._hash = None
        return v

    @classmethod
    def basis(cls, charge: int, mu=()) -> "FockVector":
        return cls._wrap({(charge, tuple(Partition(mu))): Fraction(1)})

    @property
    def raw(self) -> dict:
        return self._terms

    def terms(self) -> list[tuple[FockState, Fraction]]:
        return [(FockState(m, Partition(p)), c)
                for (m, p), c in sorted(self._terms.items(), key=lambda kv: _state_key(kv[0]))]

    def coeff(self, charge: int, mu=()) -> Fraction:
        return self._terms.get((charge, tuple(mu)), Fraction(0))

    def __len__(self):
        return len(self._terms)

    def __bool__(self):
        return bool(self._terms)

    def __eq__(self, other):
        if isinstance(other, FockVector):
            return self._terms == other._terms
        if other == 0:
            return not self._terms
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    def __add__(self, other: "FockVector") -> "FockVector":
        out = dict(self._terms)
        for k, c in other._terms.items():
            s = out.get(k, 0) + c
            if s:
                out[k] = s
            else:
                out.pop(k, None)
        return FockVector._wrap(out)

    def __neg__(self):
        return FockVector._wrap({k: -c for k, c in self._terms.items()})

    def __sub__(self, other: "FockVector") -> "FockVector":
        return self + (-other)

    def __mul__(self, s) -> "FockVector":
        s = Fraction(s)
        if not s:
            return FockVector()
        return FockVector._wrap({k: c * s for k, c in self._terms.items()})

    __rmul__ = __mul__

    def __truediv__(self, s) -> "FockVector":
        return self * (1 / Fraction(s))

    def max_degree(self) -> int:
        return max((sum(p) for _, p in self._terms), default=0)

    def charges(self) -> set[int]:
        return {m for m, _ in self._terms}

    def weights(self) -> set[AffineWeight]:
        return {fock_weight(m, sum(p)) for m, p in self._terms}

    def is_homogeneous(self) -> bool:
        return len({(m, sum(p)) for m, p in self._terms}) <= 1

    def weight(self) -> AffineWeight:
        """The common weight of a nonzero homogeneous vector."""
        ws = self.weights()
        if len(ws) != 1:
            raise ValueError("vector is zero or not weight-homogeneous")
        return next(iter(ws))

    def __repr__(self):
        return f"FockVector({to_text(self)})"

    def to_json(self) -> dict:
        return {"terms": [{"charge": st.charge, "mu": list(st.mu), "coeff": str(c)}
                          for st, c in self.terms()]}

    @classmethod
    def from_json(cls, data) -> "FockVector":
        if isinstance(data, str):
            data = json.loads(data)
        return cls(((t["charge"], Partition(t["mu"])), Fraction(t["coeff"])) for t in data["terms"])


def vacuum(charge: int = 0) -> FockVector:
    return FockVector.basis(charge)


V_LAMBDA0 = vacuum(0)
V_LAMBDA1 = vacuum(1)


class AlgebraGen(NamedTuple):
    """x t^m, y t^m, h t^m, c or d (kinds X, Y, H, C, D)."""

    kind: str
    degree: int = 0

    def __str__(self):
        if self.kind in "CD":
            return self.kind.lower()
        return f"{self.kind.lower()}t^{self.degree}"


def X(m: int) -> AlgebraGen:
    return AlgebraGen("X", m)


def Y(m: int) -> AlgebraGen:
    return AlgebraGen("Y", m)


def H(m: int) -> AlgebraGen:
    return AlgebraGen("H", m)


C = AlgebraGen("C", 0)
D = AlgebraGen("D", 0)

# Chevalley generators
E1, F1, E0, F0 = X(0), Y(0), Y(1), X(-1)


def _max_degree_cap():
    cap = os.environ.get("CPLSTAB_MAX_DEGREE")
    return int(cap) if cap else None


def _checked(raw: dict) -> FockVector:
    cap = _max_degree_cap()
    if cap is not None:
        for _, p in raw:
            if sum(p) > cap:
                raise DegreeCapExceeded(f"state degree {sum(p)} exceeds CPLSTAB_MAX_DEGREE={cap}")
    return FockVector._wrap(raw)


def act(g: AlgebraGen, v: FockVector) -> FockVector:
    if g.kind not in "XYHCD":
        raise ValueError(f"unknown generator kind {g.kind!r}")
    if not v:
        return v
    return _checked(_apply_ops(v.raw, [(g.kind, g.degree, 1)]))


def apply_word(word: Iterable, v: FockVector) -> FockVector:
    """Apply ``[(gen, p), ...]`` right to left, each factor a divided power gen^p/p!.

    Bare generators count as ``(gen, 1)``.
    """
    ops = []
    for item in word:
        if isinstance(item, AlgebraGen):
            g, p = item, 1
        else:
            g, p = item
        if p < 0:
            raise ValueError("divided powers must be non-negative")
        if g.kind not in "XYHCD":
            raise ValueError(f"unknown generator kind {g.kind!r}")
        if p:
            ops.append((g.kind, g.degree, p))
    if not v or not ops:
        return v
    return _checked(_apply_ops(v.raw, ops))


# -- Lie bracket of generators ------------------------------------------------

_SL2_BRACKET = {
    ("X", "Y"): ("H", 1), ("Y", "X"): ("H", -1),
    ("H", "X"): ("X", 2), ("X", "H"): ("X", -2),
    ("H", "Y"): ("Y", -2), ("Y", "H"): ("Y", 2),
}
_FORM = {("X", "Y"): 1, ("Y", "X"): 1, ("H", "H"): 2}


def bracket(a: AlgebraGen, b: AlgebraGen) -> list[tuple[AlgebraGen, int]]:
    """[a, b] as an integer combination of generators."""
    if a.kind == "C" or b.kind == "C":
        return []
    if a.kind == "D" and b.kind == "D":
        return []
    if a.kind == "D":
        return [(b, b.degree)] if b.degree else []
    if b.kind == "D":
        return [(a, -a.degree)] if a.degree else []
    out = []
    if (a.kind, b.kind) in _SL2_BRACKET:
        kind, c = _SL2_BRACKET[(a.kind, b.kind)]
        out.append((AlgebraGen(kind, a.degree + b.degree), c))
    if a.degree == -b.degree and a.degree and (a.kind, b.kind) in _FORM:
        out.append((C, a.degree * _FORM[(a.kind, b.kind)]))
    return out


def check_relations(degree_bound: int, charge_bound: int, m_range: int) -> list[str]:
    """Compare commutators of actions with actions of brackets on a grid of basis states."""
    gens = [AlgebraGen(k, m) for k in "XYH" for m in range(-m_range, m_range + 1)] + [C, D]
    states = [FockVector.basis(q, mu)
              for q in range(-charge_bound, charge_bound + 1)
              for d in range(degree_bound + 1)
              for mu in partitions(d)]
    violations = []
    for a, b in combinations_with_replacement(gens, 2):
        rhs_terms = bracket(a, b)
        oa, ob = (a.kind, a.degree, 1), (b.kind, b.degree, 1)
        for s in states:
            ab = _apply_ops(s.raw, [oa, ob])
            ba = _apply_ops(s.raw, [ob, oa])
            diff = FockVector._wrap(ab) - FockVector._wrap(ba)
            for g, c in rhs_terms:
                diff = diff - act(g, s) * c
            if diff:
                key = next(iter(s.raw))
                violations.append(f"[{a}, {b}] on |{key[0]};{key[1]}>: commutator minus bracket = {to_text(diff)}")
    return violations


# -- text form ------------------------------------------------------------------

MINUS = "−"


def _fmt_monomial(parts) -> list[str]:
    out = []
    i = 0
    while i < len(parts):
        j = i
        while j < len(parts) and parts[j] == parts[i]:
            j += 1
        e = j - i
        out.append(f"h[-{parts[i]}]" + (f"^{e}" if e > 1 else ""))
        i = j
    return out


def format_terms(items, suffix=None) -> str:
    """Shared text rendering: ``items`` are (parts, coeff, extra-factor-or-None)."""
    pieces = []
    for parts, c, extra in items:
        factors = _fmt_monomial(parts)
        if extra:
            factors.append(extra)
        mag = abs(c)
        if not factors:
            body = str(mag)
        elif mag == 1:
            body = "·".join(factors)
        else:
            body = str(mag) + "·" + "·".join(factors)
        if not pieces:
            pieces.append((MINUS if c < 0 else "") + body)
        else:
            pieces.append((f" {MINUS} " if c < 0 else " + ") + body)
    return "".join(pieces) if pieces else "0"


def to_text(v: FockVector) -> str:
    return format_terms((st.mu, c, f"e{{{st.charge}}}") for st, c in v.terms())


def _split_terms(text: str) -> list[tuple[int, str]]:
    text = text.strip()
    if text == "0":
        return []
    out = []
    tokens = re.split(r"\s+([+−-])\s+", text)
    first = tokens[0]
    sign = 1
    if first.startswith(("-", MINUS)):
        sign, first = -1, first[1:]
    out.append((sign, first))
    for i in range(1, len(tokens), 2):
        out.append((-1 if tokens[i] in ("-", MINUS) else 1, tokens[i + 1]))
    return out


def parse_factors(body: str):
    """Parse ``coeff·h[-a]^e·...·e{m}`` into (coeff, parts, charge-or-None)."""
    coeff = Fraction(1)
    parts: list[int] = []
    charge = None
    for f in body.split("·"):
        f = f.strip()
        mh = re.fullmatch(r"h\[-(\d+)\](?:\^(\d+))?", f)
        me = re.fullmatch(r"e\{(-?\d+)\}", f)
        if mh:
            parts.extend([int(mh.group(1))] * int(mh.group(2) or 1))
        elif me:
            charge = int(me.group(1))
        else:
            coeff *= Fraction(f)
    return coeff, Partition.from_parts(parts), charge


def parse_text(text: str) -> FockVector:
    terms = []
    for sign, body in _split_terms(text):
        c, mu, charge = parse_factors(body)
        if charge is None:
            raise ValueError(f"term {body!r} lacks a charge factor e{{m}}")
        terms.append(((charge, mu), sign * c))
    return FockVector(terms)
