"""Exact arithmetic on span{Lambda0, omega1, delta} inside the affine weight space.

A weight is stored by its coordinates ``(cL, cw, cd)`` so that
``mu = cL*Lambda0 + cw*omega1 + cd*delta``.  With alpha1 = 2*omega1 the
pairings are ``<mu, h> = cw``, ``<mu, c> = (mu|delta) = cL`` and ``<mu, d> = cd``.
"""
from __future__ import annotations

import json
import re
from dataclasses import dataclass
from fractions import Fraction

from .combinatorics import require_valid


@dataclass(frozen=True)
class AffineWeight:
    cL: int
    cw: int
    cd: Fraction = Fraction(0)

    def __post_init__(self):
        object.__setattr__(self, "cd", Fraction(self.cd))

    def __add__(self, other: "AffineWeight") -> "AffineWeight":
        return AffineWeight(self.cL + other.cL, self.cw + other.cw, self.cd + other.cd)

    def __sub__(self, other: "AffineWeight") -> "AffineWeight":
        return AffineWeight(self.cL - other.cL, self.cw - other.cw, self.cd - other.cd)

    def __neg__(self) -> "AffineWeight":
        return AffineWeight(-self.cL, -self.cw, -self.cd)

    def __mul__(self, s) -> "AffineWeight":
        s = Fraction(s)
        if (s * self.cL).denominator != 1 or (s * self.cw).denominator != 1:
            raise ValueError("scaling leaves the integral Lambda0/omega1 lattice")
        return AffineWeight(int(s * self.cL), int(s * self.cw), s * self.cd)

    __rmul__ = __mul__

    def pair_h(self) -> int:
        """<mu, alpha1^vee>."""
        return self.cw

    def pair_c(self) -> int:
        return self.cL

    def pair_d(self) -> Fraction:
        return self.cd

    def pair_alpha0_vee(self) -> int:
        return self.cL - self.cw

    def __str__(self):
        return format_weight(self)

    def to_json(self) -> dict:
        return {"L0": self.cL, "w1": self.cw, "delta": str(self.cd)}

    @classmethod
    def from_json(cls, data) -> "AffineWeight":
        if isinstance(data, str):
            data = json.loads(data)
        return cls(int(data["L0"]), int(data["w1"]), Fraction(data["delta"]))


LAMBDA0 = AffineWeight(1, 0, 0)
OMEGA1 = AffineWeight(0, 1, 0)
DELTA = AffineWeight(0, 0, 1)
ALPHA1 = AffineWeight(0, 2, 0)
ALPHA0 = AffineWeight(0, -2, 1)
LAMBDA1 = AffineWeight(1, 1, Fraction(-1, 4))
RHO = AffineWeight(2, 1, 0)


def form(mu: AffineWeight, nu: AffineWeight) -> Fraction:
    """Invariant form: (alpha1|alpha1)=2, (delta|Lambda0)=1, others on the basis vanish."""
    return mu.cL * nu.cd + mu.cd * nu.cL + Fraction(mu.cw * nu.cw, 2)


def translate(mu: AffineWeight, q) -> AffineWeight:
    """t_alpha(mu) for alpha = q*alpha1, q a half-integer."""
    q = Fraction(q)
    if (2 * q).denominator != 1:
        raise ValueError(f"translation by {q}*alpha1 is not in the weight lattice")
    # mu + (mu|delta) alpha - (mu|alpha) delta - 1/2 (mu|delta)(alpha|alpha) delta
    return AffineWeight(
        mu.cL,
        mu.cw + int(2 * q * mu.cL),
        mu.cd - q * mu.cw - mu.cL * q * q,
    )


def reflect(mu: AffineWeight, i: int) -> AffineWeight:
    if i == 1:
        return AffineWeight(mu.cL, -mu.cw, mu.cd)
    if i == 0:
        s = mu.pair_alpha0_vee()
        return AffineWeight(mu.cL, mu.cw + 2 * s, mu.cd - s)
    raise ValueError("simple reflections are s_0 and s_1")


def sigma(mu: AffineWeight) -> AffineWeight:
    """The diagram automorphism s_1 t_{-omega1}."""
    return reflect(translate(mu, Fraction(-1, 2)), 1)


def weight_of_wn(n: int) -> AffineWeight:
    if n < 0:
        raise ValueError("n must be non-negative")
    if n % 2 == 0:
        wt = translate(LAMBDA0, Fraction(n, 2))
    else:
        wt = translate(LAMBDA1, Fraction(n - 1, 2))
    assert wt == AffineWeight(1, n, Fraction(-n * n, 4))
    return wt


def weight_of_CL(xi) -> AffineWeight:
    n, k, lam = require_valid(xi)
    if n % 2 == 0:
        base = translate(LAMBDA0, k - Fraction(n, 2))
    else:
        base = translate(LAMBDA1, k - Fraction(n + 1, 2))
    return base - lam.weight() * DELTA


def fock_weight(charge: int, degree: int) -> AffineWeight:
    """Weight of the Fock state |charge; mu> with |mu| = degree."""
    return AffineWeight(1, charge, -Fraction(charge * charge, 4) - degree)


def format_weight(mu: AffineWeight) -> str:
    return f"{mu.cL}Λ0 + {mu.cw}ω1 + ({mu.cd})δ"


_WEIGHT_RE = re.compile(
    r"^\s*(-?\d+(?:/\d+)?)\s*Λ0\s*\+\s*(-?\d+(?:/\d+)?)\s*ω1\s*\+\s*\(\s*(-?\d+(?:/\d+)?)\s*\)\s*δ\s*$")


def parse_weight(text: str) -> AffineWeight:
    """Inverse of :func:`format_weight`."""
    m = _WEIGHT_RE.match(text.replace("−", "-"))
    if not m:
        raise ValueError(f"malformed weight {text!r}")
    return AffineWeight(*(Fraction(g) for g in m.groups()))
