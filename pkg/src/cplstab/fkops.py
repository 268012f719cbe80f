"""Translation operators, reflection operators and the diagram twists of the affine algebra.

Module operators are compositions of exponentials of real-root generators.
Each exponential series is summed until its term vanishes, with a bound
taken from the weights of the module so a runaway series is reported
instead of looping.
"""
from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import isqrt
from typing import Callable, Iterable

from . import fock
from .combinatorics import IndexTriple, is_stable, require_valid
from .fock import C, D, H, X, Y, AlgebraGen, FockVector
from .weights import AffineWeight, fock_weight


class NilpotencyGuardExceeded(RuntimeError):
    """An exponential series did not terminate within the weight bound."""


def string_bound(g: AlgebraGen, v: FockVector) -> int:
    """Largest j with g^j v possibly nonzero.

    Weights of the module satisfy degree >= 0, so for a real root alpha and a
    state of degree D with s = (lambda | alpha), g^j v = 0 once j^2 + j*s > D.
    """
    if g.kind == "X":
        gamma = 1
    elif g.kind == "Y":
        gamma = -1
    else:
        raise ValueError("exponentials are taken of real-root generators only")
    best = 0
    for (m, parts) in v.raw:
        s = gamma * m + g.degree
        deg = sum(parts)
        disc = s * s + 4 * deg
        j = (isqrt(disc) - s) // 2
        while j * j + j * s > deg:
            j -= 1
        while (j + 1) * (j + 1) + (j + 1) * s <= deg:
            j += 1
        best = max(best, j)
    return best


def exp_action(g: AlgebraGen, coeff, v: FockVector) -> FockVector:
    """exp(coeff * g) v, summed term by term with exact divided powers."""
    coeff = Fraction(coeff)
    bound = string_bound(g, v)
    out = v
    term = v
    j = 0
    while True:
        j += 1
        term = fock.act(g, term) * (coeff / j)
        if not term:
            return out
        if j > bound:
            raise NilpotencyGuardExceeded(f"exp({coeff}*{g}) did not terminate after {bound} terms")
        out = out + term


def _weight_components(v: FockVector) -> dict:
    comps: dict = {}
    for key, c in v.raw.items():
        m, parts = key
        comps.setdefault((m, sum(parts)), {})[key] = c
    return comps


def _root_pairing(g: AlgebraGen, charge: int) -> int:
    """(lambda | alpha) for the root of g = E_alpha and a state of the given charge."""
    return (charge if g.kind == "X" else -charge) + g.degree


def _divided_string(g: AlgebraGen, coeff: Fraction, v: FockVector) -> list:
    """[(coeff g)^(j) v for j = 0, 1, ...] up to the last nonzero term."""
    bound = string_bound(g, v)
    out = [v]
    term = v
    j = 0
    while True:
        j += 1
        term = fock.act(g, term) * (coeff / j)
        if not term:
            return out
        if j > bound:
            raise NilpotencyGuardExceeded(f"({coeff}*{g})^{j} did not vanish within {bound} steps")
        out.append(term)


def _root_weight(g: AlgebraGen) -> AffineWeight:
    return AffineWeight(0, 2 if g.kind == "X" else -2, g.degree)


def extremal_string(g: AlgebraGen, length: int, charge: int) -> FockVector:
    """g^(length) |charge; 0> when that vector ends the g-string through |charge; 0>.

    A product of ``length`` vertex operators on |charge; 0> has vacuum coefficient
    equal to the constant term of prod_{i<j} (1 - z_j/z_i)^2 times a monomial,
    which Dyson's identity evaluates to (-1)^(length(length-1)/2) length!.
    """
    step = 2 if g.kind == "X" else -2
    target = FockVector.basis(charge + step * length, ())
    expected = fock_weight(charge, 0) + _root_weight(g) * length
    if target.weight() != expected:
        raise ValueError(f"{g}^({length}) does not end the string through |{charge}; 0>")
    return target * (-1) ** (length * (length - 1) // 2 % 2)


def reflection_action(e: AlgebraGen, f: AlgebraGen, u, w, v: FockVector,
                      extremal_shortcut: bool = True) -> FockVector:
    """exp(u e) exp(w f) exp(u e) v for u*w = -1, keeping only the reflected weight.

    Such a triple maps the weight space V_lambda onto V_{s_alpha lambda}, so for
    each weight component only terms e^(a) f^(b) e^(c) with b = a + c + s survive,
    s = (lambda | alpha).  The a-sum is evaluated by Horner's rule in e.

    The states |m; 0> are extremal, so their root strings are one-sided and the
    triple sends them to w^s f^(s) v (s >= 0) or u^-s e^(-s) v (s < 0); with
    ``extremal_shortcut`` that image is written down in closed form instead of
    walking through the deep weight spaces in between.
    """
    u, w = Fraction(u), Fraction(w)
    if u * w != -1:
        raise ValueError("reflection triples need u*w = -1")
    out = FockVector()
    for (m, _), raw in sorted(_weight_components(v).items()):
        comp = FockVector._wrap(raw)
        s = _root_pairing(e, m)
        if extremal_shortcut and len(raw) == 1 and (m, ()) in raw:
            c = raw[(m, ())]
            if s >= 0:
                out = out + extremal_string(f, s, m) * (c * w ** s)
            else:
                out = out + extremal_string(e, -s, m) * (c * u ** -s)
            continue
        for c, U in enumerate(_divided_string(e, u, comp)):
            W = _divided_string(f, w, U)
            lo = max(0, -(c + s))  # smallest a with b = a + c + s >= 0
            hi = len(W) - 1 - (c + s)
            if hi < lo:
                continue
            acc = FockVector()
            for a in range(hi, lo - 1, -1):
                acc = W[a + c + s] + fock.act(e, acc) * (u / (a + 1)) if acc else W[a + c + s]
            if lo:
                acc = fock.apply_word([(e, lo)], acc) * u ** lo
            out = out + acc
    return out


class ModuleOperator:
    """exp(c_1 E_1) exp(c_2 E_2) ... listed left to right, applied right to left.

    By default reflection triples exp(uE) exp(wF) exp(uE) with u*w = -1 are
    evaluated on the reflected weight only; ``projected=False`` sums every
    series in full.
    """

    __slots__ = ("factors",)

    def __init__(self, factors: Iterable[tuple[AlgebraGen, Fraction]] = ()):
        self.factors = tuple((g, Fraction(c)) for g, c in factors)

    def __call__(self, v: FockVector) -> FockVector:
        return self.apply(v)

    def apply(self, v: FockVector, projected: bool = True) -> FockVector:
        i = len(self.factors)
        while i > 0 and v:
            if projected and i >= 3 and self._is_reflection(i - 3):
                (e, u), (f, w), _ = self.factors[i - 3:i]
                v = reflection_action(e, f, u, w, v)
                i -= 3
            else:
                g, c = self.factors[i - 1]
                v = exp_action(g, c, v)
                i -= 1
        return v

    def _is_reflection(self, i: int) -> bool:
        (e, u), (f, w), (e2, u2) = self.factors[i:i + 3]
        if e != e2 or u != u2 or u * w != -1 or abs(u) != 1:
            return False
        return {e.kind, f.kind} == {"X", "Y"} and e.degree == -f.degree

    def inverse(self) -> "ModuleOperator":
        return ModuleOperator((g, -c) for g, c in reversed(self.factors))

    def __matmul__(self, other: "ModuleOperator") -> "ModuleOperator":
        return ModuleOperator(self.factors + other.factors)

    def __pow__(self, p: int) -> "ModuleOperator":
        if p < 0:
            return self.inverse() ** -p
        return ModuleOperator(self.factors * p)

    def __eq__(self, other):
        return isinstance(other, ModuleOperator) and self.factors == other.factors

    def __hash__(self):
        return hash(self.factors)

    def __repr__(self):
        body = " ".join(f"exp({c}·{g})" for g, c in self.factors)
        return f"ModuleOperator({body or 'id'})"


def root_vectors(gamma: int, k: int) -> tuple[AlgebraGen, AlgebraGen]:
    """(E_alpha, E_{-alpha}) for alpha = gamma*alpha1 + k*delta, gamma = +-1."""
    if gamma == 1:
        return X(k), Y(-k)
    if gamma == -1:
        return Y(k), X(-k)
    raise ValueError("gamma must be +1 or -1 (the real roots are +-alpha1 + k delta)")


def r_alpha(gamma: int, k: int) -> ModuleOperator:
    """exp(-E_alpha) exp(E_{-alpha}) exp(-E_alpha)."""
    e, f = root_vectors(gamma, k)
    return ModuleOperator([(e, -1), (f, 1), (e, -1)])


def T_root(gamma: int) -> ModuleOperator:
    """T_gamma = r_{delta - gamma} r_gamma for gamma = +-alpha1."""
    return r_alpha(-gamma, 1) @ r_alpha(gamma, 0)


T1 = T_root(1)
T1_MINUS = T_root(-1)


@lru_cache(maxsize=4096)
def _translate_step(v: FockVector, sign: int) -> FockVector:
    return (T1 if sign > 0 else T1_MINUS).apply(v)


class Translation(ModuleOperator):
    """T_{p alpha1} = (T_{+-alpha1})^{|p|}, each step memoized per input vector.

    T_{-alpha1} is built from its own reflection pair, so T(1) T(-1) = 1 is a
    property to check rather than a definition.
    """

    __slots__ = ("p",)

    def __init__(self, p: int):
        super().__init__((T1 if p >= 0 else T1_MINUS).factors * abs(p))
        self.p = p

    def apply(self, v: FockVector, projected: bool = True) -> FockVector:
        if not projected:
            return super().apply(v, projected=False)
        sign = 1 if self.p > 0 else -1
        for _ in range(abs(self.p)):
            if not v:
                break
            v = _translate_step(v, sign)
        return v

    def __repr__(self):
        return f"T({self.p})"


def T(p: int) -> Translation:
    """Translation operator T_{p alpha1} as the p-th power of T_{alpha1}."""
    return Translation(p)


def T_ad(p: int, g: AlgebraGen) -> AlgebraGen:
    if g.kind == "X":
        return X(g.degree - 2 * p)
    if g.kind == "Y":
        return Y(g.degree + 2 * p)
    raise ValueError(f"T_ad is defined on x t^k and y t^k only, not on {g}")


def offdiag_reduce(xi, verify: bool = True) -> tuple[IndexTriple, int]:
    """(xi_dagger, gamma) with CL(xi) = T(gamma) CL(xi_dagger) and xi_dagger = (2(n-k), n-k, lam)."""
    from .cpl import CL_vec

    n, k, lam = xi = require_valid(xi)
    if n % 2:
        raise ValueError("offdiag_reduce needs even n")
    if not is_stable(xi):
        raise ValueError(f"{xi} is not stable")
    dagger = IndexTriple(2 * (n - k), n - k, lam)
    gamma = k - n // 2
    if not is_stable(dagger):
        raise AssertionError(f"reduced triple {dagger} is not stable")
    if verify and CL_vec(xi) != T(gamma)(CL_vec(dagger)):
        raise AssertionError(f"CL{xi} differs from T({gamma}) CL{dagger}")
    return dagger, gamma


# -- automorphisms of the affine algebra --------------------------------------

LinComb = list  # [(AlgebraGen, Fraction)]


class AlgebraMap:
    """Linear map on generators, extended multiplicatively to words."""

    def __init__(self, name: str, func: Callable[[AlgebraGen], LinComb]):
        self.name = name
        self._func = func

    def __call__(self, g: AlgebraGen) -> LinComb:
        return [(h, Fraction(c)) for h, c in self._func(g) if c]

    def compose(self, other: "AlgebraMap") -> "AlgebraMap":
        """self after other."""
        def func(g):
            out: dict = {}
            for h, c in other(g):
                for h2, c2 in self(h):
                    out[h2] = out.get(h2, 0) + c * c2
            return list(out.items())
        return AlgebraMap(f"{self.name}∘{other.name}", func)

    def on_word(self, word: Iterable[AlgebraGen]) -> list[tuple[tuple, Fraction]]:
        """Image of a product of generators as a combination of words."""
        terms: dict = {(): Fraction(1)}
        for g in word:
            nxt: dict = {}
            for w, c in terms.items():
                for h, c2 in self(g):
                    key = w + (h,)
                    nxt[key] = nxt.get(key, 0) + c * c2
            terms = {w: c for w, c in nxt.items() if c}
        return list(terms.items())

    def __repr__(self):
        return f"AlgebraMap({self.name})"


def _sigma_tilde(g: AlgebraGen) -> LinComb:
    if g.kind == "X":
        return [(Y(g.degree + 1), 1)]
    if g.kind == "Y":
        return [(X(g.degree - 1), 1)]
    if g.kind == "H":
        return [(H(g.degree), -1)] + ([(C, 1)] if g.degree == 0 else [])
    if g.kind == "C":
        return [(C, 1)]
    # d is pinned down by sigma fixing rho-check = h/2 + 2d
    return [(D, 1), (H(0), Fraction(1, 2)), (C, Fraction(-1, 4))]


def _phi_tilde(g: AlgebraGen) -> LinComb:
    if g.kind == "X":
        return [(Y(g.degree), 1)]
    if g.kind == "Y":
        return [(X(g.degree), 1)]
    if g.kind == "H":
        return [(H(g.degree), -1)]
    return [(g, 1)]


sigma_tilde = AlgebraMap("σ̃", _sigma_tilde)
phi_tilde = AlgebraMap("φ̃", _phi_tilde)
tau = sigma_tilde.compose(phi_tilde)
tau_inverse = phi_tilde.compose(sigma_tilde)
rho = sigma_tilde.compose(phi_tilde).compose(sigma_tilde)


def _require_sector(v: FockVector, parity: int, name: str):
    bad = [m for m in v.charges() if m % 2 != parity]
    if bad:
        sector = "even" if parity == 0 else "odd"
        raise ValueError(f"{name} acts on the {sector}-charge sector; got charge {bad[0]}")


def G_intertwiner(v: FockVector) -> FockVector:
    """L(Lambda0) -> L(Lambda0) twisted by phi: |m; mu> -> (-1)^{l(mu)} |-m; mu>."""
    _require_sector(v, 0, "G")
    return FockVector._wrap({(-m, mu): (-c if len(mu) % 2 else c) for (m, mu), c in v.raw.items()})


def F_intertwiner(v: FockVector) -> FockVector:
    """L(Lambda1) -> L(Lambda0) twisted by tau: |m; mu> -> |m-1; mu>."""
    _require_sector(v, 1, "F")
    return FockVector._wrap({(m - 1, mu): c for (m, mu), c in v.raw.items()})


def F_inverse(v: FockVector) -> FockVector:
    _require_sector(v, 0, "F^-1")
    return FockVector._wrap({(m + 1, mu): c for (m, mu), c in v.raw.items()})


def Gprime_intertwiner(v: FockVector) -> FockVector:
    """F^-1 G F on L(Lambda1), twisted by sigma phi sigma: |m; mu> -> (-1)^{l(mu)} |2-m; mu>."""
    return F_inverse(G_intertwiner(F_intertwiner(v)))
