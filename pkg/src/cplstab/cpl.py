"""The Weyl-module basis vectors w_n, B(xi), CL(xi) and the lowest-weight variant Bbar(xi)."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import factorial

from . import fock
from .combinatorics import IndexTriple, complement, require_valid
from .fock import FockVector, V_LAMBDA0, V_LAMBDA1, X, Y
from .weights import weight_of_CL, weight_of_wn


class ConsistencyError(AssertionError):
    """Two independent computations of the same vector disagreed."""


@dataclass(frozen=True)
class NormalizationData:
    m: tuple  # (m_0, ..., m_k): multiplicity of the exponent k - j among y t^{k - lam_i}
    z: Fraction
    eps: int


def normalization(xi) -> NormalizationData:
    n, k, lam = require_valid(xi)
    mult = lam.multiplicities()
    m = (n - k - lam.supp(),) + tuple(mult.get(j, 0) for j in range(1, k + 1))
    eps = -1 if (n // 4 - (n - k) // 2) % 2 else 1
    denom = 1
    for mj in m:
        denom *= factorial(mj)
    return NormalizationData(m, Fraction(eps, denom), eps)


@lru_cache(maxsize=None)
def make_wn(n: int) -> FockVector:
    if n < 0:
        raise ValueError("n must be non-negative")
    if n % 2 == 0:
        v = fock.apply_word([(X(-n // 2), n // 2)], V_LAMBDA0)
    else:
        v = fock.apply_word([(X(-(n + 1) // 2), (n - 1) // 2)], V_LAMBDA1)
    assert v and v.weight() == weight_of_wn(n)
    return v


def make_vn(n: int) -> FockVector:
    """The lowest-weight vector (y t^{-n/2})^{(n/2)} v_Lambda0, n even."""
    if n < 0 or n % 2:
        raise ValueError("v_n is defined for even n >= 0")
    return fock.apply_word([(Y(-n // 2), n // 2)], V_LAMBDA0)


def _product_word(kind, exponents):
    """Plain product of kind t^e over exponents, as a divided-power word and its scalar.

    Factors are grouped by exponent; larger exponents are applied first since they
    keep intermediate degrees lowest.
    """
    counts: dict = {}
    for e in exponents:
        counts[e] = counts.get(e, 0) + 1
    scale = 1
    word = []
    for e in sorted(counts):
        word.append((kind(e), counts[e]))
        scale *= factorial(counts[e])
    return word, scale


@lru_cache(maxsize=None)
def _B(xi: IndexTriple) -> FockVector:
    n, k, lam = xi
    exps = list(lam) + [0] * (n - k - lam.supp())
    word, scale = _product_word(Y, exps)
    return fock.apply_word(word, make_wn(n)) * scale


def B_vec(xi) -> FockVector:
    return _B(require_valid(xi))


def _CL_plain(xi: IndexTriple) -> FockVector:
    n, k, lam = xi
    exps = [k - lam[i] if i < len(lam) else k for i in range(n - k)]
    word, scale = _product_word(Y, exps)
    return fock.apply_word(word, make_wn(n)) * (scale * normalization(xi).z)


def _CL_divided(xi: IndexTriple) -> FockVector:
    n, k, _ = xi
    data = normalization(xi)
    # y^{(m_k)} (y t)^{(m_{k-1})} ... (y t^k)^{(m_0)}: factor j carries exponent k - j
    word = [(Y(k - j), data.m[j]) for j in range(k, -1, -1)]
    return fock.apply_word(word, make_wn(n)) * data.eps


@lru_cache(maxsize=None)
def _CL(xi: IndexTriple, crosscheck: bool) -> FockVector:
    v = _CL_divided(xi)
    if crosscheck:
        w = _CL_plain(xi)
        if v != w:
            raise ConsistencyError(f"normalized plain product and divided-power product disagree at {xi}")
    if v and v.weight() != weight_of_CL(xi):
        raise ConsistencyError(f"CL{xi} has weight {v.weight()}, expected {weight_of_CL(xi)}")
    return v


def CL_vec(xi, crosscheck: bool = True) -> FockVector:
    """z(xi) * prod_i y t^{k - lam_i} w_n.

    With ``crosscheck`` the plain product and the divided-power form are both
    computed and compared.
    """
    xi = require_valid(xi)
    return _CL(xi, crosscheck)


def CL_via_complement(xi) -> FockVector:
    """z(xi) B(xi^c), the same vector reached through the complement triple."""
    xi = require_valid(xi)
    return B_vec(complement(xi)) * normalization(xi).z


@lru_cache(maxsize=None)
def _Bbar(xi: IndexTriple) -> FockVector:
    n, k, lam = xi
    if n % 2 == 0:
        exps = list(lam) + [0] * (n - k - lam.supp())
        word, scale = _product_word(X, exps)
        return fock.apply_word(word, make_vn(n)) * scale
    from .fkops import Gprime_intertwiner
    return Gprime_intertwiner(B_vec(xi))


def Bbar_vec(xi) -> FockVector:
    """prod_i x t^{lam_i} v_n for even n; for odd n the image of B(xi) under the twisted involution."""
    return _Bbar(require_valid(xi))
