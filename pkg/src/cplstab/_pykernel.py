"""Pure-Python kernel for the level-1 lattice realization.

Vectors are plain dicts ``{(charge, parts): Fraction}`` with ``parts`` a
weakly decreasing tuple (the monomial prod h_{-parts[i]}).  The state
``(m, parts)`` has weight Lambda0 + m*omega1 - (m^2/4 + |parts|) delta.

    x(z) = E^-(z) E^+(z) e^{alpha} z^{h_0}
    y(z) = E^-(-z) E^+(-z) e^{-alpha} z^{-h_0}

where E^-(+-) multiplies by exp(+-sum_k h_{-k} z^k / k) and E^+(+-) is the
shift h_{-k} -> h_{-k} -+ 2 z^{-k} (h_k = 2k d/dh_{-k}).  The mode x t^n is
the coefficient of z^{-n-1}.
"""
from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import comb, factorial

from .combinatorics import partitions


@lru_cache(maxsize=None)
def exp_coefficients(a: int, negate: bool) -> tuple:
    """Coefficient of z^a in exp(+-sum_k p_k z^k / k): ((rho, 1/z_rho * sign), ...)."""
    out = []
    for rho in partitions(a):
        z = 1
        mult: dict[int, int] = {}
        for p in rho:
            mult[p] = mult.get(p, 0) + 1
        for k, m in mult.items():
            z *= k**m * factorial(m)
        c = Fraction(1, z)
        if negate and len(rho) % 2:
            c = -c
        out.append((tuple(rho), c))
    return tuple(out)


def merge_parts(a: tuple, b: tuple) -> tuple:
    if not a:
        return b
    if not b:
        return a
    return tuple(sorted(a + b, reverse=True))


def _shifts(parts: tuple, shift: int, bmin: int):
    """Expand prod (p_k + shift z^{-k})^{m_k}; yield (b, int coeff, remainder) with b >= bmin."""
    items: list[tuple[int, int]] = []
    for p in parts:
        if items and items[-1][0] == p:
            items[-1] = (p, items[-1][1] + 1)
        else:
            items.append((p, 1))
    total = sum(parts)
    if total < bmin:
        return
    # suffix sums bound the b still reachable
    reach = [0] * (len(items) + 1)
    for i in range(len(items) - 1, -1, -1):
        reach[i] = reach[i + 1] + items[i][0] * items[i][1]

    def rec(i, b, coeff, kept):
        if b + reach[i] < bmin:
            return
        if i == len(items):
            yield b, coeff, tuple(kept)
            return
        k, m = items[i]
        for j in range(m + 1):
            c = coeff * comb(m, j) * shift**j
            kept.extend([k] * (m - j))
            yield from rec(i + 1, b + k * j, c, kept)
            del kept[len(kept) - (m - j):]

    yield from rec(0, 0, 1, [])


def _vertex(vec: dict, n: int, raising: bool) -> dict:
    stage: dict = {}
    shift = -2 if raising else 2
    for (m, parts), c in vec.items():
        # total z exponent: (+-m) + a - b must equal -n-1
        offset = -n - 1 - m if raising else -n - 1 + m
        new_m = m + 2 if raising else m - 2
        for b, ic, rem in _shifts(parts, shift, -offset):
            a = b + offset
            key = (new_m, rem, a)
            stage[key] = stage.get(key, 0) + c * ic
    out: dict = {}
    for (new_m, rem, a), c in stage.items():
        if not c:
            continue
        for rho, e in exp_coefficients(a, not raising):
            key = (new_m, merge_parts(rem, rho))
            out[key] = out.get(key, 0) + c * e
    return {k: Fraction(v) for k, v in out.items() if v}


def _heisenberg(vec: dict, n: int) -> dict:
    out: dict = {}
    if n == 0:
        for (m, parts), c in vec.items():
            if m:
                out[(m, parts)] = c * m
        return out
    if n < 0:
        for (m, parts), c in vec.items():
            key = (m, merge_parts(parts, (-n,)))
            out[key] = out.get(key, 0) + c
        return {k: v for k, v in out.items() if v}
    for (m, parts), c in vec.items():
        cnt = parts.count(n)
        if cnt:
            i = parts.index(n)
            key = (m, parts[:i] + parts[i + 1:])
            out[key] = out.get(key, 0) + c * 2 * n * cnt
    return {k: v for k, v in out.items() if v}


def act(vec: dict, kind: str, n: int = 0) -> dict:
    if kind == "X":
        return _vertex(vec, n, True)
    if kind == "Y":
        return _vertex(vec, n, False)
    if kind == "H":
        return _heisenberg(vec, n)
    if kind == "C":
        return dict(vec)
    if kind == "D":
        out = {}
        for (m, parts), c in vec.items():
            s = -(Fraction(m * m, 4) + sum(parts))
            if s:
                out[(m, parts)] = c * s
        return out
    raise ValueError(f"unknown generator kind {kind!r}")


def apply_ops(vec: dict, ops) -> dict:
    """Apply ``ops = [(kind, n, power), ...]`` right to left, each as a divided power."""
    for kind, n, power in reversed(list(ops)):
        for _ in range(power):
            vec = act(vec, kind, n)
            if not vec:
                return {}
        if power > 1:
            f = factorial(power)
            vec = {k: v / f for k, v in vec.items()}
    return vec
