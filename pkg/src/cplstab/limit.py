"""Stability of CL vectors under psi and the direct-limit basis of L(Lambda0)."""
from __future__ import annotations

from dataclasses import dataclass, field

from .combinatorics import IndexTriple, enum_P_stab, format_triple, is_stable, partition_count, partitions, psi
from .cpl import CL_vec
from .fock import FockVector
from .linalg import is_independent
from .weights import LAMBDA0, LAMBDA1, DELTA, AffineWeight, translate


@dataclass
class StabilityReport:
    n: int
    checked: int = 0
    violations: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations


def check_stability(n: int) -> StabilityReport:
    """Compare CL(xi) with CL(psi(xi)) for every stable xi with first entry n."""
    if n < 0:
        raise ValueError("n must be non-negative")
    report = StabilityReport(n)
    for xi in enum_P_stab(n):
        image = psi(xi)
        report.checked += 1
        if not is_stable(image):
            report.violations.append(f"psi({format_triple(xi)}) = {format_triple(image)} is not stable")
            continue
        if CL_vec(xi) != CL_vec(image):
            report.violations.append(f"CL({format_triple(xi)}) != CL({format_triple(image)})")
    return report


@dataclass
class StableBasisEntry:
    mu: AffineWeight
    j: int
    d: int
    chosen_n: int
    vectors: list  # [(IndexTriple, FockVector)]

    def to_json(self) -> dict:
        return {
            "weight": self.mu.to_json(),
            "j": self.j,
            "d": self.d,
            "n": self.chosen_n,
            "vectors": [{"xi": format_triple(xi), "vector": v.to_json()} for xi, v in self.vectors],
        }


def _triples(j: int, d: int, n: int) -> list[IndexTriple]:
    """Triples of P(n) whose CL vector has weight t_{j alpha1}(Lambda_p) - d delta, p = n mod 2."""
    k = j + (n + 1) // 2
    if not 0 <= k <= n:
        return []
    return [IndexTriple(n, k, lam) for lam in partitions(d, max_part=k, max_len=n - k)]


def stable_basis_at(j: int, d: int, odd: bool = False, check_next: bool = True) -> StableBasisEntry:
    """Basis of the weight space of t_{j alpha1}(Lambda0) - d delta (Lambda1 when ``odd``)."""
    if d < 0:
        raise ValueError("d must be non-negative")
    n = 2 * (d + abs(j)) + (1 if odd else 0)
    base = LAMBDA1 if odd else LAMBDA0
    mu = translate(base, j) - d * DELTA
    triples = _triples(j, d, n)
    if not all(is_stable(xi) for xi in triples):
        raise AssertionError(f"some triple for (j={j}, d={d}) at n={n} is not stable")
    vectors = [(xi, CL_vec(xi)) for xi in triples]
    if len(vectors) != partition_count(d):
        raise AssertionError(f"expected p({d}) = {partition_count(d)} vectors, got {len(vectors)}")
    for xi, v in vectors:
        if not v or v.weight() != mu:
            raise AssertionError(f"CL({format_triple(xi)}) does not have weight {mu}")
    if not is_independent(v for _, v in vectors):
        raise AssertionError(f"basis vectors for (j={j}, d={d}) are dependent")
    if check_next:
        for xi, v in vectors:
            if CL_vec(psi(xi)) != v:
                raise AssertionError(f"CL({format_triple(xi)}) changes when n is raised to {n + 2}")
    return StableBasisEntry(mu, j, d, n, vectors)


def weights_up_to(dmax: int) -> list[tuple[int, int]]:
    """(j, d) with j^2 + d <= dmax, ordered by depth then j."""
    out = []
    for j in range(-dmax, dmax + 1):
        for d in range(0, dmax - j * j + 1):
            out.append((j, d))
    return sorted(out, key=lambda jd: (jd[0] ** 2 + jd[1], jd[0], jd[1]))


def basis_up_to(dmax: int, odd: bool = False, check_next: bool = True) -> list[StableBasisEntry]:
    if dmax < 0:
        raise ValueError("Dmax must be non-negative")
    return [stable_basis_at(j, d, odd=odd, check_next=check_next) for j, d in weights_up_to(dmax)]


def all_vectors(entries) -> list[FockVector]:
    return [v for e in entries for _, v in e.vectors]
