"""The twelve acceptance criteria, each run cold against its runtime budget.

Every criterion prints one PASS/FAIL line (collected in the terminal summary).
"""
import time

import pytest

from cplstab import checks, cpl, fkops

RESULTS: list[str] = []

CRITERIA = [
    (1, "example reproduction", ["example"], {}, 1),
    (2, "model soundness", ["relations"], {}, 30),
    (3, "Weyl-module relations", ["weyl"], {}, 30),
    (4, "basis and dimension", ["basis"], {}, 120),
    (5, "straightening oracle", ["t1"], {"t1": {"seed": 0, "random_cases": 100}}, 120),
    (6, "k-independence", ["c2"], {}, 120),
    (7, "CL equals f_lambda v0", ["t2"], {}, 60),
    (8, "appendix identities", ["appendix"], {}, 60),
    (9, "translation operators and off-diagonal reduction", ["fkprop", "offdiag"], {}, 120),
    (10, "automorphisms and intertwiners", ["automorphisms"], {}, 120),
    (11, "stability under psi", ["stability"], {"stability": {"n_max": 12}}, 300),
    (12, "direct limit", ["multiplicities"], {"multiplicities": {"dmax": 6}}, 180),
]


def _clear_caches():
    for fn in (cpl.make_wn, cpl._B, cpl._CL, cpl._Bbar, fkops._translate_step):
        fn.cache_clear()


@pytest.mark.parametrize("number,title,suites,kwargs,budget", CRITERIA, ids=[f"criterion_{c[0]:02d}" for c in CRITERIA])
def test_criterion(number, title, suites, kwargs, budget):
    _clear_caches()
    start = time.perf_counter()
    results = [checks.SUITES[name](**kwargs.get(name, {})) for name in suites]
    elapsed = time.perf_counter() - start
    checked = sum(r.checked for r in results)
    failures = [f"{r.name}: {msg}" for r in results for msg in r.failures]
    ok = not failures and all(r.passed for r in results) and elapsed < budget
    RESULTS.append(f"{'PASS' if ok else 'FAIL'} criterion {number:2d} ({title}): {checked} checks, "
                   f"{len(failures)} failures, {elapsed:.1f}s (budget {budget}s)")
    print(RESULTS[-1])
    assert not failures, failures[:5]
    assert elapsed < budget, f"took {elapsed:.1f}s, budget {budget}s"
