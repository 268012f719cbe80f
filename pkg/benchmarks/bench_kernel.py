"""Compare the compiled vertex-operator kernel with the pure-Python fallback.

    python3 benchmarks/bench_kernel.py [--repeat N]

Each workload is run on both backends with result caches cleared, and the
outputs are compared for exact equality.
"""
import argparse
import time

from cplstab import cpl, fkops, fock
from cplstab.combinatorics import enum_P, partitions
from cplstab.fock import FockVector, X, Y, apply_word, V_LAMBDA0


def deep_word():
    return apply_word([(Y(-1), 4), (X(-4), 2), (X(-5), 2)], V_LAMBDA0)


def cl_basis_n8():
    return [cpl.CL_vec(xi) for xi in enum_P(8)]


def translations():
    states = [FockVector.basis(0, mu) for mu in partitions(4)]
    return [fkops.T(p)(v) for v in states for p in (-2, 2)]


def relations_grid():
    return fock.check_relations(3, 2, 2)


WORKLOADS = [
    ("divided-power word, degree 22", deep_word),
    ("CL basis of W(8)", cl_basis_n8),
    ("T(+-2) on degree-4 states", translations),
    ("bracket relations grid", relations_grid),
]


def _clear():
    for fn in (cpl.make_wn, cpl._B, cpl._CL, cpl._Bbar, fkops._translate_step):
        fn.cache_clear()


def run(backend, fn, repeat):
    fock.use_backend(backend)
    best, out = float("inf"), None
    for _ in range(repeat):
        _clear()
        start = time.perf_counter()
        out = fn()
        best = min(best, time.perf_counter() - start)
    return best, out


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--repeat", type=int, default=3)
    args = parser.parse_args()
    if fock._fockcore is None:
        raise SystemExit("compiled kernel is not built; run pip install -e . first")
    initial = fock.BACKEND
    print(f"{'workload':34s} {'python':>10s} {'compiled':>10s} {'speedup':>8s}")
    try:
        for name, fn in WORKLOADS:
            t_py, r_py = run("python", fn, args.repeat)
            t_c, r_c = run("compiled", fn, args.repeat)
            if r_py != r_c:
                raise SystemExit(f"backends disagree on {name}")
            print(f"{name:34s} {t_py:9.3f}s {t_c:9.3f}s {t_py / t_c:7.1f}x")
    finally:
        fock.use_backend(initial)


if __name__ == "__main__":
    main()
