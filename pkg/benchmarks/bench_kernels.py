"""Benchmark the numba kernels against the numpy fallback.

Run: python benchmarks/bench_kernels.py [--repeat 3]

Worst cases are chosen on purpose: moduli with no root of 2n^2+2n+2 scan
the whole residue range, and discriminants without a Fano witness scan up
to the cap.
"""

from __future__ import annotations

import argparse
import time

from hassett import kernels
from hassett.divisors import DEFAULT_FANO_CAP


def _time(fn, args_list, repeat):
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        for args in args_list:
            fn(*args)
        best = min(best, time.perf_counter() - t0)
    return best


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()

    rootless = [(g,) for g in range(9_000, 10_001) if kernels._min_root_py(g) < 0][:300]
    no_fano = [(d, DEFAULT_FANO_CAP) for d in range(8_000, 10_001, 2) if kernels._fano_py(d, DEFAULT_FANO_CAP)[0] < 0][:300]

    cases = {
        f"min_quadratic_root x{len(rootless)} (no root)": {
            "python": (kernels._min_root_py, rootless),
            "numpy": (kernels._min_root_np, rootless),
        },
        f"fano_search x{len(no_fano)} (cap {DEFAULT_FANO_CAP}, no witness)": {
            "python": (kernels._fano_py, no_fano),
            "numpy": (kernels._fano_np, no_fano),
        },
    }
    if kernels.HAS_NUMBA:
        kernels._min_root_nb(7)
        kernels._fano_nb(14, 10)
        name_root, name_fano = list(cases)
        cases[name_root]["numba"] = (kernels._min_root_nb, rootless)
        cases[name_fano]["numba"] = (kernels._fano_nb, no_fano)
    else:
        print("numba not installed; numba column skipped")

    print(f"{'kernel':<52} {'backend':<8} {'seconds':>9} {'vs numpy':>9}")
    for name, backends in cases.items():
        base = _time(*backends["numpy"], args.repeat)
        for label, (fn, argl) in backends.items():
            t = base if label == "numpy" else _time(fn, argl, args.repeat)
            print(f"{name:<52} {label:<8} {t:>9.4f} {base / t:>8.1f}x")


if __name__ == "__main__":
    main()
