#!/usr/bin/env python3
"""Benchmark the table-scan kernels: compiled extension vs pure Python.

The scans are the only cubic-cost loops in the package; everything else is
exact arithmetic on small derived structures.  Run:

    python benchmarks/bench_tables.py [--sizes 32,64,128] [--repeat 3]
"""

import argparse
import time
from array import array

from monoidkit import kernels


def cyclic_table(n):
    return array("i", [(i + j) % n for i in range(n) for j in range(n)])


def bench(fn, *args, repeat=3):
    best = None
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn(*args)
        dt = time.perf_counter() - t0
        best = dt if best is None else min(best, dt)
    return best


SCANS = (
    # cyclic groups are cancellative, so these scans never exit early
    ("cancellation scan (n^3)", "find_cancel_violation", lambda impl, t, n: impl.find_cancel_violation(t, n)),
    ("congruence classes (n^3)", "regular_classes", lambda impl, t, n: impl.regular_classes(t, n)),
    ("associativity scan (n^3)", "find_assoc_violation", lambda impl, t, n: impl.find_assoc_violation(t, n)),
    ("divisibility orbit (n^2)", "div_scan", lambda impl, t, n: impl.div_scan(t, n)),
)


def main():
    parser = argparse.ArgumentParser()
    parser.add_argument("--sizes", default="32,64,128")
    parser.add_argument("--repeat", type=int, default=3)
    args = parser.parse_args()
    sizes = [int(s) for s in args.sizes.split(",")]

    impls = kernels.ALL_IMPLS
    print(f"available kernels: {', '.join(sorted(impls))} (active: {kernels.IMPL})")
    if len(impls) < 2:
        print("compiled kernel not built; timing pure Python only")
    header = f"{'scan':<28}{'n':>6}" + "".join(f"{name:>12}" for name in sorted(impls))
    if len(impls) == 2:
        header += f"{'speedup':>10}"
    print(header)
    print("-" * len(header))
    for label, _, call in SCANS:
        for n in sizes:
            t = cyclic_table(n)
            times = {name: bench(call, impl, t, n, repeat=args.repeat)
                     for name, impl in impls.items()}
            row = f"{label:<28}{n:>6}"
            for name in sorted(impls):
                row += f"{times[name] * 1000:>10.1f}ms"
            if len(impls) == 2:
                row += f"{times['python'] / times['cython']:>9.1f}x"
            print(row)


if __name__ == "__main__":
    main()
