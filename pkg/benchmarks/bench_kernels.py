"""Compare the compiled and numpy modular row reductions, and the two exact kernel routes.

Usage: python3 benchmarks/bench_kernels.py [--sizes 50 100 200] [--repeat 3]
"""

import argparse
import random
import time
from fractions import Fraction

import numpy as np

from planebranch.exact import _kernels_py
from planebranch.exact.matrix import kernel_with_pivots

try:
    from planebranch.exact import _kernels
except ImportError:
    _kernels = None

P = 2147483629  # largest prime below 2^31


def _best(fn, repeat):
    best = float("inf")
    for _ in range(repeat):
        t = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t)
    return best


def bench_rref(sizes, repeat, seed):
    rng = np.random.default_rng(seed)
    print(f"{'n':>6} {'python (s)':>12} {'cython (s)':>12} {'speedup':>9}  same")
    for n in sizes:
        A = rng.integers(0, P, size=(n, n + n // 4), dtype=np.int64)
        A[n // 2:] = A[: n - n // 2]  # rank deficiency
        out = {}

        def run(mod, key):
            B = A.copy()
            piv = mod.rref_mod(B, P)
            out[key] = (list(piv), B)

        tp = _best(lambda: run(_kernels_py, "py"), repeat)
        if _kernels is None:
            print(f"{n:>6} {tp:>12.4f} {'n/a':>12} {'':>9}")
            continue
        tc = _best(lambda: run(_kernels, "cy"), repeat)
        same = out["py"][0] == out["cy"][0] and np.array_equal(out["py"][1], out["cy"][1])
        print(f"{n:>6} {tp:>12.4f} {tc:>12.4f} {tp / tc:>8.1f}x  {same}")


def bench_kernel(shapes, repeat, seed):
    rnd = random.Random(seed)
    print(f"\n{'shape':>10} {'fraction (s)':>13} {'modular (s)':>12}  same")
    for r, c in shapes:
        base = [[Fraction(rnd.randint(-9, 9), rnd.randint(1, 4)) for _ in range(c)] for _ in range(r // 2)]
        rows = base + [[a + b for a, b in zip(base[i], base[-1 - i])] for i in range(r - r // 2)]
        res = {}
        tf = _best(lambda: res.__setitem__("f", kernel_with_pivots(rows, c, "fraction")), repeat)
        tm = _best(lambda: res.__setitem__("m", kernel_with_pivots(rows, c, "modular")), repeat)
        print(f"{r:>4}x{c:<5} {tf:>13.4f} {tm:>12.4f}  {res['f'] == res['m']}")


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--sizes", type=int, nargs="+", default=[50, 100, 200, 400])
    ap.add_argument("--shapes", type=int, nargs="+", default=[20, 30, 40, 60, 60, 90])
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()
    bench_rref(args.sizes, args.repeat, args.seed)
    shapes = list(zip(args.shapes[::2], args.shapes[1::2]))
    bench_kernel(shapes, args.repeat, args.seed)


if __name__ == "__main__":
    main()
