"""Compare the compiled LCS kernel against the pure-Python fallback.

Run from the repo root after an editable install:

    python3 benchmarks/bench_kernels.py
"""

import argparse
import random
import time

from uudnlg import _kernels_py, kernels


def make_pairs(rng, count, length, alphabet):
    pairs = []
    for _ in range(count):
        a = [rng.randint(0, alphabet - 1) for _ in range(length)]
        b = [rng.randint(0, alphabet - 1) for _ in range(length)]
        pairs.append((a, b))
    return pairs


def bench(fn, pairs, repeats):
    best = float("inf")
    for _ in range(repeats):
        start = time.perf_counter()
        for a, b in pairs:
            fn(a, b)
        best = min(best, time.perf_counter() - start)
    return best


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--count", type=int, default=200)
    ap.add_argument("--repeats", type=int, default=5)
    ap.add_argument("--seed", type=int, default=7)
    args = ap.parse_args()

    if not kernels.HAVE_SPEEDUPS:
        print("compiled extension unavailable; benchmarking fallback only")
    rng = random.Random(args.seed)
    print("%8s %12s %12s %8s" % ("length", "pure (s)", "compiled (s)", "speedup"))
    for length in (16, 64, 256, 1024):
        pairs = make_pairs(rng, args.count, length, alphabet=12)
        for a, b in pairs[:10]:
            assert kernels.lcs_length(a, b) == _kernels_py.lcs_length(a, b)
        pure = bench(_kernels_py.lcs_length, pairs, args.repeats)
        if kernels.HAVE_SPEEDUPS:
            fast = bench(kernels.lcs_length, pairs, args.repeats)
            print("%8d %12.4f %12.4f %7.1fx" % (length, pure, fast, pure / fast))
        else:
            print("%8d %12.4f %12s %8s" % (length, pure, "-", "-"))


if __name__ == "__main__":
    main()
