"""Compare the compiled and pure-Python kernels.

    python benchmarks/bench_kernels.py [--repeat 3]
"""

import argparse
import random
import timeit

import numpy as np

from leibniz3 import kernels


def random_tensor(n, nnz, rng):
    f = np.zeros((n, n, n, n), dtype=np.int64)
    for _ in range(nnz):
        f[tuple(rng.randrange(n) for _ in range(4))] = rng.choice([-2, -1, 1, 2])
    return f


def random_forms(c, d, rng):
    Q = np.zeros((c, d, d), dtype=np.int64)
    for r in range(c):
        for _ in range(3):
            Q[r, rng.randrange(d), rng.randrange(d)] = rng.choice([-2, -1, 1, 2])
    return Q


def bench(label, fn, repeat):
    best = min(timeit.repeat(fn, number=1, repeat=repeat))
    print(f"  {label:<8} {best * 1000:10.2f} ms")
    return best


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()
    rng = random.Random(0)
    if not kernels.compiled_available():
        print("compiled kernels unavailable; only the Python backend is timed")
    backends = ["python"] + (["cython"] if kernels.compiled_available() else [])

    for n in (3, 4, 5):
        f = random_tensor(n, 4 * n, rng)
        print(f"cocycle_operator n={n} (matrix {n ** 6} x {n ** 4})")
        times = {b: bench(b, lambda b=b: kernels.cocycle_operator(f, 0, backend=b), args.repeat)
                 for b in backends}
        if len(times) == 2:
            print(f"  speedup  {times['python'] / times['cython']:10.1f}x")

    for d, g in ((6, 5), (8, 5), (9, 3)):
        Q = random_forms(9, d, rng)
        grid = list(range(-(g // 2), g // 2 + 1))
        print(f"grid_zero_points d={d} grid={len(grid)} ({len(grid) ** d} points)")
        times = {b: bench(b, lambda b=b: kernels.grid_zero_points(Q, grid, backend=b), args.repeat)
                 for b in backends}
        if len(times) == 2:
            print(f"  speedup  {times['python'] / times['cython']:10.1f}x")


if __name__ == "__main__":
    main()
