"""Time the numba kernels against the numpy fallback on the hot paths.

    python benchmarks/bench_backends.py [--keys 200] [--repeat 5]

numba timings exclude compilation (one warm-up call per kernel).
"""

import argparse
import time

import numpy as np

from sbox_forge._backend import load


def best_of(fn, repeat):
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t0)
    return min(times)


def cases(k, keys):
    rng = np.random.default_rng(0)
    perms = np.stack([rng.permutation(256) for _ in range(8)]).astype(np.int64)
    signs = 1 - 2 * rng.integers(0, 2, (255, 256))
    x0, a, b = keys
    partners = k.draw_bytes(0.37, 1.1, 1e6, 1, 64 * 256)

    def tables():
        k.initial_tables(x0, a, b, 1, 10**7)

    def trajectory():
        k.trajectory(0.33, 1.0, 1, 100_000, 0)

    def walsh():
        k.walsh(signs)

    def ddt():
        for t in perms:
            k.ddt(t)

    def refine():
        k.refine(perms[0], partners, 8, 64)

    return {
        f"initial_tables x{x0.size}": tables,
        "trajectory 1e5": trajectory,
        "walsh 255x256": walsh,
        "ddt x8": ddt,
        "refine 64 passes": refine,
    }


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--keys", type=int, default=200)
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args(argv)

    rng = np.random.default_rng(1)
    keys = (
        rng.uniform(0.01, 0.99, args.keys),
        rng.uniform(0.05, 1.95, args.keys),
        10.0 ** rng.uniform(4.0, 9.0, args.keys),
    )
    results = {}
    for name in ("numba", "numpy"):
        k = load(name)
        for label, fn in cases(k, keys).items():
            fn()  # warm-up / compile
            results.setdefault(label, {})[name] = best_of(fn, args.repeat)

    print(f"{'case':<22}{'numba ms':>12}{'numpy ms':>12}{'speed-up':>10}")
    for label, r in results.items():
        print(f"{label:<22}{r['numba'] * 1e3:>12.3f}{r['numpy'] * 1e3:>12.3f}{r['numpy'] / r['numba']:>9.1f}x")


if __name__ == "__main__":
    main()
