"""Time the numba kernels against the pure-numpy fallback.

    python benchmarks/bench_kernels.py [--reps 5]

Both backends produce bit-identical replicates; this only measures speed.
The first numba call (JIT or cache load) is excluded.
"""

import argparse
import time

import numpy as np

from hboot import _kernels, _rng
from hboot.resampling import replicate_keys


def best_of(fn, reps):
    fn()
    times = []
    for _ in range(reps):
        t0 = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t0)
    return min(times)


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--reps", type=int, default=5)
    ap.add_argument("--threads", type=int, default=1)
    args = ap.parse_args()

    values = np.random.default_rng(0).lognormal(3.5, 0.4, 31)
    population = np.random.default_rng(1).lognormal(3.5, 0.4, 10_000)
    keys = replicate_keys(0, 100_000)
    nodes = _rng.derive_many(np.uint64(0), np.arange(200, dtype=np.uint64))
    numpy_k, numba_k = _kernels.get("numpy"), _kernels.get("numba")

    cases = [
        ("bootstrap mean   n=31 B=100000", lambda k, s: k.bootstrap_replicates(values, keys, s, args.threads), _kernels.MEAN),
        ("bootstrap median n=31 B=100000", lambda k, s: k.bootstrap_replicates(values, keys, s, args.threads), _kernels.MEDIAN),
        ("coverage  mean   M=200 B=1000", lambda k, s: k.coverage_replicates(population, 31, nodes, 1000, s, args.threads), _kernels.MEAN),
        ("coverage  median M=200 B=1000", lambda k, s: k.coverage_replicates(population, 31, nodes, 1000, s, args.threads), _kernels.MEDIAN),
    ]
    print(f"{'case':34s} {'numpy s':>9s} {'numba s':>9s} {'speedup':>8s}")
    for name, fn, stat in cases:
        t_np = best_of(lambda: fn(numpy_k, stat), args.reps)
        if numba_k is None:
            print(f"{name:34s} {t_np:9.4f} {'n/a':>9s}")
            continue
        t_nb = best_of(lambda: fn(numba_k, stat), args.reps)
        print(f"{name:34s} {t_np:9.4f} {t_nb:9.4f} {t_np / t_nb:7.1f}x")


if __name__ == "__main__":
    main()
