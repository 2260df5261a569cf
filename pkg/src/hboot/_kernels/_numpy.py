"""Pure-numpy kernels.  Bit-identical to the numba kernels by construction:
same streams, same summation order, same median arithmetic."""

from __future__ import annotations

import numpy as np

from .. import _rng

MEAN = 0
MEDIAN = 1

# Upper bound on elements of one (streams x draws) index block.
_BLOCK = 1 << 22


def row_statistic(rows: np.ndarray, stat: int) -> np.ndarray:
    n = rows.shape[1]
    if stat == MEAN:
        acc = np.zeros(rows.shape[0])
        for j in range(n):
            acc += rows[:, j]
        # Rounding can push a sum/n just outside [min, max] (12 x 0.1 -> 0.0999...).
        return np.clip(acc / n, rows.min(axis=1), rows.max(axis=1))
    s = np.sort(rows, axis=1)
    mid = n // 2
    if n % 2:
        return s[:, mid].copy()
    return (s[:, mid - 1] + s[:, mid]) / 2.0


def bootstrap_replicates(values: np.ndarray, keys: np.ndarray, stat: int,
                         threads: int = 1) -> np.ndarray:
    n = values.shape[0]
    out = np.empty(keys.shape[0])
    step = max(1, _BLOCK // n)
    for start in range(0, keys.shape[0], step):
        block = keys[start:start + step]
        idx = _rng.draw_indices(block, n, n)
        out[start:start + step] = row_statistic(values[idx], stat)
    return out


def coverage_replicates(population: np.ndarray, n: int, node_keys: np.ndarray,
                        b: int, stat: int, threads: int = 1):
    m = node_keys.shape[0]
    estimates = np.empty(m)
    reps = np.empty((m, b))
    outer = _rng.derive_many(node_keys, _rng.OUTER)
    inner_root = _rng.derive_many(node_keys, _rng.INNER)
    samples = population[_rng.draw_indices(outer, population.shape[0], n)]
    estimates[:] = row_statistic(samples, stat)
    rep_index = np.arange(b, dtype=np.uint64)
    step = max(1, _BLOCK // (b * n))
    for start in range(0, m, step):
        stop = min(m, start + step)
        keys = _rng.derive_many(inner_root[start:stop, None], rep_index[None, :]).ravel()
        idx = _rng.draw_indices(keys, n, n).reshape(stop - start, b, n)
        rows = samples[start:stop][np.arange(stop - start)[:, None, None], idx]
        vals = row_statistic(rows.reshape(-1, n), stat).reshape(stop - start, b)
        reps[start:stop] = np.sort(vals, axis=1)
    return estimates, reps
