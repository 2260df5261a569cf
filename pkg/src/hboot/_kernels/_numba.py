"""numba kernels.  Mirrors ``_numpy`` operation for operation."""

from __future__ import annotations

import os

import numba
import numpy as np
from numba import njit, prange

from .. import _rng

MEAN = 0
MEDIAN = 1

if "NUMBA_THREADING_LAYER" not in os.environ:
    # The system TBB is too old for numba; avoid the noisy probe.
    numba.config.THREADING_LAYER = "workqueue"

_GAMMA = np.uint64(_rng.GAMMA)
_M1 = np.uint64(0xBF58476D1CE4E5B9)
_M2 = np.uint64(0x94D049BB133111EB)
_F1 = np.uint64(0xFF51AFD7ED558CCD)
_F2 = np.uint64(0xC4CEB9FE1A85EC53)
_ONE = np.uint64(1)
_S27 = np.uint64(27)
_S30 = np.uint64(30)
_S31 = np.uint64(31)
_S33 = np.uint64(33)


@njit(cache=True, inline="always")
def _mix(z):
    z = (z ^ (z >> _S30)) * _M1
    z = (z ^ (z >> _S27)) * _M2
    return z ^ (z >> _S31)


@njit(cache=True, inline="always")
def _derive(parent, index):
    z = parent ^ (parent >> _S33)
    z = z * _F1
    z = z ^ (z >> _S33)
    z = z * _F2
    z = z ^ (z >> _S33)
    return _mix(z + _GAMMA * (index + _ONE))


@njit(cache=True)
def _draw_into(state, n, threshold, out):
    un = np.uint64(n)
    for j in range(out.shape[0]):
        while True:
            state = state + _GAMMA
            z = _mix(state)
            if z >= threshold:
                break
        out[j] = np.int64(z % un)
    return state


@njit(cache=True)
def _statistic(values, idx, buf, stat):
    n = idx.shape[0]
    if stat == MEAN:
        acc = 0.0
        lo = values[idx[0]]
        hi = lo
        for j in range(n):
            v = values[idx[j]]
            acc += v
            lo = min(lo, v)
            hi = max(hi, v)
        return min(max(acc / n, lo), hi)
    if n <= 64:
        # Insertion sort beats the generic sort on short rows.
        for j in range(n):
            v = values[idx[j]]
            k = j
            while k > 0 and buf[k - 1] > v:
                buf[k] = buf[k - 1]
                k -= 1
            buf[k] = v
    else:
        for j in range(n):
            buf[j] = values[idx[j]]
        buf.sort()
    mid = n // 2
    if n % 2:
        return buf[mid]
    return (buf[mid - 1] + buf[mid]) / 2.0


@njit(cache=True, parallel=True)
def _bootstrap(values, keys, stat, threshold):
    n = values.shape[0]
    b = keys.shape[0]
    out = np.empty(b)
    for i in prange(b):
        idx = np.empty(n, dtype=np.int64)
        buf = np.empty(n)
        _draw_into(keys[i], n, threshold, idx)
        out[i] = _statistic(values, idx, buf, stat)
    return out


@njit(cache=True, parallel=True)
def _coverage(population, n, node_keys, b, stat, pop_threshold, threshold):
    m = node_keys.shape[0]
    estimates = np.empty(m)
    reps = np.empty((m, b))
    outer_tag = np.uint64(0)
    inner_tag = np.uint64(1)
    for r in prange(m):
        idx = np.empty(n, dtype=np.int64)
        buf = np.empty(n)
        sample = np.empty(n)
        _draw_into(_derive(node_keys[r], outer_tag), population.shape[0], pop_threshold, idx)
        for j in range(n):
            sample[j] = population[idx[j]]
        for j in range(n):
            idx[j] = j
        estimates[r] = _statistic(sample, idx, buf, stat)
        root = _derive(node_keys[r], inner_tag)
        row = reps[r]
        for i in range(b):
            _draw_into(_derive(root, np.uint64(i)), n, threshold, idx)
            row[i] = _statistic(sample, idx, buf, stat)
        row.sort()
    return estimates, reps


class _threads:
    def __init__(self, n):
        self.n = max(1, min(int(n), numba.config.NUMBA_NUM_THREADS))

    def __enter__(self):
        self.previous = numba.get_num_threads()
        numba.set_num_threads(self.n)

    def __exit__(self, *exc):
        numba.set_num_threads(self.previous)


def bootstrap_replicates(values, keys, stat, threads=1):
    values = np.ascontiguousarray(values, dtype=np.float64)
    keys = np.ascontiguousarray(keys, dtype=np.uint64)
    th = np.uint64(_rng.rejection_threshold(values.shape[0]))
    with _threads(threads):
        return _bootstrap(values, keys, stat, th)


def coverage_replicates(population, n, node_keys, b, stat, threads=1):
    population = np.ascontiguousarray(population, dtype=np.float64)
    node_keys = np.ascontiguousarray(node_keys, dtype=np.uint64)
    pop_th = np.uint64(_rng.rejection_threshold(population.shape[0]))
    th = np.uint64(_rng.rejection_threshold(n))
    with _threads(threads):
        return _coverage(population, n, node_keys, b, stat, pop_th, th)
