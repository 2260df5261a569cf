"""SplitMix64 streams with hierarchical substream keys.

Every random draw in the package comes from a SplitMix64 stream whose
starting state is a 64-bit *key*.  Keys are derived from a master seed by
``derive``: child ``i`` of a parent key is the ``(i + 1)``-th SplitMix64
output of a stream started at ``fmix64(parent)``.  Because a key depends
only on (seed, path of child indices), replicate ``i`` always sees the same
stream no matter how the work is scheduled.

Bounded integers in ``[0, n)`` use modulo with rejection of the lowest
``2**64 mod n`` raw outputs, so there is no modulo bias.

Three implementations share these definitions bit for bit: the pure-Python
``SplitMix64`` class below (reference and scalar use), the vectorised numpy
helpers, and the numba kernels.
"""

from __future__ import annotations

import hashlib

import numpy as np

MASK64 = (1 << 64) - 1
GAMMA = 0x9E3779B97F4A7C15
_M1 = 0xBF58476D1CE4E5B9
_M2 = 0x94D049BB133111EB
_F1 = 0xFF51AFD7ED558CCD
_F2 = 0xC4CEB9FE1A85EC53

U_GAMMA = np.uint64(GAMMA)
U_M1 = np.uint64(_M1)
U_M2 = np.uint64(_M2)
U_F1 = np.uint64(_F1)
U_F2 = np.uint64(_F2)
S27 = np.uint64(27)
S30 = np.uint64(30)
S31 = np.uint64(31)
S33 = np.uint64(33)

# Child index reserved for the outer draw and the inner bootstrap root of a
# coverage replication.
OUTER = 0
INNER = 1


def _mix(z: int) -> int:
    z = ((z ^ (z >> 30)) * _M1) & MASK64
    z = ((z ^ (z >> 27)) * _M2) & MASK64
    return z ^ (z >> 31)


def _fmix(z: int) -> int:
    z ^= z >> 33
    z = (z * _F1) & MASK64
    z ^= z >> 33
    z = (z * _F2) & MASK64
    return z ^ (z >> 33)


def rejection_threshold(n: int) -> int:
    """Raw outputs below this value are rejected when drawing from ``[0, n)``."""
    if n < 1:
        raise ValueError("bound must be >= 1")
    return (1 << 64) % n


def derive(parent: int, index: int) -> int:
    """Key of child ``index`` under ``parent``."""
    base = _fmix(parent & MASK64)
    return _mix((base + GAMMA * (index + 1)) & MASK64)


def derive_path(seed: int, *path: int) -> int:
    key = seed & MASK64
    for index in path:
        key = derive(key, index)
    return key


def field_seed(seed: int, field_id: str) -> int:
    """Per-field seed so that fields of equal size do not share resampling patterns."""
    digest = hashlib.blake2b(field_id.encode("utf-8"), digest_size=8).digest()
    return derive(seed, int.from_bytes(digest, "little"))


class SplitMix64:
    """Stateful scalar SplitMix64 generator.

    >>> g = SplitMix64(0)
    >>> hex(g.next_u64())
    '0xe220a8397b1dcdaf'
    """

    __slots__ = ("state",)

    def __init__(self, key: int):
        self.state = key & MASK64

    def next_u64(self) -> int:
        self.state = (self.state + GAMMA) & MASK64
        return _mix(self.state)

    def bounded(self, n: int) -> int:
        threshold = rejection_threshold(n)
        while True:
            z = self.next_u64()
            if z >= threshold:
                return z % n

    def indices(self, n: int, size: int) -> list[int]:
        return [self.bounded(n) for _ in range(size)]


# -- numpy (vectorised) --------------------------------------------------------
# uint64 arithmetic wraps modulo 2**64 by design; scalar overflow warnings are
# silenced where 0-d inputs can occur.


def mix64(z):
    z = (z ^ (z >> S30)) * U_M1
    z = (z ^ (z >> S27)) * U_M2
    return z ^ (z >> S31)


def fmix64(z):
    z = z ^ (z >> S33)
    z = z * U_F1
    z = z ^ (z >> S33)
    z = z * U_F2
    return z ^ (z >> S33)


def derive_many(parents, indices) -> np.ndarray:
    """Vectorised ``derive`` over broadcast arrays of parent keys and child indices."""
    parents = np.asarray(parents, dtype=np.uint64)
    idx = np.asarray(indices, dtype=np.uint64)
    with np.errstate(over="ignore"):
        return mix64(fmix64(parents) + U_GAMMA * (idx + np.uint64(1)))


def draw_indices(keys: np.ndarray, n: int, size: int) -> np.ndarray:
    """``size`` bounded draws from ``[0, n)`` for each stream key, in lockstep.

    Row ``r`` equals ``SplitMix64(keys[r]).indices(n, size)``.
    """
    states = np.array(keys, dtype=np.uint64, copy=True)
    threshold = np.uint64(rejection_threshold(n))
    un = np.uint64(n)
    out = np.empty((states.shape[0], size), dtype=np.int64)
    for j in range(size):
        states += U_GAMMA
        z = mix64(states)
        bad = np.flatnonzero(z < threshold)
        while bad.size:
            states[bad] += U_GAMMA
            z[bad] = mix64(states[bad])
            bad = bad[z[bad] < threshold]
        out[:, j] = (z % un).astype(np.int64)
    return out
