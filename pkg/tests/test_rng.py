import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hboot import _rng

MASK = (1 << 64) - 1


def test_splitmix64_reference_vectors():
    # Output of the reference SplitMix64 generator seeded with 0.
    g = _rng.SplitMix64(0)
    assert [g.next_u64() for _ in range(4)] == [
        0xE220A8397B1DCDAF, 0x6E789E6AA1B965F4, 0x06C45D188009454F, 0xF88BB8A8724C81EC]


def test_rejection_threshold():
    assert _rng.rejection_threshold(1) == 0
    assert _rng.rejection_threshold(2) == 0
    assert _rng.rejection_threshold(3) == (1 << 64) % 3
    assert _rng.rejection_threshold(31) == (1 << 64) % 31


def test_bounded_is_unbiased_modulo_with_rejection():
    g = _rng.SplitMix64(12345)
    ref = _rng.SplitMix64(12345)
    for n in (1, 2, 3, 7, 31, 1000, (1 << 63) + 5):
        got = g.bounded(n)
        thr = (1 << 64) % n
        while True:
            x = ref.next_u64()
            if x >= thr:
                break
        assert got == x % n


@given(st.integers(0, MASK), st.integers(0, 10_000))
@settings(max_examples=200, deadline=None)
def test_derive_many_matches_scalar(parent, i):
    got = _rng.derive_many(np.uint64(parent), np.array([i], dtype=np.uint64))
    assert int(got[0]) == _rng.derive(parent, i)


def test_derive_path_composes():
    assert _rng.derive_path(7, 3, 1) == _rng.derive(_rng.derive(7, 3), 1)
    assert _rng.derive_path(7) == 7


def test_children_are_distinct():
    keys = _rng.derive_many(np.uint64(0), np.arange(100_000, dtype=np.uint64))
    assert np.unique(keys).size == keys.size


def test_field_seed_depends_on_field_and_seed():
    a = _rng.field_seed(0, "physics")
    assert a == _rng.field_seed(0, "physics")
    assert a != _rng.field_seed(0, "chemistry")
    assert a != _rng.field_seed(1, "physics")


@pytest.mark.parametrize("n", [1, 3, 31, 217])
def test_lockstep_draws_match_scalar_streams(n):
    keys = _rng.derive_many(np.uint64(99), np.arange(50, dtype=np.uint64))
    drawn = _rng.draw_indices(keys, n, 40)
    for row, key in zip(drawn, keys):
        assert row.tolist() == _rng.SplitMix64(int(key)).indices(n, 40)


def test_draws_are_roughly_uniform():
    keys = _rng.derive_many(np.uint64(5), np.arange(2000, dtype=np.uint64))
    counts = np.bincount(_rng.draw_indices(keys, 10, 50).ravel(), minlength=10)
    expected = 2000 * 50 / 10
    chi2 = float(((counts - expected) ** 2 / expected).sum())
    assert chi2 < 30  # 9 dof, p ~ 4e-4
