import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from lfsrx import LfsrConfig
from lfsrx.complexity import berlekamp_massey, complexity_profile
from lfsrx.lfsr import primary_stream

from oracles import brute_force_complexity


def test_empty():
    assert berlekamp_massey([]) == 0


def test_all_zero():
    assert berlekamp_massey(np.zeros(100, dtype=np.uint8)) == 0


@pytest.mark.parametrize("l", [1, 2, 5, 9])
def test_zeros_then_one(l):
    seq = [0] * (l - 1) + [1]
    assert brute_force_complexity(seq) == l
    assert berlekamp_massey(seq) == l


@settings(max_examples=150, deadline=None)
@given(st.lists(st.integers(0, 1), max_size=12))
def test_matches_brute_force(seq):
    assert berlekamp_massey(seq) == brute_force_complexity(seq)


@settings(max_examples=40, deadline=None)
@given(st.lists(st.integers(0, 1), min_size=1, max_size=11))
def test_profile_matches_prefix_brute_force(seq):
    profile = complexity_profile(seq, stride=1)
    assert profile.complexity.tolist() == [brute_force_complexity(seq[:l]) for l in range(1, len(seq) + 1)]


@pytest.mark.parametrize("n, taps", [(4, {3, 4}), (8, {4, 5, 6, 8}), (16, {11, 13, 14, 16})])
def test_lfsr_windows_give_register_length(n, taps):
    bits = primary_stream(LfsrConfig(n, taps), 1, 4 * n + 300)
    for start in range(0, 300, 7):
        assert berlekamp_massey(bits[start : start + 2 * n]) == n
        assert berlekamp_massey(bits[start : start + 4 * n]) == n


def test_profile_saturates_on_primary_stream():
    bits = primary_stream(LfsrConfig.standard16(), 1, 4096)
    profile = complexity_profile(bits, stride=1)
    L = profile.complexity
    assert (L[31:] == 16).all()
    assert (np.diff(L) >= 0).all()
    assert (L <= profile.lengths).all()


def test_stride_sampling():
    rng = np.random.default_rng(3)
    bits = rng.integers(0, 2, 1000)
    full = complexity_profile(bits, 1)
    sampled = complexity_profile(bits, 64)
    assert sampled.lengths.tolist() == list(range(64, 1001, 64))
    assert sampled.complexity.tolist() == full.complexity[63::64].tolist()


def test_random_profile_tracks_half():
    rng = np.random.default_rng(11)
    profile = complexity_profile(rng.integers(0, 2, 5000), 64)
    assert profile.max_deviation() <= 10


def test_bad_stride():
    with pytest.raises(ValueError):
        complexity_profile([0, 1], 0)
