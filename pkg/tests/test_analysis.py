import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from lfsrx import LfsrConfig
from lfsrx.analysis import (
    autocorrelation,
    autocorrelation_full,
    correlation_std,
    input_cost_histogram,
    pattern_chi_square,
    pattern_counts,
    pattern_histogram,
    power_spectrum,
    power_spectrum_full,
    run_length_histogram,
)
from lfsrx.extractors import circular_runs
from lfsrx.lfsr import primary_stream

from oracles import circular_runs_loop

bit_lists = st.lists(st.integers(0, 1), min_size=1, max_size=70)


@pytest.fixture(scope="module")
def primary16():
    return primary_stream(LfsrConfig.standard16(), 1, 65535)


class TestPatterns:
    @settings(max_examples=50, deadline=None)
    @given(bit_lists, st.integers(1, 6))
    def test_counts_match_loop(self, bits, width):
        n = len(bits)
        expected = np.zeros(1 << width, dtype=int)
        for i in range(n):
            v = 0
            for k in range(width):
                v = (v << 1) | bits[(i + k) % n]
            expected[v] += 1
        assert pattern_counts(bits, width).tolist() == expected.tolist()

    def test_primary_census(self, primary16):
        counts = pattern_counts(primary16)
        assert counts[0] == 0
        assert (counts[1:] == 1).all()

    def test_degenerate_histogram(self):
        n = 1000
        table = pattern_histogram(pattern_counts(np.zeros(n, dtype=np.uint8)))
        assert table.y[n] == 1
        assert table.y[0] == 65535
        assert table.y.sum() == 65536

    def test_conservation(self, full_periods):
        bits = full_periods["slfsr16-vne"].valid_bits
        table = pattern_histogram(pattern_counts(bits))
        assert table.y.sum() == 65536
        assert (table.x * table.y).sum() == 32768

    def test_re_support(self, full_periods):
        table = pattern_histogram(pattern_counts(full_periods["slfsr16-re"].valid_bits))
        assert table.x[np.flatnonzero(table.y)].tolist() == list(range(7))

    def test_binomial_reference_sums(self, full_periods):
        table = pattern_histogram(pattern_counts(full_periods["slfsr16-vne"].valid_bits))
        assert table.ref.sum() == pytest.approx(65536, rel=1e-6)

    def test_chi_square_accepts_random_stream(self):
        rng = np.random.default_rng(2024)
        table = pattern_histogram(pattern_counts(rng.integers(0, 2, 32768)))
        chi2, p, dof = pattern_chi_square(table)
        assert dof >= 3
        assert p > 1e-3


class TestRuns:
    @settings(max_examples=80, deadline=None)
    @given(bit_lists)
    def test_circular_runs_match_loop(self, bits):
        _, lengths, values = circular_runs(bits)
        got = sorted(zip(values.tolist(), lengths.tolist()))
        assert got == sorted(circular_runs_loop(bits))

    def test_alternating(self):
        tables = run_length_histogram(np.tile([0, 1], 500))
        for v in (0, 1):
            assert tables[v].y.tolist()[0] == 500
            assert tables[v].y[1:].sum() == 0

    def test_primary_longest_runs(self, primary16):
        runs = circular_runs_loop(primary16.tolist())
        assert max(l for v, l in runs if v == 1) == 16
        assert max(l for v, l in runs if v == 0) == 15
        tables = run_length_histogram(primary16)
        assert tables[1].x[np.flatnonzero(tables[1].y)[-1]] == 16
        assert tables[0].x[np.flatnonzero(tables[0].y)[-1]] == 15

    def test_bits_conserved(self, full_periods):
        for stream in full_periods.values():
            bits = stream.valid_bits
            tables = run_length_histogram(bits)
            covered = sum(int((t.x * t.y).sum()) for t in tables.values())
            assert covered == bits.size

    def test_reference_halves(self):
        tables = run_length_histogram(np.tile([0, 0, 1], 10))
        ref = tables[0].ref
        assert np.allclose(ref[1:] / ref[:-1], 0.5)


class TestCorrelation:
    @settings(max_examples=40, deadline=None)
    @given(bit_lists)
    def test_matches_direct_sum(self, bits):
        n = len(bits)
        s = [2 * b - 1 for b in bits]
        direct = [sum(s[i] * s[(i + t) % n] for i in range(n)) / n for t in range(n)]
        assert autocorrelation_full(bits).tolist() == direct

    def test_lag_zero_exact(self, full_periods):
        for stream in full_periods.values():
            assert autocorrelation(stream.valid_bits).y[0] == 1.0

    def test_symmetry(self, full_periods):
        r = autocorrelation_full(full_periods["slfsr16-re"].valid_bits)
        assert np.array_equal(r[1:], r[1:][::-1])

    def test_one_sided_length(self):
        table = autocorrelation(np.tile([0, 1, 1, 0], 8))
        assert table.x.tolist() == list(range(17))

    def test_std_ignores_lag_zero(self):
        table = autocorrelation(np.tile([0, 1], 16))
        assert correlation_std(table) == pytest.approx(np.std(table.y[1:]))


class TestSpectrum:
    @settings(max_examples=30, deadline=None)
    @given(bit_lists)
    def test_matches_direct_dft(self, bits):
        n = len(bits)
        expected = []
        for k in range(n):
            re = sum(b * math.cos(2 * math.pi * k * i / n) for i, b in enumerate(bits))
            im = sum(b * math.sin(2 * math.pi * k * i / n) for i, b in enumerate(bits))
            expected.append((re * re + im * im) / n**2)
        assert np.allclose(power_spectrum_full(bits), expected, atol=1e-12)

    def test_dc_and_parseval(self, full_periods):
        for stream in full_periods.values():
            bits = stream.valid_bits
            assert power_spectrum(bits).y[0] == pytest.approx(0.25, abs=1e-12)
            assert power_spectrum_full(bits).sum() == pytest.approx(0.5, rel=1e-9)

    def test_one_sided_bins(self):
        assert len(power_spectrum(np.tile([0, 1], 8))) == 9
        assert len(power_spectrum(np.tile([0, 1, 1], 5))) == 8


class TestCost:
    def test_vne_support_even(self, full_periods):
        table = input_cost_histogram(full_periods["slfsr16-vne"])
        support = table.x[np.flatnonzero(table.y)]
        assert (support % 2 == 0).all() and support.min() == 2

    def test_3be_zero_bin(self, full_periods):
        table = input_cost_histogram(full_periods["elfsr16-3be"])
        assert table.y[0] > 0

    def test_re_max_and_decay(self, full_periods):
        table = input_cost_histogram(full_periods["slfsr16-re"])
        support = table.x[np.flatnonzero(table.y)]
        assert support.max() == 16
        y = table.y.astype(float)
        assert np.allclose(y[2:9] / y[1:8], 0.5, atol=0.1)

    def test_reference_total(self, full_periods):
        stream = full_periods["slfsr16-re"]
        table = input_cost_histogram(stream)
        # geometric reference with q = 1/2 is 32768 * 0.5**c
        assert table.ref[1] == pytest.approx(32768 * 32768 / 65535 * 1)
        assert table.ref[0] == 0
