"""Full-period characterization of an output stream.

Every function here treats its input as exactly one period of a periodic
sequence, so windows, runs, correlations and the spectrum all wrap.
"""

from __future__ import annotations

import numpy as np
from scipy import stats

from .extractors import AnnotatedStream, circular_runs
from .series import SeriesTable
from .validation import check_bits

__all__ = [
    "pattern_counts",
    "pattern_histogram",
    "pattern_chi_square",
    "run_length_histogram",
    "autocorrelation",
    "autocorrelation_full",
    "correlation_std",
    "power_spectrum",
    "power_spectrum_full",
    "input_cost_histogram",
]


def pattern_counts(bits, width: int = 16) -> np.ndarray:
    """Occurrences of each ``width``-bit pattern among the N circular windows.

    The first bit of a window is the most significant bit of its pattern.
    """
    a = check_bits(bits).astype(np.int64)
    if a.size == 0:
        return np.zeros(1 << width, dtype=np.int64)
    idx = np.arange(a.size)
    patterns = np.zeros(a.size, dtype=np.int64)
    for k in range(width):
        patterns = (patterns << 1) | a[(idx + k) % a.size]
    return np.bincount(patterns, minlength=1 << width)


def pattern_histogram(counts, period: int | None = None) -> SeriesTable:
    """Number of patterns seen exactly ``k`` times, with binomial reference.

    The reference is ``2**w * Binomial(N, 2**-w).pmf(k)`` where ``N`` is the
    number of windows (the period length).
    """
    counts = np.asarray(counts, dtype=np.int64)
    n_patterns = counts.size
    if period is None:
        period = int(counts.sum())
    hist = np.bincount(counts)
    k = np.arange(hist.size)
    ref = n_patterns * stats.binom.pmf(k, period, 1 / n_patterns)
    return SeriesTable("pattern repetitions", k, hist, ref, ("repetitions", "patterns", "binomial"))


def pattern_chi_square(table: SeriesTable, min_expected: float = 5.0) -> tuple[float, float, int]:
    """Chi-square of a pattern histogram against its binomial reference.

    Bins with expectation below ``min_expected`` are pooled into their
    neighbour so every tested bin meets it.  Returns ``(chi2, p, dof)``.
    """
    k = table.x.astype(np.int64)
    obs = table.y.astype(float)
    total = obs.sum()
    period = int((k * obs).sum())
    n_patterns = int(total)
    kmax = max(int(k.max()), 1)
    full_k = np.arange(kmax + 1)
    exp = n_patterns * stats.binom.pmf(full_k, period, 1 / n_patterns)
    exp[-1] += n_patterns * stats.binom.sf(kmax, period, 1 / n_patterns)
    full_obs = np.zeros(kmax + 1)
    full_obs[k] = obs
    pooled_obs, pooled_exp = [], []
    acc_o = acc_e = 0.0
    for o, e in zip(full_obs, exp):
        acc_o += o
        acc_e += e
        if acc_e >= min_expected:
            pooled_obs.append(acc_o)
            pooled_exp.append(acc_e)
            acc_o = acc_e = 0.0
    if acc_e > 0 and pooled_exp:
        pooled_obs[-1] += acc_o
        pooled_exp[-1] += acc_e
    pooled_obs = np.array(pooled_obs)
    pooled_exp = np.array(pooled_exp)
    chi2 = float(((pooled_obs - pooled_exp) ** 2 / pooled_exp).sum())
    dof = max(pooled_obs.size - 1, 1)
    return chi2, float(stats.chi2.sf(chi2, dof)), dof


def run_length_histogram(bits) -> dict[int, SeriesTable]:
    """Per bit value, counts of maximal circular runs of each length.

    The reference column is the count expected under random termination,
    ``runs_of_value * 0.5**l``.
    """
    _, lengths, values = circular_runs(bits)
    out = {}
    for v in (0, 1):
        ls = lengths[values == v]
        hist = np.bincount(ls) if ls.size else np.zeros(1, dtype=np.int64)
        x = np.arange(1, max(hist.size, 2))
        y = hist[1:] if hist.size > 1 else np.zeros(1, dtype=np.int64)
        ref = ls.size * 0.5 ** x
        name = "zeros" if v == 0 else "ones"
        out[v] = SeriesTable(f"runs of {name}", x, y, ref, ("length", "runs", "random"))
    return out


def _pm1(bits) -> np.ndarray:
    return check_bits(bits).astype(np.float64) * 2 - 1


def autocorrelation_full(bits) -> np.ndarray:
    """Circular correlation of the ±1 mapped stream over all N lags.

    Each lag sum is an integer, so the FFT result is rounded before the
    division and ``r[0]`` is exactly 1.
    """
    s = _pm1(bits)
    n = s.size
    f = np.fft.rfft(s)
    sums = np.rint(np.fft.irfft(f * np.conj(f), n))
    return sums / n


def autocorrelation(bits) -> SeriesTable:
    r = autocorrelation_full(bits)
    half = r.size // 2
    return SeriesTable("autocorrelation", np.arange(half + 1), r[: half + 1], columns=("lag", "r", "ref"))


def correlation_std(table: SeriesTable) -> float:
    """Standard deviation of the one-sided correlation, lag 0 excluded."""
    return float(np.std(table.y[1:]))


def power_spectrum_full(bits) -> np.ndarray:
    """Two-sided ``|DFT_k|**2 / N**2`` of the raw 0/1 sequence."""
    a = check_bits(bits).astype(np.float64)
    n = a.size
    return np.abs(np.fft.fft(a)) ** 2 / n**2


def power_spectrum(bits) -> SeriesTable:
    a = check_bits(bits).astype(np.float64)
    n = a.size
    p = np.abs(np.fft.rfft(a)) ** 2 / n**2
    ref = np.full(p.size, a.var() / max(n - 1, 1))
    ref[0] = a.mean() ** 2
    return SeriesTable("power spectrum", np.arange(p.size), p, ref, ("bin", "power", "white"))


def input_cost_histogram(stream: AnnotatedStream) -> SeriesTable:
    """Histogram of primary bits spent per valid output bit.

    Reference: geometric law with success probability equal to the
    generator's efficiency, ``V * q * (1 - q)**(c - 1)`` for ``c >= 1``,
    whose mean cost ``1/q`` matches the observed one.
    """
    costs = stream.valid_costs
    if costs.size == 0:
        return SeriesTable("input cost", np.arange(1), np.zeros(1, dtype=np.int64), np.zeros(1))
    hist = np.bincount(costs)
    c = np.arange(hist.size)
    q = costs.size / stream.primary_bits
    ref = np.where(c >= 1, costs.size * q * (1 - q) ** np.maximum(c - 1, 0), 0.0)
    return SeriesTable("input cost", c, hist, ref, ("cost", "count", "geometric"))
