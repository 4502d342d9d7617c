"""FIPS 140-1 statistical tests on a 20000-bit sample.

All bounds are strict; a value equal to a bound fails.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .validation import check_bits

SAMPLE_BITS = 20000
MONOBIT_BOUNDS = (9654, 10346)
POKER_BOUNDS = (1.03, 57.4)
RUN_BOUNDS = {
    1: (2267, 2733),
    2: (1079, 1421),
    3: (502, 748),
    4: (223, 402),
    5: (90, 223),
    6: (90, 223),
}
LONG_RUN = 34


def _sample(bits) -> np.ndarray:
    return check_bits(bits, length=SAMPLE_BITS)


def _inside(value, bounds) -> bool:
    lo, hi = bounds
    return bool(lo < value < hi)


def run_lengths(bits) -> tuple[np.ndarray, np.ndarray]:
    """Values and lengths of the maximal runs of a linear sequence."""
    a = check_bits(bits)
    if a.size == 0:
        return np.empty(0, dtype=np.uint8), np.empty(0, dtype=np.int64)
    starts = np.concatenate(([0], np.flatnonzero(a[1:] != a[:-1]) + 1))
    return a[starts], np.diff(np.append(starts, a.size))


def fips_monobit(bits) -> tuple[int, bool]:
    ones = int(_sample(bits).sum())
    return ones, _inside(ones, MONOBIT_BOUNDS)


def fips_poker(bits) -> tuple[float, bool]:
    a = _sample(bits).reshape(-1, 4)
    nibbles = (a[:, 0] << 3) | (a[:, 1] << 2) | (a[:, 2] << 1) | a[:, 3]
    f = np.bincount(nibbles, minlength=16).astype(np.int64)
    x = 16 / 5000 * int((f * f).sum()) - 5000
    return x, _inside(x, POKER_BOUNDS)


def fips_runs(bits) -> tuple[dict, dict]:
    """Run counts keyed by ``(value, length)`` with length 6 meaning 6+."""
    values, lengths = run_lengths(_sample(bits))
    capped = np.minimum(lengths, 6)
    counts, passed = {}, {}
    for v in (0, 1):
        per_len = np.bincount(capped[values == v], minlength=7)
        for length in range(1, 7):
            counts[(v, length)] = int(per_len[length])
            passed[(v, length)] = _inside(per_len[length], RUN_BOUNDS[length])
    return counts, passed


def fips_long_run(bits) -> tuple[int, bool]:
    """Number of runs of 34 or more identical bits; passes only when zero."""
    _, lengths = run_lengths(_sample(bits))
    x = int((lengths >= LONG_RUN).sum())
    return x, x == 0


@dataclass
class FipsReport:
    monobit_count: int
    monobit_pass: bool
    poker_statistic: float
    poker_pass: bool
    run_counts: dict
    runs_pass: dict
    long_run_count: int
    longest_run: int
    long_run_pass: bool
    passed: bool = field(init=False)

    def __post_init__(self):
        self.passed = (
            self.monobit_pass and self.poker_pass and all(self.runs_pass.values()) and self.long_run_pass
        )

    def lines(self) -> list[str]:
        """One human-readable line per test."""
        ok = {True: "pass", False: "FAIL"}
        out = [
            f"monobit   X = {self.monobit_count:<8} {ok[self.monobit_pass]}",
            f"poker     X = {self.poker_statistic:<8.3f} {ok[self.poker_pass]}",
        ]
        for (v, length), count in sorted(self.run_counts.items()):
            tag = f"{length}+" if length == 6 else str(length)
            out.append(f"runs({'zeros' if v == 0 else 'ones '}) l={tag:<2} X = {count:<6} {ok[self.runs_pass[(v, length)]]}")
        out.append(f"long run  X = {self.long_run_count:<8} {ok[self.long_run_pass]}")
        return out

    def as_dict(self) -> dict:
        runs = {}
        for name, v in (("zeros", 0), ("ones", 1)):
            runs[name] = {
                ("6+" if length == 6 else str(length)): {
                    "count": self.run_counts[(v, length)],
                    "pass": self.runs_pass[(v, length)],
                }
                for length in range(1, 7)
            }
        return {
            "monobit": {"count": self.monobit_count, "pass": self.monobit_pass},
            "poker": {"statistic": self.poker_statistic, "pass": self.poker_pass},
            "runs": runs,
            "long_run": {
                "count": self.long_run_count,
                "longest_run": self.longest_run,
                "pass": self.long_run_pass,
            },
            "passed": self.passed,
        }


def fips_report(bits) -> FipsReport:
    sample = _sample(bits)
    mono, mono_ok = fips_monobit(sample)
    poker, poker_ok = fips_poker(sample)
    counts, runs_ok = fips_runs(sample)
    long_count, long_ok = fips_long_run(sample)
    _, lengths = run_lengths(sample)
    return FipsReport(
        monobit_count=mono,
        monobit_pass=mono_ok,
        poker_statistic=poker,
        poker_pass=poker_ok,
        run_counts=counts,
        runs_pass=runs_ok,
        long_run_count=long_count,
        longest_run=int(lengths.max()),
        long_run_pass=long_ok,
    )
