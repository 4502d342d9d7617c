"""Assemble the JSON report and figure series for one stream."""

from __future__ import annotations

import json
import math
import os
import tempfile
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from . import analysis
from .complexity import complexity_profile
from .errors import LengthError, UsageError
from .extractors import AnnotatedStream, Extractor, GeneratorSpec
from .fips import SAMPLE_BITS, fips_report
from .lfsr import DEFAULT_TAPS, LfsrConfig, Mode
from .series import SeriesTable

REPORT_KEYS = (
    "generator",
    "period_stats",
    "fips",
    "patterns",
    "run_lengths",
    "correlation",
    "spectrum",
    "complexity",
    "cost",
)

FIGURES = (7, 8, 9, 10, 11, 12, 13)
# figures that only make sense on one complete output period
FULL_PERIOD_FIGURES = frozenset({7, 8, 9, 10, 11, 13})


@dataclass(frozen=True)
class Preset:
    name: str
    core: LfsrConfig
    extractor: Extractor
    description: str

    @property
    def default_seed(self) -> int:
        return 0 if self.core.extended else 1

    def spec(self, seed=None) -> GeneratorSpec:
        return GeneratorSpec(self.core, self.extractor, self.default_seed if seed is None else seed)

    def line(self) -> str:
        taps = ",".join(str(t) for t in sorted(self.core.taps))
        return (
            f"{self.name}: {self.core.mode.value} core, period {self.core.max_period}, "
            f"taps {{{taps}}}, extractor {self.extractor.value} ({self.description})"
        )


PRESETS = {
    p.name: p
    for p in (
        Preset("slfsr16-vne", LfsrConfig(16, DEFAULT_TAPS, Mode.STANDARD), Extractor.VON_NEUMANN, "von Neumann"),
        Preset("elfsr16-3be", LfsrConfig(16, DEFAULT_TAPS, Mode.EXTENDED), Extractor.THREE_BIT, "three-bit"),
        Preset("slfsr16-re", LfsrConfig(16, DEFAULT_TAPS, Mode.STANDARD), Extractor.RUN_TRIPLET, "run"),
    )
}


def ratio(num: int, den: int) -> dict:
    g = math.gcd(num, den) or 1
    return {"numerator": num // g, "denominator": den // g, "value": num / den if den else None}


def generator_info(spec: GeneratorSpec | None, preset: str | None = None, source: str | None = None) -> dict:
    if spec is None:
        return {
            "source": "file",
            "input": source,
            "preset": None,
            "mode": None,
            "width": None,
            "taps": None,
            "extractor": None,
            "seed": None,
        }
    width = (spec.core.length + 3) // 4
    return {
        "source": "generator",
        "input": None,
        "preset": preset,
        "mode": spec.core.mode.value,
        "width": spec.core.length,
        "taps": sorted(spec.core.taps),
        "extractor": spec.extractor.value,
        "seed": f"0x{spec.seed:0{width}x}",
    }


def build_report(
    bits,
    *,
    stream: AnnotatedStream | None = None,
    full_period: bool = False,
    fips: bool = False,
    figures=(),
    generator: dict | None = None,
    stride: int = 64,
) -> tuple[dict, dict[str, SeriesTable]]:
    """Run the selected analyses on ``bits`` (the valid output bits).

    ``stream`` carries the annotated slots when the bits came from a
    generator; without it the period statistics are limited to bit counts
    and the input-cost analysis is unavailable.
    """
    bits = np.asarray(bits, dtype=np.uint8)
    figures = sorted(set(figures))
    bad = [f for f in figures if f not in FIGURES]
    if bad:
        raise UsageError(f"unknown figure numbers {bad}; choose from {list(FIGURES)}")
    if not full_period:
        windowed = sorted(FULL_PERIOD_FIGURES.intersection(figures))
        if windowed:
            raise UsageError(f"figures {windowed} need --full-period")
    if 13 in figures and stream is None:
        raise UsageError("input-cost histogram (figure 13) needs a generator, not an input file")

    report = dict.fromkeys(REPORT_KEYS)
    report["generator"] = generator or generator_info(None)
    series: dict[str, SeriesTable] = {}

    if full_period:
        if stream is not None:
            report["period_stats"] = stream.stats().as_dict()
        else:
            ones = int(bits.sum())
            report["period_stats"] = {
                "slots": None,
                "valid": int(bits.size),
                "zeros": int(bits.size) - ones,
                "ones": ones,
                "primary_bits": None,
                "efficiency": None,
            }

    if fips:
        if bits.size < SAMPLE_BITS:
            raise LengthError(f"FIPS tests need {SAMPLE_BITS} bits, stream has {bits.size}")
        report["fips"] = fips_report(bits[:SAMPLE_BITS]).as_dict()

    if 7 in figures or 8 in figures:
        counts = analysis.pattern_counts(bits)
        hist = analysis.pattern_histogram(counts, period=bits.size)
        chi2, p, dof = analysis.pattern_chi_square(hist)
        report["patterns"] = {
            "width": 16,
            "windows": int(bits.size),
            "max_count": int(counts.max()),
            "missing": int((counts == 0).sum()),
            "chi_square": chi2,
            "p_value": p,
            "dof": dof,
        }
        if 7 in figures:
            series["fig07_patterns"] = SeriesTable(
                "pattern counts", np.arange(counts.size), counts, columns=("pattern", "count", "ref")
            )
        if 8 in figures:
            series["fig08_pattern_hist"] = hist

    if 9 in figures:
        runs = analysis.run_length_histogram(bits)
        report["run_lengths"] = {
            name: {
                "runs": int(runs[v].y.sum()),
                "longest": int(runs[v].x[np.flatnonzero(runs[v].y)[-1]]) if runs[v].y.any() else 0,
                "bits": int((runs[v].x * runs[v].y).sum()),
            }
            for name, v in (("zeros", 0), ("ones", 1))
        }
        series["fig09_runs_zeros"] = runs[0]
        series["fig09_runs_ones"] = runs[1]

    if 10 in figures:
        corr = analysis.autocorrelation(bits)
        report["correlation"] = {
            "r0": float(corr.y[0]),
            "std": analysis.correlation_std(corr),
            "expected_std": 1 / math.sqrt(bits.size),
            "lags": int(corr.x[-1]),
        }
        series["fig10_correlation"] = corr

    if 11 in figures:
        spec = analysis.power_spectrum(bits)
        full = analysis.power_spectrum_full(bits)
        report["spectrum"] = {
            "p0": float(spec.y[0]),
            "mean_non_dc": float(spec.y[1:].mean()),
            "expected_non_dc": float(bits.var() / (bits.size - 1)),
            "parseval_sum": float(full.sum()),
            "mean_square": float(bits.mean()),
        }
        series["fig11_spectrum"] = spec

    if 12 in figures:
        profile = complexity_profile(bits, stride)
        checkpoints = [
            [int(l), int(L)] for l, L in profile.rows() if l & (l - 1) == 0 or l == profile.lengths[-1]
        ]
        report["complexity"] = {
            "stride": stride,
            "length": int(profile.lengths[-1]) if profile.lengths.size else 0,
            "final": int(profile.complexity[-1]) if profile.complexity.size else 0,
            "max_deviation": profile.max_deviation(),
            "checkpoints": checkpoints,
        }
        series["fig12_complexity"] = SeriesTable(
            "linear complexity",
            profile.lengths,
            profile.complexity,
            profile.lengths / 2,
            ("length", "complexity", "ideal"),
        )

    if 13 in figures:
        cost = analysis.input_cost_histogram(stream)
        costs = stream.valid_costs
        report["cost"] = {
            "histogram": {str(int(c)): int(n) for c, n in zip(cost.x, cost.y) if n},
            "min": int(costs.min()),
            "max": int(costs.max()),
            "mean": ratio(int(costs.sum()), int(costs.size)),
        }
        series["fig13_cost"] = cost

    return report, series


def atomic_write_bytes(path, data: bytes) -> Path:
    """Write to a temporary sibling, then rename over ``path``."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=f".{path.name}.", suffix=".tmp")
    try:
        with os.fdopen(fd, "wb") as fh:
            fh.write(data)
        os.replace(tmp, path)
    except BaseException:
        os.unlink(tmp)
        raise
    return path


def write_outputs(out_dir, report: dict, series: dict[str, SeriesTable]) -> list[Path]:
    out_dir = Path(out_dir)
    written = [table.to_csv(out_dir / f"{name}.csv") for name, table in series.items()]
    written.append(atomic_write_bytes(out_dir / "report.json", (json.dumps(report, indent=2) + "\n").encode()))
    return written
