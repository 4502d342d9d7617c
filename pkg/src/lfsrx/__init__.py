"""LFSR pseudo-random generators with output extractors, plus the tools to
characterize their output over full periods."""

from .errors import ConfigError, LengthError, LfsrxError, RangeError, SeedError, UsageError
from .extractors import (
    AnnotatedStream,
    AnnotatedSymbol,
    Extractor,
    GeneratorSpec,
    LfsrGenerator,
    PeriodStats,
    RunLengthExtractor,
    RunTripletExtractor,
    ThreeBitExtractor,
    TriState,
    VonNeumannExtractor,
    full_period_stream,
    run_generator,
)
from .lfsr import DEFAULT_TAPS, LfsrConfig, LfsrState, Mode, measure_period, new_lfsr

__version__ = "0.1.0"

__all__ = [
    "AnnotatedStream",
    "AnnotatedSymbol",
    "ConfigError",
    "DEFAULT_TAPS",
    "Extractor",
    "GeneratorSpec",
    "LengthError",
    "LfsrConfig",
    "LfsrGenerator",
    "LfsrState",
    "LfsrxError",
    "Mode",
    "PeriodStats",
    "RangeError",
    "RunLengthExtractor",
    "RunTripletExtractor",
    "SeedError",
    "ThreeBitExtractor",
    "TriState",
    "UsageError",
    "VonNeumannExtractor",
    "full_period_stream",
    "measure_period",
    "new_lfsr",
    "run_generator",
]
