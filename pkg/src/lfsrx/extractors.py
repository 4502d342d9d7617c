"""Translation logics from primary LFSR bits to tri-state output symbols.

Every extractor emits *slots* holding ``0``, ``1`` or the invalid symbol
(Λ).  A slot records how many fresh primary bits were clocked in to produce
it; the cost of a valid bit is the number of primary bits consumed since the
previous valid bit, so the costs of invalid slots roll forward.

Symbols are stored as ``int8`` with :data:`INVALID` = 2.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, NamedTuple

import numpy as np
from sklearn.base import BaseEstimator, TransformerMixin

from .errors import ConfigError, RangeError, SeedError
from .lfsr import LfsrConfig, Mode, Seed, measure_period, new_lfsr, parse_seed
from .validation import check_bits, check_positive_int

__all__ = [
    "INVALID",
    "MAX_FULL_PERIOD_LENGTH",
    "TriState",
    "Extractor",
    "GeneratorSpec",
    "AnnotatedSymbol",
    "AnnotatedStream",
    "PeriodStats",
    "von_neumann_step",
    "three_bit_step",
    "run_triplet_step",
    "run_length_step",
    "von_neumann_extract",
    "three_bit_extract",
    "run_triplet_extract",
    "run_length_extract",
    "run_generator",
    "full_period_stream",
    "VonNeumannExtractor",
    "ThreeBitExtractor",
    "RunTripletExtractor",
    "RunLengthExtractor",
]

INVALID = 2
MAX_FULL_PERIOD_LENGTH = 24


class TriState(enum.IntEnum):
    ZERO = 0
    ONE = 1
    INVALID = INVALID

    @property
    def valid(self) -> bool:
        return self is not TriState.INVALID

    def __str__(self):
        return "Λ" if self is TriState.INVALID else str(int(self))


# index = a0 a1 read as a binary number
VON_NEUMANN_TABLE = np.array([INVALID, 1, 0, INVALID], dtype=np.int8)

# index = a0 a1 a2 read as a binary number; columns are (b_2j, b_2j+1)
THREE_BIT_TABLE = np.array(
    [
        [INVALID, INVALID],
        [0, INVALID],
        [1, 1],
        [0, 1],
        [1, 0],
        [1, INVALID],
        [0, 0],
        [INVALID, INVALID],
    ],
    dtype=np.int8,
)

RUN_TRIPLET_TABLE = np.array([INVALID, INVALID, 0, 1, 0, 1, INVALID, INVALID], dtype=np.int8)


def von_neumann_step(a0: int, a1: int) -> TriState:
    return TriState(int(VON_NEUMANN_TABLE[(a0 << 1) | a1]))


def three_bit_step(a0: int, a1: int, a2: int) -> tuple[TriState, TriState]:
    first, second = THREE_BIT_TABLE[(a0 << 2) | (a1 << 1) | a2]
    return TriState(int(first)), TriState(int(second))


def run_triplet_step(a0: int, a1: int, a2: int) -> TriState:
    """Emit the third bit when the first two differ, otherwise Λ."""
    return TriState(int(RUN_TRIPLET_TABLE[(a0 << 2) | (a1 << 1) | a2]))


def run_length_step(run_value: int, run_length: int) -> int:
    """Output bit for a completed run of ``run_length`` copies of ``run_value``.

    A single bit maps to its complement, a longer run to its own value.
    """
    if run_length < 1:
        raise ValueError("run length must be at least 1")
    return run_value if run_length >= 2 else 1 - run_value


class Extractor(enum.Enum):
    VON_NEUMANN = "vn"
    THREE_BIT = "3be"
    RUN_TRIPLET = "run"
    RUN_LENGTH = "runlen"

    @property
    def chunk(self) -> int:
        """Fresh primary bits read per extractor step."""
        return {"vn": 2, "3be": 3}.get(self.value, 1)


@dataclass(frozen=True)
class GeneratorSpec:
    core: LfsrConfig
    extractor: Extractor
    seed: Seed = 1

    def __post_init__(self):
        object.__setattr__(self, "extractor", Extractor(self.extractor))
        value = parse_seed(self.seed, self.core.length)
        if value == 0 and not self.core.extended:
            raise SeedError("all-zero seed locks a standard LFSR")
        object.__setattr__(self, "seed", value)
        if self.extractor is Extractor.THREE_BIT and not self.core.extended:
            raise ConfigError(
                "the three-bit extractor needs an extended core so the primary "
                "period 2**n is coprime with its 3-bit chunks"
            )

    def new_core(self):
        return new_lfsr(self.core, self.seed)


class AnnotatedSymbol(NamedTuple):
    symbol: TriState
    primary_cost: int


@dataclass(frozen=True)
class PeriodStats:
    slots: int
    valid: int
    zeros: int
    ones: int
    primary_bits: int

    @property
    def efficiency(self) -> Fraction:
        """Valid output bits per primary bit consumed."""
        return Fraction(self.valid, self.primary_bits)

    def as_dict(self) -> dict:
        eff = self.efficiency
        return {
            "slots": self.slots,
            "valid": self.valid,
            "zeros": self.zeros,
            "ones": self.ones,
            "primary_bits": self.primary_bits,
            "efficiency": {
                "numerator": eff.numerator,
                "denominator": eff.denominator,
                "value": float(eff),
            },
        }


@dataclass
class AnnotatedStream:
    """Extractor output slots with per-slot primary consumption.

    ``circular`` marks a stream covering exactly one output period; costs
    then wrap so that invalid slots at the end are charged to the first
    valid symbol.
    """

    symbols: np.ndarray
    consumed: np.ndarray
    circular: bool = False

    def __post_init__(self):
        self.symbols = np.asarray(self.symbols, dtype=np.int8)
        self.consumed = np.asarray(self.consumed, dtype=np.int64)
        if self.symbols.shape != self.consumed.shape:
            raise ValueError("symbols and consumed must have the same length")

    def __len__(self):
        return self.symbols.size

    def __iter__(self) -> Iterator[AnnotatedSymbol]:
        costs = self.costs
        for sym, cost in zip(self.symbols.tolist(), costs.tolist()):
            yield AnnotatedSymbol(TriState(sym), cost)

    def __getitem__(self, index: int) -> AnnotatedSymbol:
        return AnnotatedSymbol(TriState(int(self.symbols[index])), int(self.costs[index]))

    @property
    def valid_mask(self) -> np.ndarray:
        return self.symbols != INVALID

    @property
    def valid_bits(self) -> np.ndarray:
        return self.symbols[self.valid_mask].astype(np.uint8)

    @property
    def primary_bits(self) -> int:
        return int(self.consumed.sum())

    @property
    def costs(self) -> np.ndarray:
        """Per-slot cost: zero on invalid slots, accumulated on valid ones."""
        costs = np.zeros(self.symbols.size, dtype=np.int64)
        idx = np.flatnonzero(self.valid_mask)
        if idx.size == 0:
            return costs
        cum = np.cumsum(self.consumed)
        at = cum[idx]
        costs[idx] = np.diff(at, prepend=0)
        if self.circular:
            costs[idx[0]] += cum[-1] - at[-1]
        return costs

    @property
    def valid_costs(self) -> np.ndarray:
        return self.costs[self.valid_mask]

    def stats(self) -> PeriodStats:
        bits = self.valid_bits
        ones = int(bits.sum())
        return PeriodStats(
            slots=len(self),
            valid=bits.size,
            zeros=bits.size - ones,
            ones=ones,
            primary_bits=self.primary_bits,
        )


def von_neumann_extract(primary) -> AnnotatedStream:
    """Non-overlapping pairs; a trailing odd bit is left unread."""
    a = check_bits(primary, name="primary")
    pairs = a[: a.size - a.size % 2].reshape(-1, 2)
    symbols = VON_NEUMANN_TABLE[(pairs[:, 0] << 1) | pairs[:, 1]]
    return AnnotatedStream(symbols, np.full(symbols.size, 2))


def three_bit_extract(primary) -> AnnotatedStream:
    a = check_bits(primary, name="primary")
    chunks = a[: a.size - a.size % 3].reshape(-1, 3)
    index = (chunks[:, 0] << 2) | (chunks[:, 1] << 1) | chunks[:, 2]
    symbols = THREE_BIT_TABLE[index].reshape(-1)
    consumed = np.zeros(symbols.size, dtype=np.int64)
    consumed[0::2] = 3
    return AnnotatedStream(symbols, consumed)


def run_triplet_extract(primary, circular: bool = False) -> AnnotatedStream:
    """Sliding 3-bit window, one slot per primary bit.

    Streaming mode spends the first two bits filling the window (charged to
    the first slot).  Circular mode treats ``primary`` as one period and
    wraps the window, giving exactly one slot per primary bit.
    """
    a = check_bits(primary, name="primary")
    if circular:
        idx = (np.roll(a, 2) << 2) | (np.roll(a, 1) << 1) | a
        return AnnotatedStream(RUN_TRIPLET_TABLE[idx], np.ones(a.size), circular=True)
    if a.size < 3:
        return AnnotatedStream(np.empty(0), np.empty(0))
    idx = (a[:-2] << 2) | (a[1:-1] << 1) | a[2:]
    consumed = np.ones(idx.size, dtype=np.int64)
    consumed[0] = 3
    return AnnotatedStream(RUN_TRIPLET_TABLE[idx], consumed)


def _runs(a: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Start indices and lengths of maximal runs in a linear sequence."""
    if a.size == 0:
        return np.empty(0, dtype=np.int64), np.empty(0, dtype=np.int64)
    starts = np.concatenate(([0], np.flatnonzero(a[1:] != a[:-1]) + 1))
    lengths = np.diff(np.append(starts, a.size))
    return starts, lengths


def circular_runs(bits) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Runs of a periodic sequence with the run spanning the wrap stitched.

    Returns ``(starts, lengths, values)``.  A constant sequence has no run
    boundary and yields a single run of the full length starting at 0.
    """
    a = check_bits(bits)
    n = a.size
    if n == 0:
        empty = np.empty(0, dtype=np.int64)
        return empty, empty, empty
    boundaries = np.flatnonzero(a != np.roll(a, 1))
    if boundaries.size == 0:
        return np.array([0]), np.array([n]), np.array([int(a[0])])
    lengths = np.diff(np.append(boundaries, boundaries[0] + n))
    return boundaries, lengths, a[boundaries].astype(np.int64)


def run_length_extract(primary, circular: bool = False) -> AnnotatedStream:
    """Translate whole runs; every slot is valid.

    Streaming mode skips the leading run (its start is unseen, exactly as
    the triplet window never judges it) and leaves the trailing run pending
    until an opposite bit terminates it.  Circular mode orders runs so the
    output matches :func:`run_triplet_extract` with ``circular=True``.
    """
    a = check_bits(primary, name="primary")
    if circular:
        starts, lengths, values = circular_runs(a)
        if starts.size < 2:
            return AnnotatedStream(np.empty(0), np.empty(0), circular=True)
        # the triplet form emits at the second bit of each run
        order = np.argsort((starts + 1) % a.size, kind="stable")
        lengths, values = lengths[order], values[order]
        symbols = np.where(lengths >= 2, values, 1 - values)
        return AnnotatedStream(symbols, lengths, circular=True)
    starts, lengths = _runs(a)
    if starts.size < 3:
        return AnnotatedStream(np.empty(0), np.empty(0))
    # drop the leading run and the unterminated trailing run
    values = a[starts[1:-1]].astype(np.int64)
    done = lengths[1:-1].copy()
    symbols = np.where(done >= 2, values, 1 - values)
    consumed = done.copy()
    consumed[0] += lengths[0]
    return AnnotatedStream(symbols, consumed)


_LINEAR_EXTRACT = {
    Extractor.VON_NEUMANN: von_neumann_extract,
    Extractor.THREE_BIT: three_bit_extract,
    Extractor.RUN_TRIPLET: run_triplet_extract,
    Extractor.RUN_LENGTH: run_length_extract,
}


def run_generator(spec: GeneratorSpec, count: int) -> AnnotatedStream:
    """First ``count`` output slots of the generator described by ``spec``.

    Von Neumann reads 2 fresh bits per slot; three-bit reads 3 per pair of
    slots; the run triplet reads 1 per slot after a 2-bit warm-up; the
    run-length form emits one (always valid) slot per completed run.
    """
    count = int(count)
    if count < 0:
        raise ValueError("count must be non-negative")
    core = spec.new_core()
    kind = spec.extractor
    if kind is Extractor.VON_NEUMANN:
        return von_neumann_extract(core.generate(2 * count))
    if kind is Extractor.THREE_BIT:
        stream = three_bit_extract(core.generate(3 * math.ceil(count / 2)))
        return AnnotatedStream(stream.symbols[:count], stream.consumed[:count])
    if kind is Extractor.RUN_TRIPLET:
        if count == 0:
            return AnnotatedStream(np.empty(0), np.empty(0))
        return run_triplet_extract(core.generate(count + 2))
    chunk = max(64, 4 * count)
    primary = core.generate(chunk)
    while True:
        stream = run_length_extract(primary)
        if len(stream) >= count:
            return AnnotatedStream(stream.symbols[:count], stream.consumed[:count])
        primary = np.concatenate([primary, core.generate(chunk)])


def full_period_stream(spec: GeneratorSpec) -> tuple[AnnotatedStream, PeriodStats]:
    """Exactly one output period, closed circularly.

    The primary stream is run for ``chunk / gcd(period, chunk)`` periods so
    extractor chunks realign with the register cycle: two periods for von
    Neumann over a standard core, three for the three-bit extractor over an
    extended core, one for the run extractor.
    """
    n = spec.core.length
    if n > MAX_FULL_PERIOD_LENGTH:
        raise RangeError(
            f"full-period enumeration limited to n <= {MAX_FULL_PERIOD_LENGTH}, got {n}"
        )
    period = measure_period(spec.core, spec.seed)
    chunk = spec.extractor.chunk
    reps = chunk // math.gcd(period, chunk)
    primary = spec.new_core().generate(period * reps)
    kind = spec.extractor
    if kind in (Extractor.RUN_TRIPLET, Extractor.RUN_LENGTH):
        stream = _LINEAR_EXTRACT[kind](primary, circular=True)
    else:
        stream = _LINEAR_EXTRACT[kind](primary)
        stream.circular = True
    return stream, stream.stats()


class _ExtractorTransformer(TransformerMixin, BaseEstimator):
    """Stateless transformer from primary bits to valid output bits.

    ``fit`` only validates its input; ``transform`` returns the valid bits
    and :meth:`transform_annotated` the full slot stream.
    """

    kind: Extractor

    def fit(self, X, y=None):
        check_bits(X, name="X")
        return self

    def transform_annotated(self, X) -> AnnotatedStream:
        return _LINEAR_EXTRACT[self.kind](X)

    def transform(self, X) -> np.ndarray:
        return self.transform_annotated(X).valid_bits

    def __sklearn_tags__(self):
        tags = super().__sklearn_tags__()
        tags.requires_fit = False
        return tags


class VonNeumannExtractor(_ExtractorTransformer):
    kind = Extractor.VON_NEUMANN


class ThreeBitExtractor(_ExtractorTransformer):
    kind = Extractor.THREE_BIT


class RunTripletExtractor(_ExtractorTransformer):
    kind = Extractor.RUN_TRIPLET

    def __init__(self, circular: bool = False):
        self.circular = circular

    def transform_annotated(self, X) -> AnnotatedStream:
        return run_triplet_extract(X, circular=self.circular)


class RunLengthExtractor(_ExtractorTransformer):
    kind = Extractor.RUN_LENGTH

    def __init__(self, circular: bool = False):
        self.circular = circular

    def transform_annotated(self, X) -> AnnotatedStream:
        return run_length_extract(X, circular=self.circular)


class LfsrGenerator(BaseEstimator):
    """Register plus extractor with sklearn-style parameters.

    Parameters mirror the CLI flags so a generator can be cloned, compared
    and grid-searched like any other estimator.
    """

    def __init__(self, width=16, taps=(11, 13, 14, 16), mode="standard", extractor="vn", seed=None):
        self.width = width
        self.taps = taps
        self.mode = mode
        self.extractor = extractor
        self.seed = seed

    @property
    def spec(self) -> GeneratorSpec:
        check_positive_int(self.width, "width")
        core = LfsrConfig(self.width, frozenset(self.taps), Mode(self.mode))
        seed = self.seed
        if seed is None:
            seed = 0 if core.extended else 1
        return GeneratorSpec(core, Extractor(self.extractor), seed)

    def generate(self, count: int) -> np.ndarray:
        """First ``count`` valid output bits."""
        spec = self.spec
        slots = max(count, 1)
        while True:
            stream = run_generator(spec, slots)
            bits = stream.valid_bits
            if bits.size >= count:
                return bits[:count]
            slots *= 2

    def full_period(self) -> tuple[AnnotatedStream, PeriodStats]:
        return full_period_stream(self.spec)
