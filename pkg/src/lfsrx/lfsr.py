"""Fibonacci linear feedback shift registers, standard and extended.

Flip-flops are numbered 1..n from the feedback input towards the output.
The register contents are held in a Python int with flip-flop ``k`` at bit
``k - 1``, so a hexadecimal seed has flip-flop 1 in its least significant
bit.  The output bit ``a_i`` is the value of flip-flop ``n`` before the
clock pulse.

The extended register adds an all-zero detector over flip-flops 1..n-1
whose output is XORed into the feedback.  This splices the all-zero state
between ``0...01`` (only FF n set) and ``10...0`` (only FF 1 set), giving a
single cycle through all ``2**n`` register values.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Iterable, Sequence, Union

import numpy as np

from .errors import ConfigError, SeedError

__all__ = [
    "DEFAULT_TAPS",
    "Mode",
    "LfsrConfig",
    "LfsrState",
    "new_lfsr",
    "feedback_bit",
    "step",
    "measure_period",
    "primary_stream",
    "parse_seed",
]

DEFAULT_TAPS = frozenset({11, 13, 14, 16})

Seed = Union[int, Sequence[int]]


class Mode(enum.Enum):
    STANDARD = "standard"
    EXTENDED = "extended"


@dataclass(frozen=True)
class LfsrConfig:
    """Register length, feedback taps and feedback mode."""

    length: int
    taps: frozenset = DEFAULT_TAPS
    mode: Mode = Mode.STANDARD

    def __post_init__(self):
        if not isinstance(self.length, (int, np.integer)) or self.length < 1:
            raise ConfigError(f"register length must be a positive integer, got {self.length!r}")
        taps = frozenset(int(t) for t in self.taps)
        if not taps:
            raise ConfigError("tap set must not be empty")
        bad = sorted(t for t in taps if not 1 <= t <= self.length)
        if bad:
            raise ConfigError(f"tap positions {bad} outside 1..{self.length}")
        if self.length not in taps:
            raise ConfigError(f"tap set must contain the last flip-flop {self.length}")
        object.__setattr__(self, "taps", taps)
        object.__setattr__(self, "mode", Mode(self.mode))

    @classmethod
    def standard16(cls) -> "LfsrConfig":
        return cls(16, DEFAULT_TAPS, Mode.STANDARD)

    @classmethod
    def extended16(cls) -> "LfsrConfig":
        return cls(16, DEFAULT_TAPS, Mode.EXTENDED)

    @property
    def extended(self) -> bool:
        return self.mode is Mode.EXTENDED

    @property
    def tap_mask(self) -> int:
        return sum(1 << (t - 1) for t in self.taps)

    @property
    def max_period(self) -> int:
        """Period reached with primitive taps: 2**n - 1, or 2**n when extended."""
        return (1 << self.length) - (0 if self.extended else 1)


def parse_seed(seed: Seed, length: int) -> int:
    """Convert a seed to the packed register int.

    An int is taken as already packed (FF1 = LSB).  A sequence is read as
    bit vector with element 0 loaded into flip-flop 1.
    """
    if isinstance(seed, str):
        seed = int(seed, 16)
    if isinstance(seed, (int, np.integer)):
        seed = int(seed)
        if seed < 0 or seed >> length:
            raise ConfigError(f"seed {seed:#x} does not fit in {length} bits")
        return seed
    bits = [int(b) for b in seed]
    if len(bits) != length:
        raise ConfigError(f"seed has {len(bits)} bits, register has {length}")
    if any(b not in (0, 1) for b in bits):
        raise ConfigError("seed bits must be 0 or 1")
    return sum(b << k for k, b in enumerate(bits))


class LfsrState:
    """Mutable register contents plus a step counter.

    Use :func:`new_lfsr` to construct one with seed validation.
    """

    __slots__ = ("config", "value", "clock", "_mask", "_taps", "_low")

    def __init__(self, config: LfsrConfig, value: int, clock: int = 0):
        self.config = config
        self.value = value
        self.clock = clock
        self._mask = (1 << config.length) - 1
        self._taps = config.tap_mask
        self._low = (1 << (config.length - 1)) - 1

    def __repr__(self):
        width = (self.config.length + 3) // 4
        return (
            f"LfsrState(n={self.config.length}, mode={self.config.mode.value}, "
            f"value=0x{self.value:0{width}x}, clock={self.clock})"
        )

    @property
    def registers(self) -> tuple:
        """Bit vector of the register, index 0 = flip-flop 1."""
        return tuple((self.value >> k) & 1 for k in range(self.config.length))

    def copy(self) -> "LfsrState":
        return LfsrState(self.config, self.value, self.clock)

    def feedback_bit(self) -> int:
        fb = (self.value & self._taps).bit_count() & 1
        if self.config.extended and not (self.value & self._low):
            fb ^= 1
        return fb

    def step(self) -> int:
        out = self.value >> (self.config.length - 1)
        self.value = ((self.value << 1) | self.feedback_bit()) & self._mask
        self.clock += 1
        return out

    def generate(self, count: int) -> np.ndarray:
        """Clock the register ``count`` times and return the output bits."""
        out = np.empty(count, dtype=np.uint8)
        value = self.value
        mask, taps, low = self._mask, self._taps, self._low
        shift = self.config.length - 1
        extended = self.config.extended
        for i in range(count):
            out[i] = value >> shift
            fb = (value & taps).bit_count() & 1
            if extended and not (value & low):
                fb ^= 1
            value = ((value << 1) | fb) & mask
        self.value = value
        self.clock += count
        return out

    def __iter__(self):
        while True:
            yield self.step()


def new_lfsr(config: LfsrConfig, seed: Seed) -> LfsrState:
    """Create a register loaded with ``seed``.

    Raises :class:`SeedError` for the all-zero seed of a standard register,
    which is a fixed point of the linear feedback.
    """
    value = parse_seed(seed, config.length)
    if value == 0 and not config.extended:
        raise SeedError("all-zero seed locks a standard LFSR")
    return LfsrState(config, value)


def feedback_bit(state: LfsrState) -> int:
    return state.feedback_bit()


def step(state: LfsrState) -> int:
    return state.step()


def measure_period(config: LfsrConfig, seed: Seed) -> int:
    """Number of steps until the register first returns to ``seed``.

    Direct iteration, so cost grows as ``2**n``.
    """
    state = new_lfsr(config, seed)
    start = state.value
    mask, taps, low = state._mask, state._taps, state._low
    extended = config.extended
    value = start
    steps = 0
    while True:
        fb = (value & taps).bit_count() & 1
        if extended and not (value & low):
            fb ^= 1
        value = ((value << 1) | fb) & mask
        steps += 1
        if value == start:
            return steps


def primary_stream(config: LfsrConfig, seed: Seed, count: int) -> np.ndarray:
    return new_lfsr(config, seed).generate(count)


def iter_states(config: LfsrConfig, seed: Seed, count: int) -> Iterable[int]:
    """Yield ``count`` successive packed register values starting at the seed."""
    state = new_lfsr(config, seed)
    for _ in range(count):
        yield state.value
        state.step()
