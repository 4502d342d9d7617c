"""Bit stream file formats.

``ascii``: characters ``0``/``1``, a newline after every 64 bits.
``packed``: first bit in the least significant bit of the first byte; the
final partial byte is zero-padded in its high bits.
"""

from __future__ import annotations

import numpy as np

from .validation import check_bits

LINE_BITS = 64
FORMATS = ("ascii", "packed")


def to_ascii(bits) -> str:
    a = check_bits(bits)
    chars = (a + ord("0")).tobytes().decode("ascii")
    lines = [chars[i : i + LINE_BITS] for i in range(0, len(chars), LINE_BITS)]
    return "".join(line + "\n" for line in lines)


def to_packed(bits) -> bytes:
    return np.packbits(check_bits(bits), bitorder="little").tobytes()


def from_ascii(text) -> np.ndarray:
    if isinstance(text, bytes):
        text = text.decode("ascii")
    chars = "".join(text.split())
    if chars.strip("01"):
        raise ValueError("ascii bit stream may only contain '0', '1' and whitespace")
    return np.frombuffer(chars.encode("ascii"), dtype=np.uint8) - ord("0")


def from_packed(data: bytes, count: int | None = None) -> np.ndarray:
    bits = np.unpackbits(np.frombuffer(data, dtype=np.uint8), bitorder="little")
    if count is not None:
        if count > bits.size:
            raise ValueError(f"packed data holds {bits.size} bits, {count} requested")
        bits = bits[:count]
    return bits


def encode(bits, fmt: str) -> bytes:
    if fmt == "ascii":
        return to_ascii(bits).encode("ascii")
    if fmt == "packed":
        return to_packed(bits)
    raise ValueError(f"unknown format {fmt!r}")


def decode(data: bytes, fmt: str = "auto", count: int | None = None) -> np.ndarray:
    """Read a bit stream; ``auto`` picks ascii when every byte is 0/1/whitespace."""
    if fmt == "auto":
        fmt = "ascii" if data and not data.translate(None, b"01 \t\r\n") else "packed"
    if fmt == "ascii":
        bits = from_ascii(data)
        return bits if count is None else bits[:count]
    if fmt == "packed":
        return from_packed(data, count)
    raise ValueError(f"unknown format {fmt!r}")
