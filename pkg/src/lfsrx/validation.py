"""Input validation helpers for bit sequences."""

from __future__ import annotations

import numpy as np

from .errors import LengthError


def check_bits(bits, *, length: int | None = None, name: str = "bits") -> np.ndarray:
    """Return ``bits`` as a 1-D uint8 array of zeros and ones.

    Accepts any array-like of 0/1 values (bools included).  When ``length``
    is given the sequence must have exactly that many elements.
    """
    arr = np.asarray(bits)
    if arr.ndim != 1:
        arr = arr.reshape(-1) if arr.size and arr.ndim == 2 and 1 in arr.shape else arr
        if arr.ndim != 1:
            raise ValueError(f"{name} must be one-dimensional, got shape {arr.shape}")
    if arr.dtype != np.uint8:
        if arr.size and not np.isin(arr, (0, 1)).all():
            raise ValueError(f"{name} must contain only 0 and 1")
        arr = arr.astype(np.uint8)
    elif arr.size and arr.max() > 1:
        raise ValueError(f"{name} must contain only 0 and 1")
    if length is not None and arr.size != length:
        raise LengthError(f"{name} must have exactly {length} elements, got {arr.size}")
    return arr


def check_positive_int(value, name: str) -> int:
    if isinstance(value, bool) or not isinstance(value, (int, np.integer)) or value < 1:
        raise ValueError(f"{name} must be a positive integer, got {value!r}")
    return int(value)
