"""Digit arithmetic over the truncated Champernowne constant.

The constant 0.123456789101112...498499 (the decimal concatenation of the
natural numbers 1..499) is the shared initial point for every decimal shift
map orbit in this package.  Because the 1389-digit expansion far exceeds
float precision, the constant lives as an explicit digit array and all orbit
values are read as fixed-width digit windows.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

# Concatenating 1..499 yields 9 + 2*90 + 3*400 = 1389 digits.
LAST_NUMBER = 499
DIGIT_COUNT = 1389

# Widest window whose digit value still fits a 64-bit integer exactly.
MAX_WINDOW = 18
DEFAULT_WINDOW = 15


@dataclass(frozen=True, eq=False)
class ChampernowneSource:
    """Immutable digit string of the truncated constant.

    Attributes:
        text: the digits as one string, e.g. ``"1234567891011..."``.
        digits: the same digits as an int64 array of values 0..9.
    """

    text: str
    digits: np.ndarray = field(repr=False)

    @property
    def length(self) -> int:
        return len(self.text)


@lru_cache(maxsize=1)
def build_source() -> ChampernowneSource:
    """Build the 1389-digit source for the constant truncated after 499.

    Deterministic; repeated calls return the same cached instance.
    """
    text = "".join(str(n) for n in range(1, LAST_NUMBER + 1))
    digits = np.frombuffer(text.encode("ascii"), dtype=np.uint8).astype(np.int64) - ord("0")
    digits.setflags(write=False)
    if len(text) != DIGIT_COUNT:
        raise AssertionError(f"expected {DIGIT_COUNT} digits, built {len(text)}")
    return ChampernowneSource(text=text, digits=digits)


def position_of(n: int) -> int:
    """Digit offset at which the number ``n`` starts in the full expansion.

    For an ``n`` with ``d >= 2`` digits the count of digits preceding it is
    ``d*n - (10 + 10**2 + ... + 10**(d-1)) - 1``.  Single-digit numbers are
    outside the formula's domain and are rejected; locate those by direct
    search instead.
    """
    if not isinstance(n, (int, np.integer)) or isinstance(n, bool):
        raise TypeError(f"n must be an integer, got {type(n).__name__}")
    if n < 10:
        raise ValueError(f"position_of requires n >= 10 (two or more digits), got {n}")
    d = len(str(int(n)))
    return d * int(n) - sum(10**i for i in range(1, d)) - 1


@dataclass(frozen=True)
class OrbitValue:
    """One decimal-shift-map orbit value, read as a digit window."""

    value: float
    step: int


def window_int(source: ChampernowneSource, step: int, width: int) -> int:
    """Integer formed by ``width`` digits starting after ``step`` shifts.

    Digits past the end of the truncated source read as 0.
    """
    if step < 0:
        raise ValueError(f"step must be >= 0, got {step}")
    if not 1 <= width <= MAX_WINDOW:
        raise ValueError(f"width must be in 1..{MAX_WINDOW}, got {width}")
    chunk = source.text[step : step + width]
    num = int(chunk) if chunk else 0
    return num * 10 ** (width - len(chunk))


def orbit_value(source: ChampernowneSource, step: int, width: int = DEFAULT_WINDOW) -> OrbitValue:
    """Orbit value after ``step`` applications of the decimal shift map.

    Equals ``0.d[step+1] d[step+2] ... d[step+width]`` where ``d`` are the
    source digits, zero-padded past the truncation, so shifting beyond the
    last digit yields exactly 0.
    """
    num = window_int(source, step, width)
    return OrbitValue(value=num / 10.0**width, step=step)


def orbit_values(source: ChampernowneSource, width: int = DEFAULT_WINDOW) -> np.ndarray:
    """All orbit values for steps ``0 .. length-1`` as one float array."""
    if not 1 <= width <= MAX_WINDOW:
        raise ValueError(f"width must be in 1..{MAX_WINDOW}, got {width}")
    padded = np.concatenate([source.digits, np.zeros(width, dtype=np.int64)])
    windows = np.lib.stride_tricks.sliding_window_view(padded, width)[: source.length]
    powers = 10 ** np.arange(width - 1, -1, -1, dtype=np.int64)
    return (windows @ powers) / 10.0**width


def find_pattern(source: ChampernowneSource, pattern) -> int | None:
    """Smallest digit offset where a 3-digit pattern occurs, or None.

    ``pattern`` may be a 3-character digit string or a sequence of three
    digit values.  Absence is a normal outcome (e.g. ``"999"`` never occurs
    in the digits of 1..499), not an error.
    """
    if isinstance(pattern, str):
        text = pattern
    else:
        text = "".join(str(int(d)) for d in pattern)
    if len(text) != 3 or not text.isdigit():
        raise ValueError(f"pattern must be exactly 3 digits, got {pattern!r}")
    offset = source.text.find(text)
    return None if offset < 0 else offset
