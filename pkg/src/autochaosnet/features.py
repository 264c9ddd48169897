"""Chaotic feature extraction from decimal-shift-map traces.

Every normalized stimulus selects a trace length T; the trace is always the
orbit prefix {c, f(c), ..., f^(T-1)(c)} of the shared Champernowne source.
Features are the trace mean (TM) and, for the TM-FR variant, additionally
the firing rate: the fraction of trace values strictly above 0.5.

Because all traces are prefixes of one fixed orbit, extraction reduces to
prefix-sum lookups; the tables are built once per (mode, window) and reused.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np
from sklearn.base import BaseEstimator, TransformerMixin
from sklearn.utils import check_array

from .champernowne import (
    DEFAULT_WINDOW,
    DIGIT_COUNT,
    ChampernowneSource,
    build_source,
    find_pattern,
    orbit_values,
)

MODES = ("bound", "match")
VARIANTS = ("tm", "tmfr")

# Raw bound 3*N' - 111 is nonpositive for N' <= 37; a trace must be
# non-empty, so the length clamps to at least 1.  The largest bound,
# 3*999 - 111 = 2886, exceeds the 1389 informative orbit steps; the shift
# map of a finite decimal yields exactly 0 past the last digit, so longer
# traces carry a zero tail rather than clamping (the tail is what separates
# stimuli above 0.5 from one another).
MIN_TRACE = 1
MAX_TRACE = 3 * 999 - 111


@dataclass(frozen=True)
class TraceSpec:
    """Trace length selection for one stimulus.

    ``pattern_number`` is the stimulus read to three decimal places
    (0..999); ``firing_time_bound`` is the resulting trace length T.
    """

    stimulus: float
    pattern_number: int
    firing_time_bound: int
    mode: str

    def __post_init__(self):
        if self.pattern_number != pattern_number(self.stimulus):
            raise ValueError(
                f"pattern_number {self.pattern_number} inconsistent with stimulus {self.stimulus!r}"
            )
        if not MIN_TRACE <= self.firing_time_bound <= MAX_TRACE:
            raise ValueError(
                f"firing_time_bound must be in {MIN_TRACE}..{MAX_TRACE}, got {self.firing_time_bound}"
            )
        if self.mode not in MODES:
            raise ValueError(f"mode must be one of {MODES}, got {self.mode!r}")


@dataclass(frozen=True, eq=False)
class Trace:
    """A finite orbit prefix together with the spec that produced it."""

    values: np.ndarray
    spec: TraceSpec

    def __len__(self) -> int:
        return len(self.values)


def pattern_number(stimulus: float) -> int:
    """First three decimals of a stimulus in [0, 1] as an integer 0..999."""
    _check_stimulus(stimulus)
    return min(math.floor(stimulus * 1000), 999)


def firing_time_bound(stimulus: float, mode: str = "bound") -> TraceSpec:
    """Trace length for one stimulus.

    bound mode: T = max(3*N' - 111, 1), the digit offset after which the
    three-decimal pattern N' is guaranteed to start in the expansion.

    match mode: T = offset of the first occurrence of the zero-padded
    pattern, clamped to >= 1, so the trace holds every orbit value seen
    before the first match; if the pattern never occurs, the whole informative
    orbit (T = 1389) is used.
    """
    if mode not in MODES:
        raise ValueError(f"mode must be one of {MODES}, got {mode!r}")
    n = pattern_number(stimulus)
    if mode == "bound":
        t = 3 * n - 111
    else:
        offset = find_pattern(build_source(), f"{n:03d}")
        t = DIGIT_COUNT if offset is None else offset
    t = min(max(t, MIN_TRACE), MAX_TRACE)
    return TraceSpec(stimulus=stimulus, pattern_number=n, firing_time_bound=t, mode=mode)


def build_trace(
    source: ChampernowneSource, spec: TraceSpec, width: int = DEFAULT_WINDOW
) -> Trace:
    """Materialize the orbit prefix of length ``spec.firing_time_bound``.

    Steps past the end of the source contribute exact zeros."""
    t = spec.firing_time_bound
    values = orbit_values(source, width)[:t]
    if t > source.length:
        values = np.concatenate([values, np.zeros(t - source.length)])
    return Trace(values=values.copy(), spec=spec)


def trace_mean(trace: Trace) -> float:
    """Arithmetic mean of the trace values; lies in [0, 1)."""
    if len(trace) == 0:
        raise ValueError("trace is empty")
    return float(np.mean(trace.values))


def firing_rate(trace: Trace) -> float:
    """Fraction of trace values strictly greater than 0.5."""
    if len(trace) == 0:
        raise ValueError("trace is empty")
    return float(np.count_nonzero(trace.values > 0.5)) / len(trace)


def extract(stimuli, variant: str = "tmfr", mode: str = "bound", width: int = DEFAULT_WINDOW) -> np.ndarray:
    """Feature vector for one sample of n normalized stimuli.

    Returns n trace means for ``variant="tm"``; for ``variant="tmfr"``
    returns 2n values laid out as [mean_1..mean_n, rate_1..rate_n].
    """
    x = np.asarray(stimuli, dtype=np.float64)
    if x.ndim != 1:
        raise ValueError(f"extract expects a 1-d stimulus vector, got shape {x.shape}")
    return _extract_matrix(x[None, :], variant, mode, width)[0]


def _check_stimulus(stimulus: float) -> None:
    if not (0.0 <= stimulus <= 1.0):
        raise ValueError(f"stimulus must lie in [0, 1], got {stimulus!r}")


def _check_stimuli(x: np.ndarray) -> None:
    bad = ~((x >= 0.0) & (x <= 1.0))
    if bad.any():
        where = np.argwhere(bad)[0]
        raise ValueError(
            f"stimuli must lie in [0, 1]; found {x[tuple(where)]!r} at index {tuple(int(i) for i in where)}"
        )


@lru_cache(maxsize=None)
def _prefix_tables(width: int) -> tuple[np.ndarray, np.ndarray]:
    """(prefix_sum, prefix_count) of the orbit; index T gives stats of the first T values."""
    orbit = orbit_values(build_source(), width)
    prefix_sum = np.concatenate([[0.0], np.cumsum(orbit)])
    prefix_cnt = np.concatenate([[0.0], np.cumsum(orbit > 0.5)])
    prefix_sum.setflags(write=False)
    prefix_cnt.setflags(write=False)
    return prefix_sum, prefix_cnt


@lru_cache(maxsize=None)
def _length_table(mode: str) -> np.ndarray:
    """Trace length per pattern number 0..999 for one mode."""
    table = np.empty(1000, dtype=np.int64)
    if mode == "bound":
        table[:] = np.clip(3 * np.arange(1000) - 111, MIN_TRACE, MAX_TRACE)
    else:
        source = build_source()
        for n in range(1000):
            offset = find_pattern(source, f"{n:03d}")
            t = DIGIT_COUNT if offset is None else offset
            table[n] = min(max(t, MIN_TRACE), MAX_TRACE)
    table.setflags(write=False)
    return table


def _extract_matrix(x: np.ndarray, variant: str, mode: str, width: int = DEFAULT_WINDOW) -> np.ndarray:
    if variant not in VARIANTS:
        raise ValueError(f"variant must be one of {VARIANTS}, got {variant!r}")
    if mode not in MODES:
        raise ValueError(f"mode must be one of {MODES}, got {mode!r}")
    _check_stimuli(x)
    numbers = np.minimum(np.floor(x * 1000).astype(np.int64), 999)
    lengths = _length_table(mode)[numbers]
    informative = np.minimum(lengths, DIGIT_COUNT)
    prefix_sum, prefix_cnt = _prefix_tables(width)
    means = prefix_sum[informative] / lengths
    if variant == "tm":
        return means
    rates = prefix_cnt[informative] / lengths
    return np.concatenate([means, rates], axis=-1)


class AutochaosFeatures(TransformerMixin, BaseEstimator):
    """Training-free chaotic feature transformer.

    Maps an (m, n) matrix of stimuli in [0, 1] to (m, n) trace means
    (``variant="tm"``) or (m, 2n) means followed by firing rates
    (``variant="tmfr"``).  There is nothing to learn: ``fit`` only validates
    input and records the feature count.
    """

    def __init__(self, variant: str = "tmfr", mode: str = "bound", width: int = DEFAULT_WINDOW):
        self.variant = variant
        self.mode = mode
        self.width = width

    def fit(self, X, y=None):
        X = check_array(X, dtype=np.float64)
        _check_stimuli(X)
        if self.variant not in VARIANTS:
            raise ValueError(f"variant must be one of {VARIANTS}, got {self.variant!r}")
        if self.mode not in MODES:
            raise ValueError(f"mode must be one of {MODES}, got {self.mode!r}")
        self.n_features_in_ = X.shape[1]
        return self

    def transform(self, X) -> np.ndarray:
        X = check_array(X, dtype=np.float64)
        return _extract_matrix(X, self.variant, self.mode, self.width)

    def get_feature_names_out(self, input_features=None) -> np.ndarray:
        n = getattr(self, "n_features_in_", None)
        if n is None:
            raise ValueError("transformer is not fitted; call fit first")
        names = [f"mean_{i + 1}" for i in range(n)]
        if self.variant == "tmfr":
            names += [f"rate_{i + 1}" for i in range(n)]
        return np.asarray(names, dtype=object)
