"""Autocorrelation of a symbol series under a match operator."""

from __future__ import annotations

import logging
from dataclasses import dataclass, field

import numpy as np

from series.symbols import SeriesError, SymbolSeries

from .matching import ExactMatch, MatchOperator, SlotMatcher


logger = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class AcfProfile:
    """R_xx(l) for l = 1..L, raw and normalised by the N - l compared pairs."""
    raw_counts: np.ndarray
    series_len: int
    normalized: np.ndarray = field(init=False)

    def __post_init__(self):
        raw = np.array(self.raw_counts, dtype=np.int64)
        lags = np.arange(1, len(raw) + 1)
        norm = raw / (self.series_len - lags) if len(raw) else np.zeros(0)
        raw.flags.writeable = False
        norm.flags.writeable = False
        object.__setattr__(self, 'raw_counts', raw)
        object.__setattr__(self, 'normalized', norm)

    @property
    def max_lag(self) -> int:
        return len(self.raw_counts)

    def raw_count(self, lag: int) -> int:
        return int(self.raw_counts[lag - 1])

    def value(self, lag: int) -> float:
        return float(self.normalized[lag - 1])


def autocorrelate(series: SymbolSeries, match: MatchOperator = None, max_lag: int = None) -> AcfProfile:
    """Count, for every lag, the slot pairs (n, n+l) the operator declares equal."""
    n = len(series)
    if n < 2:
        raise SeriesError(f'Series {series.series_id!r} has {n} slots, autocorrelation needs at least 2')
    if max_lag is None:
        max_lag = n - 1
    if not 1 <= max_lag < n:
        raise SeriesError(f'max_lag must be in [1, {n}), got {max_lag}')

    matcher = SlotMatcher(series, match or ExactMatch())
    counts = np.empty(max_lag, dtype=np.int64)
    for lag in range(1, max_lag + 1):
        counts[lag - 1] = np.count_nonzero(matcher.lagged(lag))
    logger.debug(f'ACF of {series.series_id!r}: N={n}, L={max_lag}, max count={counts.max()}')
    return AcfProfile(raw_counts=counts, series_len=n)
