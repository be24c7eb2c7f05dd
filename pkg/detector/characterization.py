"""Periodicity characterization: gluing windows of a candidate period into periodic intervals."""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Callable, Iterable, List, Optional, Sequence, Tuple

import numpy as np

from series.periodicity import Periodicity, hamming, rotate
from series.symbols import MISSING, SeriesError, SymbolSeries

from .config import tolerance_for
from .matching import ExactMatch, MatchOperator, SlotMatcher


logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class WindowRun:
    """Consecutive windows of one phase offset, each within tolerance of the next."""
    offset: int
    first: int
    last: int

    def windows(self) -> int:
        return self.last - self.first + 1


def true_runs(mask: np.ndarray) -> List[Tuple[int, int]]:
    """Half-open [start, stop) index ranges of consecutive True values."""
    if len(mask) == 0:
        return []
    padded = np.concatenate(([False], mask.astype(bool), [False]))
    edges = np.flatnonzero(np.diff(padded.astype(np.int8)))
    return [(int(a), int(b)) for a, b in zip(edges[::2], edges[1::2])]


def window_hamming(matcher: SlotMatcher, period: int) -> np.ndarray:
    """H[s] = mismatches between slots [s, s+P) and [s+P, s+2P), for s in 0..N-2P."""
    mismatch = (~matcher.lagged(period)).astype(np.int64)
    cumulative = np.concatenate(([0], np.cumsum(mismatch)))
    n = len(matcher.codes)
    return cumulative[period:n - period + 1] - cumulative[:n - 2 * period + 1]


def _mode_pattern(rows: np.ndarray) -> Optional[np.ndarray]:
    """Most frequent window holding at least two distinct symbols, earliest on ties."""
    best, best_count = None, 0
    counts = {}
    for row in rows:
        if len(np.unique(row[row >= 0])) < 2:
            continue
        key = tuple(int(v) for v in row)
        counts[key] = counts.get(key, 0) + 1
    for key in counts:
        if counts[key] > best_count:
            best, best_count = key, counts[key]
    return None if best is None else np.asarray(best, dtype=np.int64)


class _Characterizer:

    def __init__(self, series: SymbolSeries, period: int, match: MatchOperator, tolerance: int,
                 min_repetitions: int, chance_alpha: Optional[float]):
        self.series = series
        self.period = period
        self.tolerance = tolerance
        self.min_repetitions = min_repetitions
        self.chance_alpha = chance_alpha
        self.matcher = SlotMatcher(series, match)
        self.codes = series.codes
        self.hamming = window_hamming(self.matcher, period)

    def runs(self) -> Iterable[WindowRun]:
        compatible = self.hamming <= self.tolerance
        for offset in range(self.period):
            pairs = compatible[offset::self.period]
            for first, stop in true_runs(pairs):
                # stop pairs glue stop - first + 1 windows
                if stop - first + 1 >= self.min_repetitions:
                    yield WindowRun(offset=offset, first=first, last=stop)

    def rows(self, offset: int, first: int, last: int) -> np.ndarray:
        start = offset + first * self.period
        stop = offset + (last + 1) * self.period
        return self.codes[start:stop].reshape(-1, self.period)

    def periodicities(self, run: WindowRun) -> List[Periodicity]:
        rows = self.rows(run.offset, run.first, run.last)
        pattern = _mode_pattern(rows)
        if pattern is None:
            return []
        exact = np.all(self.matcher.against(pattern, rows), axis=1)

        found = []
        for first, last in self._segments(exact):
            if last - first + 1 < self.min_repetitions:
                continue
            segment = WindowRun(run.offset, run.first + first, run.first + last)
            exact_windows = int(np.count_nonzero(exact[first:last + 1]))
            if not self._beyond_chance(segment, pattern, exact_windows):
                continue
            found.append(self._periodicity(segment, pattern))
        return found

    @staticmethod
    def _segments(exact: np.ndarray) -> List[Tuple[int, int]]:
        """Inclusive window ranges left after cutting out every stretch of two
        or more consecutive non-exact windows."""
        broken = np.zeros(len(exact), dtype=bool)
        for a, b in true_runs(~exact):
            if b - a >= 2:
                broken[a:b] = True
        return [(a, b - 1) for a, b in true_runs(~broken)]

    def _beyond_chance(self, segment: WindowRun, pattern: np.ndarray, exact_windows: int) -> bool:
        if self.chance_alpha is None:
            return True
        start = segment.offset + segment.first * self.period
        stop = segment.offset + (segment.last + 1) * self.period
        outside = np.concatenate((self.codes[:start], self.codes[stop:]))
        outside = outside[outside >= 0]
        if len(outside) == 0:
            return exact_windows >= 1
        if exact_windows < 2:
            return False
        frequencies = np.bincount(outside, minlength=len(self.series.table)) / len(outside)
        chance = 1.0
        for symbol in pattern:
            chance *= self.matcher.match_probability(int(symbol), frequencies)
        expected = len(self.codes) * chance ** (exact_windows - 1)
        if expected > self.chance_alpha:
            logger.debug(
                f'{self.series.series_id!r}: P={self.period} run at slot {start} '
                f'expected {expected:.3g} times by chance, discarded'
            )
            return False
        return True

    def _periodicity(self, segment: WindowRun, pattern: np.ndarray) -> Periodicity:
        start = segment.offset + segment.first * self.period
        windows = segment.windows()
        pair_starts = start + self.period * np.arange(windows - 1)
        mismatches = int(self.hamming[pair_starts].sum()) if windows > 1 else 0
        return Periodicity(
            period_slots=self.period,
            pattern=tuple(MISSING if v < 0 else int(v) for v in pattern),
            start_slot=start,
            end_slot=start + windows * self.period,
            repetitions=windows,
            mismatch_count=mismatches,
        )


def select_non_overlapping(periodicities: Iterable[Periodicity]) -> List[Periodicity]:
    """Greedy choice: most repetitions, then fewest mismatches, then earliest."""
    ranked = sorted(periodicities, key=lambda p: (-p.repetitions, p.mismatch_count, p.start_slot))
    kept: List[Periodicity] = []
    for candidate in ranked:
        if all(candidate.overlap(other) == 0 for other in kept):
            kept.append(candidate)
    return sorted(kept, key=lambda p: p.start_slot)


def characterize(
    series: SymbolSeries,
    period: int,
    match: MatchOperator = None,
    tolerance: int = None,
    min_repetitions: int = 3,
    chance_alpha: Optional[float] = None,
) -> List[Periodicity]:
    """Periodic intervals of ``series`` for the candidate ``period``.

    Windows of length P are compared with their successor for every phase
    offset; consecutive windows within ``tolerance`` mismatches are glued.
    Each glued run is summarised by its most frequent window, split where two
    or more consecutive windows depart from it, and kept when it reaches
    ``min_repetitions`` windows. Runs from different offsets compete for the
    same slots; the longest wins.
    """
    n = len(series)
    if period < 1:
        raise SeriesError(f'Period must be positive, got {period}')
    if 2 * period > n:
        return []
    if tolerance is None:
        tolerance = tolerance_for(period)

    worker = _Characterizer(series, period, match or ExactMatch(), tolerance, min_repetitions, chance_alpha)
    found: List[Periodicity] = []
    for run in worker.runs():
        found.extend(worker.periodicities(run))
    kept = select_non_overlapping(found)
    if kept:
        logger.debug(f'{series.series_id!r}: P={period} characterized {len(kept)} interval(s)')
    return kept


def is_harmonic(
    small: Periodicity,
    large: Periodicity,
    tolerance: Callable[[int], int],
    same: Optional[Callable[[int, int], bool]] = None,
) -> bool:
    """Whether ``large`` repeats ``small``'s pattern k times on an overlapping interval.

    ``same`` compares two pattern symbols; exact identity when omitted.
    """
    if large.period_slots <= small.period_slots or large.period_slots % small.period_slots:
        return False
    shorter = min(small.length, large.length)
    if shorter == 0 or small.overlap(large) * 2 < shorter:
        return False
    k = large.period_slots // small.period_slots
    phase = (large.start_slot - small.start_slot) % small.period_slots
    tiled = rotate(small.pattern, phase) * k
    if same is None:
        mismatches = hamming(large.pattern, tiled)
    else:
        mismatches = sum(
            1 for a, b in zip(large.pattern, tiled)
            if a is MISSING or b is MISSING or not same(a, b)
        )
    return mismatches <= tolerance(large.period_slots)


def suppress_harmonics(
    periodicities: Sequence[Periodicity],
    tolerance: Callable[[int], int] = tolerance_for,
    same: Optional[Callable[[int, int], bool]] = None,
) -> List[Periodicity]:
    """Drop every periodicity that is a multiple of a shorter overlapping one."""
    kept = [
        large for large in periodicities
        if not any(is_harmonic(small, large, tolerance, same) for small in periodicities)
    ]
    return sorted(kept, key=lambda p: (p.start_slot, p.period_slots))
