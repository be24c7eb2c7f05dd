"""The full detection pipeline and its fan-out over many series."""

from __future__ import annotations

import logging
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Any, Dict, Iterable, Iterator, List, Sequence, Set, Tuple

from series.periodicity import Periodicity, fundamental_block, periodicity_to_record
from series.symbols import SeriesError, SymbolSeries

from .autocorrelation import autocorrelate
from .characterization import characterize, suppress_harmonics
from .config import DetectorConfig
from .matching import ExactMatch, MatchOperator, SlotMatcher
from .peaks import Peak, cluster_peaks, detect_peaks, harmonic_ladders, regularize_cluster


logger = logging.getLogger(__name__)


@dataclass
class SeriesDetections:
    series: SymbolSeries
    periodicities: List[Periodicity] = field(default_factory=list)
    candidates: Tuple[int, ...] = ()

    @property
    def series_id(self) -> str:
        return self.series.series_id

    def records(self) -> List[Dict[str, Any]]:
        return [periodicity_to_record(p, self.series) for p in self.periodicities]


def candidate_periods(series: SymbolSeries, config: DetectorConfig, match: MatchOperator) -> Tuple[List[Peak], Set[int]]:
    """Autocorrelate, pick peaks and turn them into candidate periods."""
    n = len(series)
    max_lag = min(n - 1, int(math.floor(n * config.max_lag_fraction)))
    if max_lag < 1:
        return [], set()
    acf = autocorrelate(series, match, max_lag)
    # a maximum at lag 1 only says that values persist
    peaks = [p for p in detect_peaks(acf, config.peak_threshold, config.peak_sigmas) if p.lag >= 2]
    candidates: Set[int] = set()
    for cluster in cluster_peaks(peaks, config.cluster_y_tolerance):
        for group in [cluster, *harmonic_ladders(cluster, config.gap_cv_threshold)]:
            regularized = regularize_cluster(group, config.gap_cv_threshold, config.max_outlier_fraction)
            if regularized.candidate_period:
                candidates.add(regularized.candidate_period)
    return peaks, {p for p in candidates if _admissible(p, n, config)}


def _admissible(period: int, n: int, config: DetectorConfig) -> bool:
    return period >= 2 and period * config.min_repetitions <= n and 2 * period <= n


def detect(series: SymbolSeries, config: DetectorConfig = None, match: MatchOperator = None) -> List[Periodicity]:
    return detect_series(series, config, match).periodicities


def detect_series(series: SymbolSeries, config: DetectorConfig = None, match: MatchOperator = None) -> SeriesDetections:
    """Periodicities of one series, sorted by start slot then period."""
    if len(series) == 0:
        raise SeriesError(f'Series {series.series_id!r} is empty')
    config = config or DetectorConfig()
    match = match or ExactMatch()
    if len(series) < 2 or (series.codes < 0).all():
        return SeriesDetections(series=series)

    peaks, candidates = candidate_periods(series, config, match)
    pending = sorted(candidates)
    tried: Set[int] = set()
    found: List[Periodicity] = []
    while pending:
        period = pending.pop(0)
        if period in tried:
            continue
        tried.add(period)
        for periodicity in characterize(
            series, period, match,
            tolerance=config.tolerance(period),
            min_repetitions=config.min_repetitions,
            chance_alpha=config.chance_alpha,
        ):
            found.append(periodicity)
            block = fundamental_block(periodicity.pattern)
            if block < period and block not in tried and _admissible(block, len(series), config):
                pending.append(block)

    same = None if match.exact else SlotMatcher(series, match).same
    periodicities = suppress_harmonics(found, config.tolerance, same)
    logger.debug(
        f'{series.series_id!r}: {len(peaks)} peaks, {len(tried)} candidate periods, '
        f'{len(periodicities)} periodicities'
    )
    return SeriesDetections(series=series, periodicities=periodicities, candidates=tuple(sorted(tried)))


def _detect_task(args: Tuple[SymbolSeries, DetectorConfig, MatchOperator]) -> SeriesDetections:
    return detect_series(*args)


def detect_many(
    series: Iterable[SymbolSeries],
    config: DetectorConfig = None,
    match: MatchOperator = None,
    workers: int = 1,
) -> List[SeriesDetections]:
    """Detect over every series; the result is ordered by series id whatever the worker count."""
    config = config or DetectorConfig()
    match = match or ExactMatch()
    tasks = [(item, config, match) for item in series]
    if workers > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(_detect_task, tasks, chunksize=max(1, len(tasks) // (workers * 4))))
    else:
        results = [_detect_task(task) for task in tasks]
    results.sort(key=lambda r: r.series_id)
    periodic = sum(1 for r in results if r.periodicities)
    total = sum(len(r.periodicities) for r in results)
    logger.info(f'Detected {total} periodicities in {periodic} of {len(results)} series')
    return results


def periodicity_records(results: Sequence[SeriesDetections]) -> Iterator[Dict[str, Any]]:
    """Output records ordered by (series_id, start_slot, period)."""
    for result in sorted(results, key=lambda r: r.series_id):
        for periodicity in sorted(result.periodicities, key=lambda p: (p.start_slot, p.period_slots)):
            yield periodicity_to_record(periodicity, result.series)

