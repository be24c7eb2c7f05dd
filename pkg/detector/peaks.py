"""Peak detection on the autocorrelation and grouping of peaks into candidate periods."""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple

import numpy as np

from .autocorrelation import AcfProfile


logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Peak:
    lag: int
    height: float


@dataclass(frozen=True)
class PeakCluster:
    peaks: Tuple[Peak, ...]
    candidate_period: Optional[int] = None
    discarded_outliers: int = 0

    @property
    def lags(self) -> List[int]:
        return [peak.lag for peak in self.peaks]


def local_maxima(values: np.ndarray) -> np.ndarray:
    """Mask of strict local maxima; the first and last value compare one-sided."""
    if len(values) == 0:
        return np.zeros(0, dtype=bool)
    left = np.concatenate(([-np.inf], values[:-1]))
    right = np.concatenate((values[1:], [-np.inf]))
    return (values > left) & (values > right)


def peak_floor(acf: AcfProfile, maxima: np.ndarray = None) -> Tuple[float, np.ndarray]:
    """Chance-match baseline of the ACF and its standard error at every lag.

    The baseline is the median normalised value over lags that are not local
    maxima; the standard error at lag l is sqrt(b(1-b)/(N-l)).
    """
    values = acf.normalized
    if maxima is None:
        maxima = local_maxima(values)
    background = values[~maxima] if np.any(~maxima) else values
    baseline = float(np.median(background)) if len(background) else 0.0
    pairs = acf.series_len - np.arange(1, acf.max_lag + 1)
    stderr = np.sqrt(baseline * (1.0 - baseline) / pairs)
    return baseline, stderr


def detect_peaks(acf: AcfProfile, threshold: float, sigmas: Optional[float] = None) -> List[Peak]:
    """Strict local maxima of the normalised ACF that reach ``threshold``.

    With ``sigmas`` set, maxima standing that many standard errors above the
    chance baseline are kept as well.
    """
    values = acf.normalized
    maxima = local_maxima(values)
    eligible = maxima & (values >= threshold)
    if sigmas is not None and np.any(maxima):
        baseline, stderr = peak_floor(acf, maxima)
        excess = values - baseline
        significant = np.where(stderr > 0, excess >= sigmas * stderr, excess > 0)
        eligible |= maxima & significant
    eligible &= values > 0
    return [Peak(lag=int(i) + 1, height=float(values[i])) for i in np.flatnonzero(eligible)]


def cluster_peaks(peaks: Sequence[Peak], eps_y: float) -> List[PeakCluster]:
    """Single-linkage grouping of peaks by height.

    In one dimension single linkage splits the sorted heights wherever two
    neighbours are more than ``eps_y`` apart.
    """
    if not peaks:
        return []
    by_height = sorted(peaks, key=lambda p: (p.height, p.lag))
    groups: List[List[Peak]] = [[by_height[0]]]
    for previous, peak in zip(by_height, by_height[1:]):
        if peak.height - previous.height > eps_y + 1e-9:
            groups.append([])
        groups[-1].append(peak)
    clusters = [PeakCluster(peaks=tuple(sorted(group, key=lambda p: p.lag))) for group in groups]
    clusters.sort(key=lambda c: c.peaks[0].lag)
    return clusters


def gap_cv(lags: Sequence[int]) -> float:
    """Coefficient of variation (population std / mean) of consecutive lag gaps."""
    gaps = np.diff(np.asarray(lags, dtype=float))
    if len(gaps) == 0:
        return math.inf
    mean = gaps.mean()
    return float(gaps.std() / mean) if mean > 0 else math.inf


def _round_half_up(value: float) -> int:
    return int(math.floor(value + 0.5))


def regularize_cluster(cluster: PeakCluster, delta: float, max_outlier_fraction: float) -> PeakCluster:
    """Turn a cluster into a candidate period when its peaks are evenly spaced.

    Outliers are removed greedily, the one whose removal gives the lowest CV
    first, within a budget of ``max_outlier_fraction`` of the peaks. Rejected
    clusters come back unchanged with no candidate period.
    """
    peaks = list(cluster.peaks)
    if len(peaks) < 2:
        return PeakCluster(peaks=tuple(peaks))

    budget = int(math.floor(max_outlier_fraction * len(peaks) + 1e-9))
    removed = 0
    current = peaks
    while gap_cv([p.lag for p in current]) > delta:
        if removed >= budget or len(current) <= 2:
            logger.debug(f'Cluster at lags {cluster.lags} rejected as irregular')
            return PeakCluster(peaks=cluster.peaks)
        best_cv, best_index = math.inf, None
        for index in range(len(current)):
            trial = [p.lag for k, p in enumerate(current) if k != index]
            cv = gap_cv(trial)
            if cv < best_cv:
                best_cv, best_index = cv, index
        current = current[:best_index] + current[best_index + 1:]
        removed += 1

    gaps = np.diff([p.lag for p in current])
    period = _round_half_up(float(np.median(gaps)))
    if period < 1:
        return PeakCluster(peaks=cluster.peaks)
    return PeakCluster(peaks=tuple(current), candidate_period=period, discarded_outliers=removed)


def harmonic_ladders(cluster: PeakCluster, delta: float) -> List[PeakCluster]:
    """Runs of cluster peaks at consecutive multiples of one of its lags.

    A periodicity of length P leaves maxima at P, 2P, 3P... Periodicities
    sharing a height band interleave their maxima, so each lag of the
    cluster is tried as the rung spacing. A rung may sit ``floor(delta *
    base)`` lags off its multiple. Runs of a single peak are not kept.
    """
    peaks = sorted(cluster.peaks, key=lambda p: p.lag)
    if len(peaks) < 2:
        return []
    by_lag = {peak.lag: peak for peak in peaks}
    top = peaks[-1].lag
    ladders: List[PeakCluster] = []
    seen = set()

    def keep(run: List[Peak]) -> None:
        lags = tuple(p.lag for p in run)
        if len(run) >= 2 and lags not in seen:
            seen.add(lags)
            ladders.append(PeakCluster(peaks=tuple(run)))

    for base in by_lag:
        slack = int(math.floor(delta * base + 1e-9))
        run: List[Peak] = []
        for k in range(1, (top + slack) // base + 1):
            target = k * base
            near = [by_lag[lag] for lag in range(target - slack, target + slack + 1) if lag in by_lag]
            if not near:
                keep(run)
                run = []
                continue
            run.append(min(near, key=lambda p: abs(p.lag - target)))
        keep(run)
    return ladders
