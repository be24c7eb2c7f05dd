"""Noise injection inside planted periodic intervals."""

from __future__ import annotations

import logging
import math
from typing import List, Optional, Sequence, Tuple, Union

import numpy as np

from series.symbols import MISSING, SymbolSeries

from .truth import NoiseCounts, PlantedPeriodicity


logger = logging.getLogger(__name__)

INSERT, DELETE, SUBSTITUTE = 0, 1, 2


class NoiseError(ValueError):
    """Raised when noise cannot be placed on a series."""


def noise_events(pct: float, periodic_slots: int) -> int:
    return int(math.floor(pct * periodic_slots + 0.5))


def inject_noise(
    series: SymbolSeries,
    planted: Sequence[PlantedPeriodicity],
    pct: float,
    seed: Union[int, np.random.SeedSequence],
    counts: Optional[NoiseCounts] = None,
) -> Tuple[SymbolSeries, List[PlantedPeriodicity]]:
    """Apply round(pct x periodic slots) insert/delete/substitute events.

    Each event lands on a uniformly chosen slot of the current planted
    intervals; intervals after it shift with the series. ``counts``, when
    given, accumulates the events applied per operation.
    """
    if pct < 0:
        raise NoiseError(f'Noise fraction must be non-negative, got {pct}')
    intervals = [[p.start_slot, p.end_slot] for p in planted]
    periodic_slots = sum(end - start for start, end in intervals)
    events = noise_events(pct, periodic_slots)
    if events == 0:
        if pct > 0 and periodic_slots == 0:
            raise NoiseError(f'Series {series.series_id!r} has no planted interval to add noise to')
        return series, list(planted)

    rng = np.random.default_rng(seed)
    alphabet = len(series.table)
    slots = list(series.slots)
    applied = NoiseCounts()
    for _ in range(events):
        total = sum(end - start for start, end in intervals)
        if total == 0:
            logger.warning(f'{series.series_id!r}: planted intervals deleted away, stopping noise')
            break
        pick = int(rng.integers(total))
        for index, (start, end) in enumerate(intervals):
            if pick < end - start:
                slot = start + pick
                break
            pick -= end - start

        operation = int(rng.integers(3))
        if operation == SUBSTITUTE:
            current = slots[slot]
            replacement = int(rng.integers(alphabet - 1))
            if current is not MISSING and replacement >= current:
                replacement += 1
            slots[slot] = replacement
            applied.substituted += 1
            continue

        shift = 1 if operation == INSERT else -1
        if operation == INSERT:
            slots.insert(slot, int(rng.integers(alphabet)))
            applied.inserted += 1
        else:
            del slots[slot]
            applied.deleted += 1
        intervals[index][1] += shift
        for other in intervals:
            if other[0] > slot:
                other[0] += shift
                other[1] += shift

    if counts is not None:
        counts.add(applied)
    logger.debug(
        f'{series.series_id!r}: {applied.total} noise events '
        f'({applied.inserted} ins, {applied.deleted} del, {applied.substituted} sub)'
    )
    moved = [p.moved(start, end) for p, (start, end) in zip(planted, intervals)]
    return series.with_slots(slots), moved
