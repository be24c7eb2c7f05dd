"""Per probe-anchor pair path series and their dataset statistics."""

from __future__ import annotations

import logging
from collections import defaultdict
from dataclasses import dataclass
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

import numpy as np

from series.symbols import MISSING, SymbolSeries, assign_slots, series_from_records

from .parsing import ASTERISK, TracerouteRecord


logger = logging.getLogger(__name__)

# Hop separator; cannot occur inside an IPv4 address or "*".
HOP_SEPARATOR = b'|'


def path_of(record: TracerouteRecord) -> bytes:
    """Canonical raw value of the path a traceroute measured."""
    return HOP_SEPARATOR.join(hop.encode('ascii') for hop in record.hops)


def hops_of(path: bytes) -> List[str]:
    return path.decode('ascii').split(HOP_SEPARATOR.decode('ascii'))


def pair_series_id(src: str, dst: str) -> str:
    return f'{src}>{dst}'


@dataclass(frozen=True)
class PairSeries:
    src: str
    dst: str
    series: SymbolSeries
    # paris id of the traceroute filling each slot, None where the slot is MISSING
    paris_ids: Tuple[Optional[int], ...]

    def __post_init__(self):
        object.__setattr__(self, 'paris_ids', tuple(self.paris_ids))
        if len(self.paris_ids) != len(self.series):
            raise ValueError(
                f'Pair {self.series_id}: {len(self.paris_ids)} paris annotations for {len(self.series)} slots'
            )

    @property
    def series_id(self) -> str:
        return pair_series_id(self.src, self.dst)

    @property
    def has_paris(self) -> bool:
        return any(value is not None for value in self.paris_ids)


def group_pairs(
    records: Iterable[TracerouteRecord],
    start_ts: int,
    end_ts: int,
    step: int,
) -> List[PairSeries]:
    """One path series per (src, dst) on the grid [start_ts, end_ts), ordered by pair."""
    buffers: Dict[Tuple[str, str], List[TracerouteRecord]] = defaultdict(list)
    for record in records:
        buffers[record.pair].append(record)

    pairs: List[PairSeries] = []
    for (src, dst) in sorted(buffers):
        group = buffers[(src, dst)]
        series = series_from_records(
            [(r.ts, path_of(r)) for r in group], start_ts, end_ts, step, series_id=pair_series_id(src, dst),
        )
        winners = assign_slots([r.ts for r in group], start_ts, end_ts, step).winners
        paris_ids = [None if k is None else group[k].paris_id for k in winners]
        pairs.append(PairSeries(src=src, dst=dst, series=series, paris_ids=paris_ids))
    logger.info(f'Grouped traceroutes into {len(pairs)} pair series of {slot_total(pairs)} slots')
    return pairs


def slot_total(pairs: Sequence[PairSeries]) -> int:
    return sum(len(pair.series) for pair in pairs)


@dataclass(frozen=True)
class PairStats:
    distinct_path_count: int
    occurrences: Dict[bytes, int]
    occurrence_std: float

    @property
    def measured_slots(self) -> int:
        return sum(self.occurrences.values())


def pair_stats(series: SymbolSeries) -> PairStats:
    """Distinct paths seen by a pair and the spread of their occurrence counts."""
    counts = series.symbol_counts()
    occurrences = {series.table.lookup(symbol): count for symbol, count in counts.items()}
    std = float(np.std(np.fromiter(counts.values(), dtype=float))) if counts else 0.0
    return PairStats(distinct_path_count=len(counts), occurrences=occurrences, occurrence_std=std)


def asterisk_alternation(pattern: Sequence[Optional[bytes]]) -> bool:
    """Two paths of equal length differing only by one hop that one of them reports as ``*``."""
    distinct = {raw for raw in pattern if raw is not MISSING}
    if len(distinct) != 2:
        return False
    first, second = (hops_of(raw) for raw in sorted(distinct))
    if len(first) != len(second):
        return False
    differing = [(a, b) for a, b in zip(first, second) if a != b]
    if len(differing) != 1:
        return False
    a, b = differing[0]
    return (a == ASTERISK) != (b == ASTERISK)
