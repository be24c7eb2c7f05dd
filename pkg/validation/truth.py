"""Ground truth of planted periodicities and its JSON Lines file.

One line per series::

    {"series_id": str, "planted": [{"period": int, "pattern": [str, ...],
      "start_slot": int, "end_slot": int, "repetitions": int, "sub_period": bool}, ...],
     "noise": {"inserted": int, "deleted": int, "substituted": int}}
"""

from __future__ import annotations

import json
import logging
from collections import Counter
from dataclasses import asdict, dataclass, field
from pathlib import Path
from typing import Any, Dict, IO, Iterator, List, Optional, Tuple, Union

from series.symbols import Symbol, SymbolTable


logger = logging.getLogger(__name__)


class TruthError(Exception):
    """Raised for an unreadable ground-truth file."""


@dataclass(frozen=True)
class PlantedPeriodicity:
    period_slots: int
    pattern: Tuple[Symbol, ...]
    start_slot: int
    end_slot: int
    # repetitions as planted, before any noise moved the boundaries
    repetitions: int
    sub_period: bool = False

    @property
    def length(self) -> int:
        return self.end_slot - self.start_slot

    def overlap(self, other) -> int:
        return max(0, min(self.end_slot, other.end_slot) - max(self.start_slot, other.start_slot))

    def moved(self, start_slot: int, end_slot: int) -> 'PlantedPeriodicity':
        return PlantedPeriodicity(self.period_slots, self.pattern, start_slot, end_slot, self.repetitions, self.sub_period)


@dataclass
class NoiseCounts:
    inserted: int = 0
    deleted: int = 0
    substituted: int = 0

    @property
    def total(self) -> int:
        return self.inserted + self.deleted + self.substituted

    def add(self, other: 'NoiseCounts') -> None:
        self.inserted += other.inserted
        self.deleted += other.deleted
        self.substituted += other.substituted


@dataclass
class SeriesTruth:
    series_id: str
    table: SymbolTable
    planted: List[PlantedPeriodicity] = field(default_factory=list)
    noise: NoiseCounts = field(default_factory=NoiseCounts)


class GroundTruth:
    """Planted periodicities of every generated series, keyed by series id."""

    def __init__(self, entries=()):
        self._entries: Dict[str, SeriesTruth] = {}
        for entry in entries:
            self.add(entry)

    def add(self, entry: SeriesTruth) -> None:
        self._entries[entry.series_id] = entry

    def get(self, series_id: str) -> Optional[SeriesTruth]:
        return self._entries.get(series_id)

    def planted(self, series_id: str) -> List[PlantedPeriodicity]:
        entry = self._entries.get(series_id)
        return list(entry.planted) if entry else []

    @property
    def series_ids(self) -> List[str]:
        return list(self._entries)

    def total(self) -> int:
        return sum(len(entry.planted) for entry in self._entries.values())

    def periodicities_per_series(self) -> Dict[int, int]:
        """Number of series holding k planted periodicities, by k."""
        return dict(sorted(Counter(len(entry.planted) for entry in self._entries.values()).items()))

    def __iter__(self) -> Iterator[SeriesTruth]:
        return iter(self._entries.values())

    def __len__(self) -> int:
        return len(self._entries)

    def __contains__(self, series_id: object) -> bool:
        return series_id in self._entries


def truth_to_record(entry: SeriesTruth) -> Dict[str, Any]:
    return {
        'series_id': entry.series_id,
        'planted': [
            {
                'period': p.period_slots,
                'pattern': [entry.table.lookup(s).decode('utf-8') for s in p.pattern],
                'start_slot': p.start_slot,
                'end_slot': p.end_slot,
                'repetitions': p.repetitions,
                'sub_period': p.sub_period,
            }
            for p in entry.planted
        ],
        'noise': asdict(entry.noise),
    }


def truth_from_record(record: Dict[str, Any], table: SymbolTable = None) -> SeriesTruth:
    table = table if table is not None else SymbolTable()
    try:
        planted = [
            PlantedPeriodicity(
                period_slots=int(item['period']),
                pattern=tuple(table.intern(str(v).encode('utf-8')) for v in item['pattern']),
                start_slot=int(item['start_slot']),
                end_slot=int(item['end_slot']),
                repetitions=int(item['repetitions']),
                sub_period=bool(item.get('sub_period', False)),
            )
            for item in record['planted']
        ]
        noise = NoiseCounts(**record.get('noise', {}))
        return SeriesTruth(series_id=str(record['series_id']), table=table, planted=planted, noise=noise)
    except (KeyError, TypeError, ValueError) as exc:
        raise TruthError(f'Invalid ground-truth record: {exc}') from exc


def write_truth(target: Union[str, Path, IO[str]], truth: GroundTruth) -> int:
    if isinstance(target, (str, Path)):
        with open(target, 'w', encoding='utf-8') as fp:
            return write_truth(fp, truth)
    for entry in truth:
        target.write(json.dumps(truth_to_record(entry), separators=(',', ':')) + '\n')
    return len(truth)


def read_truth(source: Union[str, Path, IO[str]], tables: Dict[str, SymbolTable] = None) -> GroundTruth:
    """Load a ground-truth file; patterns are interned into ``tables[series_id]`` when given."""
    if isinstance(source, (str, Path)):
        with open(source, 'r', encoding='utf-8') as fp:
            return read_truth(fp, tables)
    tables = tables if tables is not None else {}
    truth = GroundTruth()
    for lineno, line in enumerate(source, start=1):
        line = line.strip()
        if not line:
            continue
        try:
            record = json.loads(line)
        except json.JSONDecodeError as exc:
            raise TruthError(f'Line {lineno}: not valid JSON ({exc})') from exc
        series_id = str(record.get('series_id', ''))
        table = tables.setdefault(series_id, SymbolTable())
        truth.add(truth_from_record(record, table))
    logger.info(f'Loaded ground truth of {len(truth)} series, {truth.total()} planted periodicities')
    return truth
