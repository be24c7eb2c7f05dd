"""The periodicity result shared by the detector, the evaluator and the ingest pipelines."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Any, Dict, Hashable, Optional, Sequence, Tuple

from .symbols import MISSING, SeriesError, Symbol, SymbolSeries, SymbolTable


@dataclass(frozen=True)
class Periodicity:
    """A pattern of ``period_slots`` slots repeated over [start_slot, end_slot)."""
    period_slots: int
    pattern: Tuple[Optional[Symbol], ...]
    start_slot: int
    end_slot: int
    repetitions: int
    mismatch_count: int = 0

    def __post_init__(self):
        object.__setattr__(self, 'pattern', tuple(self.pattern))
        if self.period_slots < 1:
            raise SeriesError(f'Period must be positive, got {self.period_slots}')
        if len(self.pattern) != self.period_slots:
            raise SeriesError(f'Pattern of {len(self.pattern)} slots for period {self.period_slots}')
        if self.end_slot - self.start_slot < self.repetitions * self.period_slots:
            raise SeriesError(
                f'Interval [{self.start_slot}, {self.end_slot}) too short for '
                f'{self.repetitions} repetitions of period {self.period_slots}'
            )

    @property
    def length(self) -> int:
        return self.end_slot - self.start_slot

    def overlap(self, other: 'Periodicity') -> int:
        return max(0, min(self.end_slot, other.end_slot) - max(self.start_slot, other.start_slot))

    def distinct_values(self) -> int:
        return len({value for value in self.pattern if value is not MISSING})


def rotate(pattern: Sequence[Hashable], shift: int) -> Tuple[Hashable, ...]:
    """Pattern read from position ``shift`` onwards, cyclically."""
    if not pattern:
        return ()
    shift %= len(pattern)
    return tuple(pattern[shift:]) + tuple(pattern[:shift])


def hamming(a: Sequence[Hashable], b: Sequence[Hashable]) -> int:
    """Slotwise mismatches; MISSING never equals anything."""
    if len(a) != len(b):
        raise SeriesError(f'Hamming distance of sequences of length {len(a)} and {len(b)}')
    return sum(1 for x, y in zip(a, b) if x is MISSING or y is MISSING or x != y)


def fundamental_block(pattern: Sequence[Hashable]) -> int:
    """Length of the shortest block whose repetition is exactly ``pattern``."""
    size = len(pattern)
    for d in range(1, size):
        if size % d == 0 and all(
            pattern[i] is not MISSING and pattern[i] == pattern[i % d] for i in range(size)
        ):
            return d
    return size


def periodicity_to_record(periodicity: Periodicity, series: SymbolSeries) -> Dict[str, Any]:
    """JSON Lines output record, pattern written as raw values."""
    pattern = [None if raw is None else raw.decode('utf-8', errors='replace')
               for raw in series.decode(periodicity.pattern)]
    return {
        'series_id': series.series_id,
        'period_slots': periodicity.period_slots,
        'period_seconds': periodicity.period_slots * series.step,
        'start_ts': series.slot_time(periodicity.start_slot),
        'end_ts': series.slot_time(periodicity.end_slot),
        'start_slot': periodicity.start_slot,
        'end_slot': periodicity.end_slot,
        'repetitions': periodicity.repetitions,
        'mismatch_count': periodicity.mismatch_count,
        'pattern': pattern,
    }


def periodicity_from_record(record: Dict[str, Any], table: SymbolTable) -> Periodicity:
    """Rebuild a periodicity from its output record, interning the pattern into ``table``."""
    try:
        pattern = tuple(
            MISSING if value is None else table.intern(str(value).encode('utf-8'))
            for value in record['pattern']
        )
        return Periodicity(
            period_slots=int(record['period_slots']),
            pattern=pattern,
            start_slot=int(record['start_slot']),
            end_slot=int(record['end_slot']),
            repetitions=int(record['repetitions']),
            mismatch_count=int(record.get('mismatch_count', 0)),
        )
    except (KeyError, TypeError, ValueError) as exc:
        raise SeriesError(f'Invalid periodicity record: {exc}') from exc
