"""Symbol alphabet and regularly sampled symbol series.

A series is the function x(t) the detector works on: slot i stands for the
instant start_ts + i*step and holds either an interned symbol id or MISSING.
Raw values are opaque byte strings (a traceroute path, an Internet state);
two raw values share a symbol iff they are byte-identical.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import Dict, Iterable, Iterator, List, Optional, Sequence, Tuple

import numpy as np


logger = logging.getLogger(__name__)

Symbol = int

# A slot with no measurement. Never interned, never equal to anything.
MISSING = None

# numpy code used for MISSING slots
MISSING_CODE = -1


class SeriesError(Exception):
    """Raised when a series cannot be built from the given input."""


class SlotIndexError(SeriesError, IndexError):
    """Raised for a slot index outside the series."""


class SymbolTable:
    """Dense, bijective mapping between raw values and symbol ids."""

    def __init__(self, entries: Iterable[bytes] = ()):
        self._entries: List[bytes] = []
        self._index: Dict[bytes, Symbol] = {}
        for raw in entries:
            self.intern(raw)

    def intern(self, raw: bytes) -> Symbol:
        if not isinstance(raw, (bytes, bytearray)):
            raise SeriesError(f'Raw values must be byte strings, got {type(raw).__name__}')
        raw = bytes(raw)
        symbol = self._index.get(raw)
        if symbol is None:
            symbol = len(self._entries)
            self._entries.append(raw)
            self._index[raw] = symbol
        return symbol

    def lookup(self, symbol: Symbol) -> bytes:
        if not 0 <= symbol < len(self._entries):
            raise SeriesError(f'Unknown symbol id {symbol}')
        return self._entries[symbol]

    def get(self, raw: bytes) -> Optional[Symbol]:
        return self._index.get(bytes(raw))

    @property
    def entries(self) -> Tuple[bytes, ...]:
        return tuple(self._entries)

    def __len__(self) -> int:
        return len(self._entries)

    def __contains__(self, raw: object) -> bool:
        return isinstance(raw, (bytes, bytearray)) and bytes(raw) in self._index

    def __iter__(self) -> Iterator[bytes]:
        return iter(self._entries)

    def __repr__(self) -> str:
        return f'SymbolTable({len(self._entries)} symbols)'


def intern(table: SymbolTable, raw: bytes) -> Symbol:
    """Return the id of ``raw`` in ``table``, appending it when unseen."""
    return table.intern(raw)


@dataclass(frozen=True, eq=False)
class SymbolSeries:
    series_id: str
    start_ts: int
    step: int
    slots: Tuple[Optional[Symbol], ...]
    table: SymbolTable
    # construction counters (records falling in an already filled slot / outside the window)
    duplicate_count: int = 0
    dropped_count: int = 0
    _codes: np.ndarray = field(init=False, repr=False)

    def __post_init__(self):
        if self.step <= 0:
            raise SeriesError(f'Step must be positive, got {self.step}')
        slots = tuple(self.slots)
        size = len(self.table)
        for value in slots:
            if value is not MISSING and not 0 <= value < size:
                raise SeriesError(f'Slot value {value} is not a symbol of the series table')
        codes = np.fromiter(
            (MISSING_CODE if value is MISSING else value for value in slots),
            dtype=np.int64,
            count=len(slots),
        )
        codes.flags.writeable = False
        object.__setattr__(self, 'slots', slots)
        object.__setattr__(self, '_codes', codes)

    @property
    def codes(self) -> np.ndarray:
        """Read-only int64 view of the slots, MISSING encoded as -1."""
        return self._codes

    @property
    def end_ts(self) -> int:
        return self.start_ts + len(self.slots) * self.step

    def __len__(self) -> int:
        return len(self.slots)

    def slot_time(self, i: int) -> int:
        if not 0 <= i <= len(self.slots):
            raise SlotIndexError(f'Slot {i} outside series {self.series_id!r} of {len(self.slots)} slots')
        return self.start_ts + i * self.step

    def raw(self, i: int) -> Optional[bytes]:
        value = self.slots[i]
        return None if value is MISSING else self.table.lookup(value)

    def raw_slots(self) -> Tuple[Optional[bytes], ...]:
        return tuple(None if v is MISSING else self.table.lookup(v) for v in self.slots)

    def decode(self, symbols: Sequence[Optional[Symbol]]) -> List[Optional[bytes]]:
        return [None if v is MISSING else self.table.lookup(v) for v in symbols]

    def symbol_counts(self) -> Dict[Symbol, int]:
        counts: Dict[Symbol, int] = {}
        for value in self.slots:
            if value is not MISSING:
                counts[value] = counts.get(value, 0) + 1
        return counts

    def with_slots(self, slots: Sequence[Optional[Symbol]]) -> 'SymbolSeries':
        """Same id, origin, cadence and alphabet, different content."""
        return SymbolSeries(
            series_id=self.series_id,
            start_ts=self.start_ts,
            step=self.step,
            slots=tuple(slots),
            table=self.table,
        )

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, SymbolSeries):
            return NotImplemented
        return (
            self.series_id == other.series_id
            and self.start_ts == other.start_ts
            and self.step == other.step
            and self.raw_slots() == other.raw_slots()
        )

    __hash__ = None


def slot_count(start_ts: int, end_ts: int, step: int) -> int:
    return -(-(end_ts - start_ts) // step)


def slot_time(series: SymbolSeries, i: int) -> int:
    return series.slot_time(i)


@dataclass
class SlotAssignment:
    """Which input record fills each slot of a grid."""
    winners: List[Optional[int]]
    duplicates: int = 0
    dropped: int = 0


def assign_slots(timestamps: Sequence[int], start_ts: int, end_ts: int, step: int) -> SlotAssignment:
    """Place records on the grid [start_ts, end_ts) with the given step.

    Records outside the window are dropped; when several records fall into
    one slot the earliest one (file order on equal timestamps) is kept.
    """
    if step <= 0:
        raise SeriesError(f'Step must be positive, got {step}')
    if end_ts <= start_ts:
        raise SeriesError(f'Empty window [{start_ts}, {end_ts})')

    winners: List[Optional[int]] = [None] * slot_count(start_ts, end_ts, step)
    duplicates = 0
    dropped = 0
    order = sorted(range(len(timestamps)), key=lambda k: timestamps[k])
    for k in order:
        ts = timestamps[k]
        if ts < start_ts or ts >= end_ts:
            dropped += 1
            continue
        slot = (ts - start_ts) // step
        if winners[slot] is None:
            winners[slot] = k
        else:
            duplicates += 1
    return SlotAssignment(winners=winners, duplicates=duplicates, dropped=dropped)


def series_from_records(
    records: Sequence[Tuple[int, bytes]],
    start_ts: int,
    end_ts: int,
    step: int,
    series_id: str = '',
) -> SymbolSeries:
    """Build a series from (timestamp, raw value) records."""
    assignment = assign_slots([ts for ts, _ in records], start_ts, end_ts, step)
    table = SymbolTable()
    slots = [
        MISSING if k is None else table.intern(records[k][1])
        for k in assignment.winners
    ]
    if assignment.dropped:
        logger.warning(f'Series {series_id!r}: dropped {assignment.dropped} records outside [{start_ts}, {end_ts})')
    if assignment.duplicates:
        logger.warning(f'Series {series_id!r}: {assignment.duplicates} records fell into an already filled slot')
    return SymbolSeries(
        series_id=series_id,
        start_ts=start_ts,
        step=step,
        slots=tuple(slots),
        table=table,
        duplicate_count=assignment.duplicates,
        dropped_count=assignment.dropped,
    )
