"""JSON Lines interchange of symbol series.

One series per line::

    {"series_id": str, "start_ts": int, "step": int, "slots": [str|null, ...]}

``null`` encodes MISSING. An optional ``"alphabet"`` list carries the symbol
table in id order so that re-ingesting keeps the same ids.
"""

from __future__ import annotations

import json
import logging
from pathlib import Path
from typing import Any, Dict, IO, Iterable, Iterator, List, Union

from .symbols import MISSING, SeriesError, SymbolSeries, SymbolTable


logger = logging.getLogger(__name__)


def series_to_record(series: SymbolSeries, with_alphabet: bool = True) -> Dict[str, Any]:
    record: Dict[str, Any] = {
        'series_id': series.series_id,
        'start_ts': series.start_ts,
        'step': series.step,
        'slots': [None if raw is None else raw.decode('utf-8', errors='replace') for raw in series.raw_slots()],
    }
    if with_alphabet:
        record['alphabet'] = [raw.decode('utf-8', errors='replace') for raw in series.table]
    return record


def series_from_record(record: Dict[str, Any]) -> SymbolSeries:
    try:
        series_id = str(record['series_id'])
        start_ts = int(record['start_ts'])
        step = int(record['step'])
        raw_slots = record['slots']
    except (KeyError, TypeError, ValueError) as exc:
        raise SeriesError(f'Invalid series record: {exc}') from exc
    if not isinstance(raw_slots, list):
        raise SeriesError(f'Series {series_id!r}: "slots" must be a list')

    table = SymbolTable(value.encode('utf-8') for value in record.get('alphabet') or [])
    slots = []
    for value in raw_slots:
        if value is None:
            slots.append(MISSING)
        elif isinstance(value, str):
            slots.append(table.intern(value.encode('utf-8')))
        else:
            raise SeriesError(f'Series {series_id!r}: slot values must be strings or null')
    return SymbolSeries(series_id=series_id, start_ts=start_ts, step=step, slots=tuple(slots), table=table)


def write_series(target: Union[str, Path, IO[str]], series: Iterable[SymbolSeries]) -> int:
    """Write series as JSON Lines; returns the number written."""
    if isinstance(target, (str, Path)):
        with open(target, 'w', encoding='utf-8') as fp:
            return write_series(fp, series)
    written = 0
    for item in series:
        target.write(json.dumps(series_to_record(item), separators=(',', ':')) + '\n')
        written += 1
    return written


def read_series(source: Union[str, Path, IO[str]]) -> Iterator[SymbolSeries]:
    if isinstance(source, (str, Path)):
        with open(source, 'r', encoding='utf-8') as fp:
            yield from read_series(fp)
        return
    for lineno, line in enumerate(source, start=1):
        line = line.strip()
        if not line:
            continue
        try:
            record = json.loads(line)
        except json.JSONDecodeError as exc:
            raise SeriesError(f'Line {lineno}: not valid JSON ({exc})') from exc
        yield series_from_record(record)


def load_series(source: Union[str, Path, IO[str]]) -> List[SymbolSeries]:
    series = list(read_series(source))
    logger.info(f'Loaded {len(series)} series')
    return series
