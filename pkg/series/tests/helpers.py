from typing import Optional, Sequence

from series.symbols import MISSING, SymbolSeries, SymbolTable


def make_series(values: Sequence[Optional[str]], series_id: str = 's', start_ts: int = 0, step: int = 900,
                alphabet: Sequence[str] = ()) -> SymbolSeries:
    """Series from single-character (or longer) strings, None for MISSING."""
    table = SymbolTable(a.encode() for a in alphabet)
    slots = tuple(MISSING if v is None else table.intern(v.encode()) for v in values)
    return SymbolSeries(series_id=series_id, start_ts=start_ts, step=step, slots=slots, table=table)


def sentinels(count: int, prefix: str = 'z') -> list:
    """Distinct symbols that appear nowhere else."""
    return [f'{prefix}{i}' for i in range(count)]
