"""Paris-id attribution of detected periodicities.

A periodicity is attributed to the Paris traceroute flow identifier when some
path of its pattern comes out every time a given paris id is used inside the
periodic interval. An id seen only once inside the interval proves nothing and
is ignored.
"""

from __future__ import annotations

import enum
import logging
from collections import defaultdict
from dataclasses import dataclass, field
from typing import Dict, Optional, Set

from series.periodicity import Periodicity
from series.symbols import MISSING, Symbol

from .pairs import PairSeries


logger = logging.getLogger(__name__)

MIN_ID_OCCURRENCES = 2


class AttributionStatus(enum.Enum):
    ATTRIBUTED = 'attributed'
    NOT_ATTRIBUTED = 'not_attributed'
    UNKNOWN = 'unknown'


@dataclass(frozen=True)
class ParisAttribution:
    status: AttributionStatus
    # paris id -> the single pattern path it always produced
    associations: Dict[int, bytes] = field(default_factory=dict)
    # every path of the pattern is locked to at least one paris id
    all_locked: bool = False

    @property
    def attributed(self) -> bool:
        return self.status is AttributionStatus.ATTRIBUTED


UNKNOWN = ParisAttribution(AttributionStatus.UNKNOWN)


def paris_attribution(pair: PairSeries, periodicity: Periodicity) -> ParisAttribution:
    if not pair.has_paris:
        return UNKNOWN

    pattern_symbols: Set[Symbol] = {value for value in periodicity.pattern if value is not MISSING}
    seen: Dict[int, Set[Optional[Symbol]]] = defaultdict(set)
    uses: Dict[int, int] = defaultdict(int)
    for i in range(periodicity.start_slot, periodicity.end_slot):
        paris_id = pair.paris_ids[i]
        if paris_id is None:
            continue
        uses[paris_id] += 1
        seen[paris_id].add(pair.series.slots[i])

    associations: Dict[int, bytes] = {}
    locked: Set[Symbol] = set()
    for paris_id in sorted(seen):
        symbols = seen[paris_id]
        if uses[paris_id] < MIN_ID_OCCURRENCES or len(symbols) != 1:
            continue
        (symbol,) = symbols
        if symbol in pattern_symbols:
            associations[paris_id] = pair.series.table.lookup(symbol)
            locked.add(symbol)

    if not associations:
        return ParisAttribution(AttributionStatus.NOT_ATTRIBUTED)
    logger.debug(f'{pair.series_id}: period {periodicity.period_slots} locked by {len(associations)} paris ids')
    return ParisAttribution(
        status=AttributionStatus.ATTRIBUTED,
        associations=associations,
        all_locked=locked == pattern_symbols,
    )
