"""Detection over traceroute pairs, annotated with path and Paris-id facts."""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional, Sequence

from detector.config import DetectorConfig
from detector.pipeline import SeriesDetections, detect_many
from series.periodicity import Periodicity, periodicity_to_record

from .pairs import PairSeries, PairStats, asterisk_alternation, pair_stats
from .paris import AttributionStatus, ParisAttribution, paris_attribution


logger = logging.getLogger(__name__)

# attributed patterns with fewer paths than this are counted separately
FEW_PATHS = 6


@dataclass
class PeriodicityFinding:
    pair: PairSeries
    periodicity: Periodicity
    attribution: ParisAttribution
    asterisk_alternation: bool = False

    @property
    def distinct_paths(self) -> int:
        return self.periodicity.distinct_values()

    def record(self) -> Dict[str, Any]:
        record = periodicity_to_record(self.periodicity, self.pair.series)
        record.update({
            'distinct_paths': self.distinct_paths,
            'paris_attribution': self.attribution.status.value,
            'paris_all_locked': self.attribution.all_locked,
            'paris_associations': {
                str(k): v.decode('ascii') for k, v in self.attribution.associations.items()
            },
            'asterisk_alternation': self.asterisk_alternation,
        })
        return record


@dataclass
class TracerouteAnalysis:
    findings: List[PeriodicityFinding] = field(default_factory=list)
    results: List[SeriesDetections] = field(default_factory=list)
    stats: Dict[str, PairStats] = field(default_factory=dict)
    pairs_analyzed: int = 0
    pairs_periodic: int = 0

    @property
    def periodic_share(self) -> float:
        return self.pairs_periodic / self.pairs_analyzed if self.pairs_analyzed else 0.0

    def attribution_summary(self) -> Dict[str, Any]:
        known = [f for f in self.findings if f.attribution.status is not AttributionStatus.UNKNOWN]
        attributed = [f for f in known if f.attribution.attributed]
        all_locked = [f for f in attributed if f.attribution.all_locked]
        few_paths = [f for f in attributed if f.distinct_paths < FEW_PATHS]
        return {
            'periodicities': len(self.findings),
            'with_paris_ids': len(known),
            'attributed_any': len(attributed),
            'attributed_all': len(all_locked),
            'attributed_any_rate': len(attributed) / len(known) if known else 0.0,
            'attributed_all_rate': len(all_locked) / len(known) if known else 0.0,
            'attributed_few_paths_share': len(few_paths) / len(attributed) if attributed else 0.0,
            'asterisk_alternations': sum(1 for f in self.findings if f.asterisk_alternation),
        }


def annotate(pair: PairSeries, periodicity: Periodicity) -> PeriodicityFinding:
    raw_pattern = pair.series.decode(periodicity.pattern)
    return PeriodicityFinding(
        pair=pair,
        periodicity=periodicity,
        attribution=paris_attribution(pair, periodicity),
        asterisk_alternation=asterisk_alternation(raw_pattern),
    )


def analyze_pairs(
    pairs: Sequence[PairSeries],
    config: Optional[DetectorConfig] = None,
    workers: int = 1,
    results: Optional[Sequence[SeriesDetections]] = None,
) -> TracerouteAnalysis:
    """Detect periodicities on every pair series and annotate each of them."""
    by_id = {pair.series_id: pair for pair in pairs}
    if results is None:
        results = detect_many([pair.series for pair in pairs], config, workers=workers)
    analysis = TracerouteAnalysis(pairs_analyzed=len(pairs), results=list(results))
    for pair in pairs:
        analysis.stats[pair.series_id] = pair_stats(pair.series)
    for result in results:
        pair = by_id[result.series_id]
        if result.periodicities:
            analysis.pairs_periodic += 1
        for periodicity in result.periodicities:
            analysis.findings.append(annotate(pair, periodicity))
    logger.info(
        f'{analysis.pairs_periodic} of {analysis.pairs_analyzed} pairs periodic, '
        f'{len(analysis.findings)} periodicities'
    )
    return analysis
