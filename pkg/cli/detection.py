"""Detection over each input source, reduced to one outcome shape for output."""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import Any, Callable, Dict, List, Optional

from bgp.state import detect_state_series, state_classes, window_state_series
from bgp.swaps import detect_as_swap
from bgp.updates import busiest_window, parse_bgp_updates, prefixes_of
from detector.config import DetectorConfig
from detector.models import DetectionRun
from detector.pipeline import SeriesDetections, detect_many, periodicity_records
from series.interchange import load_series
from series.periodicity import periodicity_to_record
from traceroute.analysis import analyze_pairs
from traceroute.pairs import PairStats, group_pairs
from traceroute.parsing import TracerouteParseResult, parse_atlas_results, parse_traceroute_records

from .options import usage_error


logger = logging.getLogger(__name__)


@dataclass
class DetectOutcome:
    results: List[SeriesDetections]
    records: List[Dict[str, Any]]
    store_source: str = DetectionRun.Source.SERIES
    extra: Dict[str, Any] = field(default_factory=dict)
    pair_stats: Dict[str, PairStats] = field(default_factory=dict)


def detect_symbol_series(options: Dict[str, Any], config: DetectorConfig) -> DetectOutcome:
    series = load_series(options['input'])
    results = detect_many(series, config, workers=options['workers'])
    return DetectOutcome(results=results, records=list(periodicity_records(results)))


def _read_traceroutes(path: str, parser: Callable) -> TracerouteParseResult:
    with open(path, 'r', encoding='utf-8') as fp:
        return parser(fp)


def traceroute_window(records, options: Dict[str, Any]) -> tuple:
    """--start/--end, each defaulting to the span of the records."""
    start, end = options.get('start'), options.get('end')
    if start is None:
        start = min(r.ts for r in records)
    if end is None:
        end = max(r.ts for r in records) + 1
    if end <= start:
        raise usage_error(f'Empty window [{start}, {end})')
    return start, end


def detect_traceroutes(options: Dict[str, Any], config: DetectorConfig) -> DetectOutcome:
    parser = parse_atlas_results if options['source'] == 'atlas' else parse_traceroute_records
    parsed = _read_traceroutes(options['input'], parser)
    if not parsed.records:
        logger.warning(f'No traceroute records in {options["input"]}')
        return DetectOutcome(results=[], records=[], store_source=DetectionRun.Source.TRACEROUTE,
                             extra={'parse': parsed.to_summary()})

    pairs = group_pairs(parsed.records, *traceroute_window(parsed.records, options), options['step'])
    analysis = analyze_pairs(pairs, config, workers=options['workers'])

    if options.get('paris'):
        records = sorted(
            (finding.record() for finding in analysis.findings),
            key=lambda r: (r['series_id'], r['start_slot'], r['period_slots']),
        )
    else:
        records = list(periodicity_records(analysis.results))
    extra = {'parse': parsed.to_summary()}
    if options.get('paris'):
        extra['attribution'] = analysis.attribution_summary()
    return DetectOutcome(
        results=analysis.results, records=records, store_source=DetectionRun.Source.TRACEROUTE,
        extra=extra, pair_stats=analysis.stats,
    )


def detect_bgp(options: Dict[str, Any], config: DetectorConfig) -> DetectOutcome:
    with open(options['input'], 'r', encoding='utf-8') as fp:
        parsed = parse_bgp_updates(fp, options.get('prefix'))
    updates = parsed.updates
    if not updates:
        logger.warning(f'No BGP updates in {options["input"]}')
        return DetectOutcome(results=[], records=[], store_source=DetectionRun.Source.BGP,
                             extra={'parse': parsed.to_summary()})
    prefixes = prefixes_of(updates)
    if len(prefixes) > 1:
        raise usage_error(f'Updates cover {len(prefixes)} prefixes, choose one with --prefix')

    t0, t1 = bgp_window(updates, options)
    states = window_state_series(updates, t0, t1, step=options['step'], prefix=prefixes[0])
    threshold = options['state_threshold']
    result = detect_state_series(states, config, threshold)

    records = []
    for periodicity in sorted(result.periodicities, key=lambda p: (p.start_slot, p.period_slots)):
        record = periodicity_to_record(periodicity, states.series)
        record['distinct_states'] = state_classes(states, periodicity.pattern, threshold)
        record['as_swaps'] = [[s.peer, s.first_as, s.second_as] for s in detect_as_swap(states, periodicity)]
        records.append(record)
    extra = {
        'parse': parsed.to_summary(),
        'prefix': states.prefix,
        'peers': len(states.peers),
        'window': [t0, t1],
        'state_threshold': threshold,
    }
    return DetectOutcome(results=[result], records=records, store_source=DetectionRun.Source.BGP, extra=extra)


def bgp_window(updates, options: Dict[str, Any]) -> tuple:
    """--start/--end, else the busiest --window-hours, else the whole data range."""
    start, end = options.get('start'), options.get('end')
    if start is None and end is None and options.get('window_hours'):
        return busiest_window(updates, options['window_hours'])
    if start is None:
        start = updates[0].ts
    if end is None:
        end = updates[-1].ts + 1
    if end <= start:
        raise usage_error(f'Empty window [{start}, {end})')
    return start, end


SOURCES = {
    'series': detect_symbol_series,
    'traceroute': detect_traceroutes,
    'atlas': detect_traceroutes,
    'bgp': detect_bgp,
}


def run_detection(options: Dict[str, Any], config: Optional[DetectorConfig] = None) -> DetectOutcome:
    config = config or options['detector_config']
    outcome = SOURCES[options['source']](options, config)
    logger.info(f'{options["source"]} input {options["input"]}: {len(outcome.records)} periodicities')
    return outcome
