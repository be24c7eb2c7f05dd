"""Plot-ready CSV tables summarizing a detection run."""

from __future__ import annotations

import csv
import json
import logging
from collections import Counter
from pathlib import Path
from typing import Any, Dict, Iterable, List, Optional, Sequence, Union

from detector.pipeline import SeriesDetections
from traceroute.pairs import PairStats


logger = logging.getLogger(__name__)

SUMMARY_FILE = 'summary.json'
PERIODICITIES_FILE = 'periodicities.csv'
DISTINCT_VALUES_FILE = 'distinct_values.csv'
REPETITIONS_FILE = 'repetitions.csv'
PATTERN_LENGTHS_FILE = 'pattern_lengths.csv'
DURATIONS_FILE = 'durations.csv'
PAIR_STATS_FILE = 'pair_stats.csv'
DISTINCT_PATHS_PER_PAIR_FILE = 'distinct_paths_per_pair.csv'

PERIODICITY_COLUMNS = [
    'series_id', 'period_slots', 'period_seconds', 'start_ts', 'end_ts', 'repetitions',
    'mismatch_count', 'distinct_values', 'duration_seconds',
]
TRACEROUTE_COLUMNS = ['paris_attribution', 'paris_all_locked', 'asterisk_alternation']
BGP_COLUMNS = ['distinct_states', 'as_swaps']


def _write_rows(path: Path, header: List[str], rows: Iterable[Sequence[Any]]) -> None:
    with open(path, 'w', encoding='utf-8', newline='') as fp:
        writer = csv.writer(fp)
        writer.writerow(header)
        writer.writerows(rows)


def _histogram(values: Iterable[int]) -> List[List[int]]:
    return [[value, count] for value, count in sorted(Counter(values).items())]


def summary_rows(records: Sequence[Dict[str, Any]]) -> List[Dict[str, Any]]:
    """Periodicity records enriched with the per-periodicity table columns."""
    rows = []
    for record in records:
        row = dict(record)
        row['distinct_values'] = len({v for v in record['pattern'] if v is not None})
        row['duration_seconds'] = record['end_ts'] - record['start_ts']
        rows.append(row)
    return rows


def write_detection_summary(
    directory: Union[str, Path],
    results: Sequence[SeriesDetections],
    records: Sequence[Dict[str, Any]],
    extra: Optional[Dict[str, Any]] = None,
) -> Dict[str, Path]:
    """summary.json plus one CSV per distribution of the detected periodicities."""
    directory = Path(directory)
    directory.mkdir(parents=True, exist_ok=True)
    rows = summary_rows(records)
    analyzed = len(results)
    periodic = sum(1 for r in results if r.periodicities)
    paths = {
        'summary': directory / SUMMARY_FILE,
        'periodicities': directory / PERIODICITIES_FILE,
        'distinct_values': directory / DISTINCT_VALUES_FILE,
        'repetitions': directory / REPETITIONS_FILE,
        'pattern_lengths': directory / PATTERN_LENGTHS_FILE,
        'durations': directory / DURATIONS_FILE,
    }
    summary = {
        'series_analyzed': analyzed,
        'series_periodic': periodic,
        'periodic_share': periodic / analyzed if analyzed else 0.0,
        'periodicity_count': len(rows),
    }
    summary.update(extra or {})
    with open(paths['summary'], 'w', encoding='utf-8') as fp:
        json.dump(summary, fp, indent=2, sort_keys=True)
        fp.write('\n')

    columns = list(PERIODICITY_COLUMNS)
    for optional in (TRACEROUTE_COLUMNS, BGP_COLUMNS):
        if rows and all(c in rows[0] for c in optional):
            columns.extend(optional)
    _write_rows(paths['periodicities'], columns, (
        [json.dumps(row[c]) if isinstance(row[c], (list, dict)) else row[c] for c in columns]
        for row in rows
    ))
    _write_rows(paths['distinct_values'], ['distinct_values', 'count'], _histogram(r['distinct_values'] for r in rows))
    _write_rows(paths['repetitions'], ['repetitions', 'count'], _histogram(r['repetitions'] for r in rows))
    _write_rows(
        paths['pattern_lengths'], ['period_slots', 'period_seconds', 'count'],
        ([slots, seconds, count] for (slots, seconds), count in sorted(
            Counter((r['period_slots'], r['period_seconds']) for r in rows).items()
        )),
    )
    _write_rows(paths['durations'], ['duration_seconds', 'count'], _histogram(r['duration_seconds'] for r in rows))
    logger.info(f'Wrote detection summary of {len(rows)} periodicities to {directory}')
    return paths


def write_pair_stats(directory: Union[str, Path], stats: Dict[str, PairStats]) -> Dict[str, Path]:
    """Distinct paths per pair and the spread of their occurrences."""
    directory = Path(directory)
    directory.mkdir(parents=True, exist_ok=True)
    paths = {
        'pair_stats': directory / PAIR_STATS_FILE,
        'distinct_paths_per_pair': directory / DISTINCT_PATHS_PER_PAIR_FILE,
    }
    _write_rows(
        paths['pair_stats'], ['series_id', 'distinct_paths', 'measured_slots', 'occurrence_std'],
        ([series_id, s.distinct_path_count, s.measured_slots, f'{s.occurrence_std:.6f}']
         for series_id, s in sorted(stats.items())),
    )
    _write_rows(
        paths['distinct_paths_per_pair'], ['distinct_paths', 'pairs'],
        _histogram(s.distinct_path_count for s in stats.values()),
    )
    return paths
