"""EvalReport as a JSON document plus plot-ready CSV tables."""

from __future__ import annotations

import csv
import json
import logging
from pathlib import Path
from typing import Dict, List, Union

from .scoring import EvalReport


logger = logging.getLogger(__name__)

REPORT_FILE = 'report.json'
FN_BY_PERIOD_FILE = 'fn_by_period_length.csv'
FN_BY_REPETITIONS_FILE = 'fn_by_repetitions.csv'
NOISE_SWEEP_FILE = 'noise_sweep.csv'


def _write_rows(path: Path, header: List[str], rows) -> None:
    with open(path, 'w', encoding='utf-8', newline='') as fp:
        writer = csv.writer(fp)
        writer.writerow(header)
        writer.writerows(rows)


def _pct(value: float) -> str:
    return f'{value * 100:g}'


def write_report(report: EvalReport, directory: Union[str, Path]) -> Dict[str, Path]:
    """Write the report files into ``directory``; returns them by name."""
    directory = Path(directory)
    directory.mkdir(parents=True, exist_ok=True)
    baseline = report.baseline
    paths = {
        'report': directory / REPORT_FILE,
        'fn_by_period_length': directory / FN_BY_PERIOD_FILE,
        'fn_by_repetitions': directory / FN_BY_REPETITIONS_FILE,
        'noise_sweep': directory / NOISE_SWEEP_FILE,
    }
    with open(paths['report'], 'w', encoding='utf-8') as fp:
        json.dump(report.as_dict(), fp, indent=2, sort_keys=True)
        fp.write('\n')
    _write_rows(paths['fn_by_period_length'], ['period', 'count'], sorted(baseline.fn_by_period.items()))
    _write_rows(paths['fn_by_repetitions'], ['repetitions', 'count'], sorted(baseline.fn_by_repetitions.items()))
    _write_rows(
        paths['noise_sweep'],
        ['pct', 'found_rate', 'fp_rate', 'char_accuracy'],
        [
            [_pct(level.noise), f'{level.found_rate:.6f}', f'{level.false_positive_rate:.6f}',
             f'{level.characterization_accuracy:.6f}']
            for level in report.levels
        ],
    )
    logger.info(f'Wrote evaluation report to {directory}')
    return paths
