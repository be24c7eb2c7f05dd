import json
from collections import defaultdict
from pathlib import Path

from cli.forms import EvaluateForm
from cli.management.commands.generate import SERIES_FILE, TRUTH_FILE
from cli.options import PeriodicityCommand, runtime_error
from series.interchange import load_series
from series.periodicity import periodicity_from_record
from validation.reports import write_report
from validation.scoring import EvalReport, evaluate_series, score_level
from validation.truth import read_truth


class Command(PeriodicityCommand):
    help = 'Score detections against the ground truth of a synthetic corpus'
    form_class = EvaluateForm

    def add_options(self, parser):
        parser.add_argument('--input', help='Directory written by generate; detection runs here')
        parser.add_argument('--truth', help='Ground-truth JSONL, together with --detections')
        parser.add_argument('--detections', help='Periodicity JSONL written by detect')
        parser.add_argument('--output', help='Report directory')
        parser.add_argument('--noise', help='Comma-separated noise percentages, e.g. 0,2,5,10,15')
        parser.add_argument('--seed', type=int, help='Noise seed')
        parser.add_argument('--overlap', type=float, help='Minimum overlap ratio of a match')
        parser.add_argument('--theta', type=float)
        parser.add_argument('--eps-y', dest='eps_y', type=float)
        parser.add_argument('--gap-cv', dest='gap_cv', type=float)
        parser.add_argument('--min-reps', dest='min_reps', type=int)
        parser.add_argument('--workers', type=int)

    def run(self, options):
        if options.get('input'):
            report = self.evaluate_corpus(options)
        else:
            report = self.evaluate_files(options)
        write_report(report, options['output'])

        self.report(f'Found rate: {report.found_rate:.4f}')
        self.report(f'False negative rate: {report.false_negative_rate:.4f}')
        self.report(f'False positives: {report.false_positive_count} ({report.false_positive_rate:.4f})')
        self.report(f'Characterization accuracy: {report.characterization_accuracy:.4f}')

    def evaluate_corpus(self, options) -> EvalReport:
        directory = Path(options['input'])
        series = load_series(directory / SERIES_FILE)
        truth = read_truth(directory / TRUTH_FILE, {item.series_id: item.table for item in series})
        unknown = sorted(set(truth.series_ids) - {item.series_id for item in series})
        if unknown:
            raise runtime_error(f'Ground truth names series missing from the corpus: {", ".join(unknown[:5])}')
        return evaluate_series(
            series, truth, options['noise'], options['detector_config'],
            noise_seed=options.get('seed') or 0,
            overlap_threshold=options['overlap'],
            workers=options['workers'],
        )

    def evaluate_files(self, options) -> EvalReport:
        tables = {}
        truth = read_truth(options['truth'], tables)
        detections = defaultdict(list)
        with open(options['detections'], 'r', encoding='utf-8') as fp:
            for lineno, line in enumerate(fp, start=1):
                line = line.strip()
                if not line:
                    continue
                record = json.loads(line)
                series_id = record.get('series_id')
                if series_id not in truth:
                    raise runtime_error(f'Line {lineno}: series {series_id!r} is not in the ground truth')
                detections[series_id].append(periodicity_from_record(record, tables[series_id]))
        level = score_level(detections, truth, 0.0, options['overlap'])
        return EvalReport(levels=[level], periodicities_per_series=truth.periodicities_per_series())
