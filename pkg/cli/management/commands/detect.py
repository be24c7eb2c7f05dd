import json

from cli.detection import run_detection
from cli.forms import DetectForm
from cli.options import PeriodicityCommand, ensure_parent
from cli.summary import write_detection_summary, write_pair_stats
from detector.store import save_run


class Command(PeriodicityCommand):
    help = 'Detect periodicities in symbol series, traceroute records or BGP updates'
    form_class = DetectForm

    def add_options(self, parser):
        parser.add_argument('--input', help='Series JSONL, traceroute records or BGP updates')
        parser.add_argument('--output', help='Periodicity JSONL file, or a directory with --format tables')
        parser.add_argument('--source', choices=['series', 'traceroute', 'atlas', 'bgp'])
        parser.add_argument('--format', choices=['records', 'tables'])
        parser.add_argument('--step', type=int, help='Seconds per slot')
        parser.add_argument('--start', type=int, help='First timestamp of the grid')
        parser.add_argument('--end', type=int, help='Timestamp after the last slot')
        parser.add_argument('--theta', type=float, help='Peak threshold on the normalized ACF')
        parser.add_argument('--eps-y', dest='eps_y', type=float)
        parser.add_argument('--gap-cv', dest='gap_cv', type=float)
        parser.add_argument('--min-reps', dest='min_reps', type=int)
        parser.add_argument('--workers', type=int)
        parser.add_argument('--state-threshold', dest='state_threshold', type=float)
        parser.add_argument('--paris', action='store_true', default=None, help='Annotate Paris-id attribution')
        parser.add_argument('--prefix', help='BGP prefix to analyse')
        parser.add_argument('--window-hours', dest='window_hours', type=float,
                            help='Analyse the busiest window of this length')
        parser.add_argument('--store', action='store_true', default=None, help='Persist the run in the database')

    def run(self, options):
        outcome = run_detection(options)

        if options['format'] == 'tables':
            extra = dict(outcome.extra)
            write_detection_summary(options['output'], outcome.results, outcome.records, extra)
            if outcome.pair_stats:
                write_pair_stats(options['output'], outcome.pair_stats)
        else:
            target = ensure_parent(options['output'])
            with open(target, 'w', encoding='utf-8') as fp:
                for record in outcome.records:
                    fp.write(json.dumps(record, separators=(',', ':'), sort_keys=True) + '\n')

        if options.get('store'):
            run = save_run(outcome.results, options['detector_config'], outcome.store_source, options['input'])
            self.report(f'Stored run {run.pk}')

        periodic = sum(1 for r in outcome.results if r.periodicities)
        self.report(f'Series analyzed: {len(outcome.results)}')
        self.report(f'Series with periodicities: {periodic}')
        self.report(f'Periodicities: {len(outcome.records)}')
