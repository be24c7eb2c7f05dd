from pathlib import Path

from cli.forms import GenerateForm
from cli.options import PeriodicityCommand
from series.interchange import write_series
from validation.generator import generate
from validation.truth import write_truth


SERIES_FILE = 'series.jsonl'
TRUTH_FILE = 'truth.jsonl'


class Command(PeriodicityCommand):
    help = 'Generate synthetic series with planted periodicities and their ground truth'
    form_class = GenerateForm

    def add_options(self, parser):
        parser.add_argument('--output', help='Directory for series.jsonl and truth.jsonl')
        parser.add_argument('--series-count', type=int)
        parser.add_argument('--slots', type=int, help='Slots per series')
        parser.add_argument('--alphabet', type=int, help='Alphabet size')
        parser.add_argument('--period-min', type=int)
        parser.add_argument('--period-max', type=int)
        parser.add_argument('--reps-min', type=int)
        parser.add_argument('--reps-max', type=int)
        parser.add_argument('--seed', type=int)
        parser.add_argument('--step', type=int, help='Seconds per slot')

    def run(self, options):
        config = options['generator_config']
        directory = Path(options['output'])
        directory.mkdir(parents=True, exist_ok=True)

        series, truth = generate(config)
        write_series(directory / SERIES_FILE, series)
        write_truth(directory / TRUTH_FILE, truth)

        self.report(f'Series: {len(series)}')
        self.report(f'Planted periodicities: {truth.total()}')
        for count, n_series in sorted(truth.periodicities_per_series().items()):
            self.report(f'  series with {count} periodicities: {n_series}')
