from cli.forms import PeriodicPairsForm
from cli.options import PeriodicityCommand, runtime_error
from detector.models import DetectionRun
from detector.store import sample_periodic_series


class Command(PeriodicityCommand):
    help = 'List the series with at least one periodicity in a stored detection run'
    form_class = PeriodicPairsForm

    def add_options(self, parser):
        parser.add_argument('--run', type=int, help='Run id; the latest run when omitted')
        parser.add_argument('--sample', type=int, help='Seeded sample of this many series')
        parser.add_argument('--seed', type=int)

    def run(self, options):
        runs = DetectionRun.objects.all()
        run = runs.filter(pk=options['run']).first() if options.get('run') else runs.first()
        if run is None:
            raise runtime_error(f'No stored detection run {options.get("run") or ""}'.strip())
        for series_id in sample_periodic_series(run, options.get('sample'), options.get('seed') or 0):
            self.report(series_id)
