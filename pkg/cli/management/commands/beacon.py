from bgp.beacon import BEACON_PREFIX, HALF_PERIOD, synth_beacon
from bgp.updates import write_updates
from cli.forms import BeaconForm
from cli.options import PeriodicityCommand, ensure_parent


class Command(PeriodicityCommand):
    help = f'Synthesize the update stream of a beacon prefix announced and withdrawn every {HALF_PERIOD // 3600} hours'
    form_class = BeaconForm

    def add_options(self, parser):
        parser.add_argument('--output', help='BGP updates JSONL')
        parser.add_argument('--start', type=int, help='Timestamp of the first announcement')
        parser.add_argument('--hours', type=float, help='Length of the stream, at least 4')
        parser.add_argument('--peers', type=int, help='Number of collector peers')
        parser.add_argument('--flap-pct', dest='flap_pct', type=float,
                            help='Percentage of peers flapping at random every second')
        parser.add_argument('--seed', type=int)
        parser.add_argument('--prefix')

    def run(self, options):
        updates = synth_beacon(
            t0=options['start'] if options.get('start') is not None else 0,
            duration=int(round((options.get('hours') or 24) * 3600)),
            peers=options['peers'] if options.get('peers') is not None else 100,
            prefix=options.get('prefix') or BEACON_PREFIX,
            flap_fraction=(options.get('flap_pct') or 0) / 100,
            seed=options.get('seed') or 0,
        )
        with open(ensure_parent(options['output']), 'w', encoding='utf-8') as fp:
            written = write_updates(fp, updates)
        self.report(f'Beacon updates written: {written}')
