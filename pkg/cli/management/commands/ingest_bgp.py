from bgp.state import window_state_series
from bgp.updates import parse_bgp_updates, prefixes_of
from cli.detection import bgp_window
from cli.forms import IngestBgpForm
from cli.options import PeriodicityCommand, ensure_parent
from series.interchange import write_series


class Command(PeriodicityCommand):
    help = 'Replay BGP updates into one Internet-state series per prefix'
    form_class = IngestBgpForm

    def add_options(self, parser):
        parser.add_argument('--input', help='BGP updates JSONL')
        parser.add_argument('--output', help='Series JSONL file')
        parser.add_argument('--prefix', help='Only this prefix; all prefixes otherwise')
        parser.add_argument('--step', type=int, help='Seconds per slot')
        parser.add_argument('--start', type=int)
        parser.add_argument('--end', type=int)
        parser.add_argument('--window-hours', dest='window_hours', type=float,
                            help='Keep the busiest window of this length per prefix')

    def run(self, options):
        with open(options['input'], 'r', encoding='utf-8') as fp:
            parsed = parse_bgp_updates(fp, options.get('prefix'))

        series = []
        for prefix in prefixes_of(parsed.updates):
            updates = [u for u in parsed.updates if u.prefix == prefix]
            t0, t1 = bgp_window(updates, options)
            states = window_state_series(updates, t0, t1, step=options['step'], prefix=prefix)
            series.append(states.series)
        written = write_series(ensure_parent(options['output']), series)

        summary = parsed.to_summary()
        self.report(f'Updates: {summary["updates"]} of {summary["total_lines"]}, malformed {summary["malformed"]}')
        self.report(f'State series written: {written}')
