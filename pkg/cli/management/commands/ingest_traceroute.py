from cli.detection import traceroute_window
from cli.forms import IngestTracerouteForm
from cli.options import PeriodicityCommand, ensure_parent, runtime_error
from cli.summary import write_pair_stats
from series.interchange import write_series
from traceroute.atlas import fetch_traceroutes
from traceroute.pairs import group_pairs, pair_stats
from traceroute.parsing import parse_atlas_results, parse_traceroute_records


class Command(PeriodicityCommand):
    help = 'Turn traceroute records into one path series per (src, dst) pair'
    form_class = IngestTracerouteForm

    def add_options(self, parser):
        parser.add_argument('--input', help='Traceroute records (JSONL) or archive results')
        parser.add_argument('--atlas-measurement', dest='atlas_measurement', type=int,
                            help='Download this measurement from the archive API instead of --input')
        parser.add_argument('--output', help='Series JSONL file')
        parser.add_argument('--format', choices=['jsonl', 'atlas'], help='atlas reads archive result files')
        parser.add_argument('--step', type=int, help='Seconds per slot')
        parser.add_argument('--start', type=int)
        parser.add_argument('--end', type=int)
        parser.add_argument('--stats', help='Directory for per-pair path statistics')

    def read(self, options):
        if options.get('atlas_measurement'):
            parsed, error = fetch_traceroutes(options['atlas_measurement'], options['start'], options['end'])
            if error:
                raise runtime_error(f'Cannot download measurement {options["atlas_measurement"]}: {error}')
            return parsed
        parser = parse_atlas_results if options['format'] == 'atlas' else parse_traceroute_records
        with open(options['input'], 'r', encoding='utf-8') as fp:
            return parser(fp)

    def run(self, options):
        parsed = self.read(options)

        pairs = []
        if parsed.records:
            pairs = group_pairs(parsed.records, *traceroute_window(parsed.records, options), options['step'])
        written = write_series(ensure_parent(options['output']), [pair.series for pair in pairs])
        if options.get('stats'):
            write_pair_stats(options['stats'], {pair.series_id: pair_stats(pair.series) for pair in pairs})

        summary = parsed.to_summary()
        self.report(f'Records: {summary["records"]} of {summary["total_lines"]}, malformed {summary["malformed"]}')
        self.report(f'Pair series written: {written}')
