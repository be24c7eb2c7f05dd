import io
import json

from django.test import SimpleTestCase

from series.interchange import load_series, read_series, series_from_record, series_to_record, write_series
from series.symbols import SeriesError, SymbolSeries, SymbolTable

from .helpers import make_series


class InterchangeTests(SimpleTestCase):

    def test_round_trip_keeps_slots_and_ids(self):
        series = make_series(['B', None, 'A', 'B'], alphabet=['A', 'B', 'C'])
        buffer = io.StringIO()
        self.assertEqual(write_series(buffer, [series]), 1)
        buffer.seek(0)
        (back,) = list(read_series(buffer))
        self.assertEqual(back, series)
        self.assertEqual(back.slots, series.slots)
        self.assertEqual(back.table.entries, (b'A', b'B', b'C'))

    def test_record_schema(self):
        record = series_to_record(make_series(['A', None], series_id='p>a', start_ts=60, step=30), with_alphabet=False)
        self.assertEqual(record, {'series_id': 'p>a', 'start_ts': 60, 'step': 30, 'slots': ['A', None]})

    def test_undecodable_raw_value_is_replaced(self):
        series = SymbolSeries('bin', 0, 900, (0, 1, 0), SymbolTable([b'\xff\xfe', b'ok']))
        record = series_to_record(series)
        self.assertEqual(record['slots'], ['\ufffd\ufffd', 'ok', '\ufffd\ufffd'])
        self.assertEqual(record['alphabet'], ['\ufffd\ufffd', 'ok'])
        buffer = io.StringIO()
        self.assertEqual(write_series(buffer, [series]), 1)
        self.assertIn('"ok"', buffer.getvalue())

    def test_record_without_alphabet(self):
        series = series_from_record({'series_id': 'x', 'start_ts': 0, 'step': 1, 'slots': ['q', 'p', 'q']})
        self.assertEqual(series.slots, (0, 1, 0))

    def test_invalid_records(self):
        with self.assertRaises(SeriesError):
            series_from_record({'series_id': 'x', 'step': 1, 'slots': []})
        with self.assertRaises(SeriesError):
            series_from_record({'series_id': 'x', 'start_ts': 0, 'step': 1, 'slots': [1]})
        with self.assertRaises(SeriesError):
            list(read_series(io.StringIO('{not json}\n')))

    def test_blank_lines_are_skipped(self):
        line = json.dumps({'series_id': 'x', 'start_ts': 0, 'step': 1, 'slots': ['a']})
        self.assertEqual(len(load_series(io.StringIO(f'\n{line}\n\n{line}\n'))), 2)

    def test_file_paths(self):
        import tempfile
        from pathlib import Path

        series = SymbolSeries('f', 0, 900, (0, 0), SymbolTable([b'10.0.0.1|*']))
        with tempfile.TemporaryDirectory() as tmp:
            path = Path(tmp) / 'series.jsonl'
            write_series(path, [series])
            self.assertEqual(load_series(path), [series])
