from django.test import SimpleTestCase

from series.symbols import (
    MISSING, SeriesError, SlotIndexError, SymbolSeries, SymbolTable,
    assign_slots, intern, series_from_records, slot_count, slot_time,
)


class SymbolTableTests(SimpleTestCase):

    def test_first_interning_is_zero(self):
        self.assertEqual(intern(SymbolTable(), b'A'), 0)

    def test_reinterning_is_idempotent(self):
        table = SymbolTable()
        intern(table, b'A')
        intern(table, b'B')
        self.assertEqual(intern(table, b'A'), 0)
        self.assertEqual(len(table), 2)

    def test_thirty_paths_get_dense_ids(self):
        table = SymbolTable()
        ids = [intern(table, f'path-{i}'.encode()) for i in range(30)]
        self.assertEqual(ids, list(range(30)))
        for i in range(30):
            self.assertEqual(table.lookup(i), f'path-{i}'.encode())

    def test_rejects_text(self):
        with self.assertRaises(SeriesError):
            SymbolTable().intern('A')

    def test_unknown_id(self):
        with self.assertRaises(SeriesError):
            SymbolTable([b'A']).lookup(1)


class SeriesFromRecordsTests(SimpleTestCase):

    def test_perfect_grid(self):
        records = [(0, b'A'), (900, b'B'), (1800, b'A'), (2700, b'C')]
        series = series_from_records(records, 0, 3600, 900)
        self.assertEqual(len(series), 4)
        self.assertNotIn(MISSING, series.slots)
        self.assertEqual(series.raw_slots(), (b'A', b'B', b'A', b'C'))

    def test_gap_becomes_missing(self):
        series = series_from_records([(0, b'A'), (1800, b'B')], 0, 2700, 900)
        self.assertEqual(series.raw_slots(), (b'A', None, b'B'))

    def test_earliest_record_of_a_slot_wins(self):
        with self.assertLogs('series.symbols', level='WARNING'):
            series = series_from_records([(200, b'B'), (10, b'A')], 0, 900, 900)
        self.assertEqual(series.raw_slots(), (b'A',))
        self.assertEqual(series.duplicate_count, 1)

    def test_records_outside_window_are_dropped(self):
        with self.assertLogs('series.symbols', level='WARNING'):
            series = series_from_records([(-5, b'X'), (0, b'A'), (900, b'Y')], 0, 900, 900)
        self.assertEqual(series.raw_slots(), (b'A',))
        self.assertEqual(series.dropped_count, 2)

    def test_slot_count_is_ceiling(self):
        self.assertEqual(slot_count(0, 1000, 900), 2)
        series = series_from_records([], 0, 1000, 900)
        self.assertEqual(series.slots, (MISSING, MISSING))

    def test_invalid_window(self):
        with self.assertRaises(SeriesError):
            series_from_records([], 10, 10, 900)
        with self.assertRaises(SeriesError):
            assign_slots([], 0, 10, 0)

    def test_equal_timestamps_keep_file_order(self):
        assignment = assign_slots([5, 5, 5], 0, 10, 10)
        self.assertEqual(assignment.winners, [0])
        self.assertEqual(assignment.duplicates, 2)


class SlotTimeTests(SimpleTestCase):

    def setUp(self):
        self.series = SymbolSeries('s', 0, 900, tuple([0] * 20), SymbolTable([b'A']))

    def test_slot_time(self):
        self.assertEqual(slot_time(self.series, 0), 0)
        self.assertEqual(slot_time(self.series, 16), 14400)
        other = SymbolSeries('t', 100, 60, (0, 0, 0), SymbolTable([b'A']))
        self.assertEqual(slot_time(other, 2), 220)

    def test_end_of_series_is_valid(self):
        self.assertEqual(slot_time(self.series, 20), self.series.end_ts)

    def test_out_of_range(self):
        with self.assertRaises(SlotIndexError):
            slot_time(self.series, 21)
        with self.assertRaises(IndexError):
            slot_time(self.series, -1)


class SymbolSeriesTests(SimpleTestCase):

    def test_rejects_foreign_symbols(self):
        with self.assertRaises(SeriesError):
            SymbolSeries('s', 0, 900, (0, 1), SymbolTable([b'A']))

    def test_rejects_non_positive_step(self):
        with self.assertRaises(SeriesError):
            SymbolSeries('s', 0, 0, (), SymbolTable())

    def test_codes_mark_missing(self):
        series = SymbolSeries('s', 0, 900, (0, MISSING, 0), SymbolTable([b'A']))
        self.assertEqual(series.codes.tolist(), [0, -1, 0])
        self.assertFalse(series.codes.flags.writeable)

    def test_equality_is_on_raw_values(self):
        a = SymbolSeries('s', 0, 900, (0, 1), SymbolTable([b'A', b'B']))
        b = SymbolSeries('s', 0, 900, (1, 0), SymbolTable([b'B', b'A']))
        self.assertEqual(a, b)
