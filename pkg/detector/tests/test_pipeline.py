import numpy as np
from django.test import SimpleTestCase, override_settings, tag

from detector.config import DetectorConfig, DetectorConfigError, tolerance_for
from detector.pipeline import candidate_periods, detect, detect_many, detect_series, periodicity_records
from detector.matching import ExactMatch
from series.symbols import SeriesError

from series.tests.helpers import make_series, sentinels


def planted(period, repetitions, left, right, prefix='p'):
    pattern = [f'{prefix}{i}' for i in range(period)]
    values = sentinels(left, 'l') + pattern * repetitions + sentinels(right, 'r')
    return values, (left, left + period * repetitions)


def coverage(found, interval):
    start, end = interval
    return max(0, min(found.end_slot, end) - max(found.start_slot, start)) / (end - start)


class ToleranceTests(SimpleTestCase):

    def test_rule(self):
        self.assertEqual(tolerance_for(3), 1)
        self.assertEqual(tolerance_for(20), 2)
        self.assertEqual(tolerance_for(7), 1)
        self.assertEqual(tolerance_for(5), 1)
        self.assertEqual(tolerance_for(15), 2)
        self.assertEqual(tolerance_for(30), 3)

    def test_invalid_period(self):
        with self.assertRaises(DetectorConfigError):
            tolerance_for(0)


class DetectorConfigTests(SimpleTestCase):

    def test_defaults(self):
        config = DetectorConfig()
        self.assertEqual(config.peak_threshold, 0.25)
        self.assertEqual(config.min_repetitions, 3)
        self.assertAlmostEqual(config.max_lag_fraction, 1 / 3)

    def test_invariants(self):
        with self.assertRaises(DetectorConfigError):
            DetectorConfig(peak_threshold=0)
        with self.assertRaises(DetectorConfigError):
            DetectorConfig(gap_cv_threshold=1.5)
        with self.assertRaises(DetectorConfigError):
            DetectorConfig(min_repetitions=1)

    @override_settings(PERIODICITY={'PEAK_THRESHOLD': 0.4, 'MIN_REPETITIONS': 4})
    def test_from_settings_and_overrides(self):
        config = DetectorConfig.from_settings(min_repetitions=5, cluster_y_tolerance=None)
        self.assertEqual(config.peak_threshold, 0.4)
        self.assertEqual(config.min_repetitions, 5)
        self.assertEqual(config.cluster_y_tolerance, 0.15)

    def test_unknown_override(self):
        with self.assertRaises(DetectorConfigError):
            DetectorConfig.from_settings(theta=0.3)


class DetectTests(SimpleTestCase):

    def test_alternation(self):
        (found,) = detect(make_series(list('AB') * 20, step=3600))
        self.assertEqual(found.period_slots, 2)
        self.assertEqual((found.start_slot, found.end_slot), (0, 40))
        self.assertEqual(found.repetitions, 20)

    def test_all_missing(self):
        self.assertEqual(detect(make_series([None] * 50)), [])

    def test_constant(self):
        self.assertEqual(detect(make_series(['A'] * 50)), [])

    def test_empty_series_is_an_error(self):
        with self.assertRaises(SeriesError):
            detect(make_series([]))

    def test_two_planted_intervals(self):
        values = (
            sentinels(20, 'a') + list('abcde') * 6 + sentinels(20, 'b')
            + list('fgh') * 8 + sentinels(15, 'c')
        )
        found = detect(make_series(values))
        self.assertEqual([p.period_slots for p in found], [5, 3])
        self.assertGreaterEqual(coverage(found[0], (20, 50)), 0.9)
        self.assertGreaterEqual(coverage(found[1], (70, 94)), 0.9)

    def test_plant_and_recover(self):
        for period, repetitions in [(2, 3), (3, 5), (5, 3), (7, 12), (16, 4), (30, 3)]:
            values, interval = planted(period, repetitions, period, 2 * period)
            found = detect(make_series(values))
            self.assertEqual(len(found), 1, msg=f'P={period}')
            self.assertEqual(found[0].period_slots, period)
            self.assertGreaterEqual(coverage(found[0], interval), 0.9)

    def test_sub_period_pattern_reports_fundamental(self):
        values = sentinels(8) + list('ABAB') * 6 + sentinels(8, 'y')
        (found,) = detect(make_series(values))
        self.assertEqual(found.period_slots, 2)

    def test_shift_equivariance(self):
        values, _ = planted(6, 5, 6, 10)
        base = detect(make_series(values))
        shifted = detect(make_series(sentinels(7, 'k') + values))
        self.assertEqual(
            [(p.start_slot + 7, p.end_slot + 7, p.period_slots, p.repetitions) for p in base],
            [(p.start_slot, p.end_slot, p.period_slots, p.repetitions) for p in shifted],
        )

    def test_relabel_invariance(self):
        values, _ = planted(4, 6, 5, 5)
        relabelled = [f'x-{v}' for v in reversed(sorted(set(values)))]
        mapping = dict(zip(sorted(set(values)), relabelled))
        a = detect(make_series(values))
        b = detect(make_series([mapping[v] for v in values]))
        self.assertEqual(
            [(p.start_slot, p.end_slot, p.period_slots, p.repetitions) for p in a],
            [(p.start_slot, p.end_slot, p.period_slots, p.repetitions) for p in b],
        )

    def test_deterministic(self):
        rng = np.random.default_rng(11)
        values = [f's{v}' for v in rng.integers(0, 6, size=300)]
        values[100:160] = list('UVWXYZ') * 10
        series = make_series(values)
        self.assertEqual(detect(series), detect(series))

    def test_candidates_skip_lag_one(self):
        series = make_series(list('AAB') * 30)
        _, candidates = candidate_periods(series, DetectorConfig(), ExactMatch())
        self.assertNotIn(1, candidates)
        self.assertIn(3, candidates)

    def test_lone_peak_is_not_a_candidate(self):
        # two copies of a block leave a single maximum, at lag 5
        values = sentinels(15, 'l') + list('abcde') * 2 + sentinels(15, 'r')
        series = make_series(values)
        config = DetectorConfig(min_repetitions=2)
        peaks, candidates = candidate_periods(series, config, ExactMatch())
        self.assertEqual([p.lag for p in peaks], [5])
        self.assertEqual(candidates, set())
        self.assertEqual(detect(series, config), [])

    def test_interleaved_harmonics_yield_both_periods(self):
        values = (
            sentinels(20, 'a') + list('abcde') * 6 + sentinels(20, 'b')
            + list('fgh') * 8 + sentinels(15, 'c')
        )
        peaks, candidates = candidate_periods(make_series(values), DetectorConfig(), ExactMatch())
        self.assertEqual([p.lag for p in peaks], [3, 5, 10, 12, 15, 18, 20, 25])
        self.assertLessEqual({3, 5, 10}, candidates)
        self.assertFalse(candidates & {15, 18, 20, 25})

    def test_no_harmonics_on_pure_series(self):
        for pattern in ('AB', 'ABC', 'ABCDEFG'):
            found = detect(make_series(list(pattern) * 30))
            periods = [p.period_slots for p in found]
            self.assertEqual(periods, [len(pattern)])

    @tag('acceptance')
    def test_plant_and_recover_randomized(self):
        rng = np.random.default_rng(2025)
        for case in range(500):
            period = int(rng.integers(2, 31))
            # three repetitions next to short margins leave a single maximum within N/3
            repetitions = int(rng.integers(4, 41))
            left = int(rng.integers(period, 2 * period + 1))
            right = int(rng.integers(period, 2 * period + 1))
            values, interval = planted(period, repetitions, left, right)
            found = detect(make_series(values))
            self.assertEqual(len(found), 1, msg=f'case {case}: P={period} R={repetitions}')
            self.assertEqual(found[0].period_slots, period)
            self.assertGreaterEqual(coverage(found[0], interval), 0.9)


class DetectManyTests(SimpleTestCase):

    def test_results_ordered_by_series_id(self):
        series = [
            make_series(list('AB') * 10, series_id='b'),
            make_series(list('ABC') * 10, series_id='a'),
            make_series(['A'] * 10, series_id='c'),
        ]
        results = detect_many(series)
        self.assertEqual([r.series_id for r in results], ['a', 'b', 'c'])
        records = list(periodicity_records(results))
        self.assertEqual([(r['series_id'], r['period_slots']) for r in records], [('a', 3), ('b', 2)])
        self.assertEqual(records[0]['period_seconds'], 3 * 900)

    def test_detect_series_lists_candidates(self):
        result = detect_series(make_series(list('ABC') * 10))
        self.assertIn(3, result.candidates)
        self.assertEqual(len(result.records()), 1)
