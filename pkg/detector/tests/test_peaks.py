import numpy as np
from django.test import SimpleTestCase

from detector.autocorrelation import AcfProfile, autocorrelate
from detector.peaks import (
    Peak, PeakCluster, cluster_peaks, detect_peaks, gap_cv, harmonic_ladders, local_maxima, peak_floor,
    regularize_cluster,
)

from series.tests.helpers import make_series


def profile(normalized, series_len=1000):
    """Profile whose normalised values are (close to) the given ones."""
    lags = np.arange(1, len(normalized) + 1)
    counts = np.rint(np.asarray(normalized) * (series_len - lags)).astype(int)
    return AcfProfile(raw_counts=counts, series_len=series_len)


class DetectPeaksTests(SimpleTestCase):

    def test_alternation_has_peaks_at_even_lags_only(self):
        acf = autocorrelate(make_series(list('AB') * 50), max_lag=33)
        peaks = detect_peaks(acf, 0.25)
        self.assertTrue(peaks)
        self.assertTrue(all(p.lag % 2 == 0 for p in peaks))
        self.assertTrue(all(acf.raw_count(lag) == 0 for lag in range(1, 34, 2)))

    def test_plateau_has_no_strict_maximum(self):
        acf = autocorrelate(make_series(['A'] * 30), max_lag=10)
        self.assertEqual(detect_peaks(acf, 0.25), [])
        self.assertEqual(detect_peaks(acf, 0.25, sigmas=3.0), [])

    def test_threshold_filters_low_maxima(self):
        acf = profile([0.1, 0.2, 0.1, 0.15, 0.05])
        self.assertEqual(detect_peaks(acf, 0.25), [])

    def test_boundaries_compare_one_sided(self):
        acf = profile([0.9, 0.1, 0.1, 0.8])
        self.assertEqual([p.lag for p in detect_peaks(acf, 0.25)], [1, 4])

    def test_significant_low_peaks_are_kept_with_sigmas(self):
        values = [0.03] * 60
        values[19] = 0.07
        values[39] = 0.07
        acf = profile(values, series_len=10000)
        self.assertEqual(detect_peaks(acf, 0.25), [])
        self.assertEqual([p.lag for p in detect_peaks(acf, 0.25, sigmas=3.0)], [20, 40])

    def test_peak_floor(self):
        values = [0.03] * 60
        values[19] = 0.07
        acf = profile(values, series_len=10000)
        baseline, stderr = peak_floor(acf)
        self.assertAlmostEqual(baseline, 0.03, places=3)
        self.assertEqual(len(stderr), 60)
        self.assertAlmostEqual(stderr[0], np.sqrt(baseline * (1 - baseline) / 9999))

    def test_local_maxima(self):
        self.assertEqual(local_maxima(np.array([1.0, 2.0, 2.0, 1.0])).tolist(), [False, False, False, False])
        self.assertEqual(local_maxima(np.array([])).tolist(), [])


class ClusterPeaksTests(SimpleTestCase):

    def test_two_height_groups(self):
        peaks = [Peak(10, 0.9), Peak(20, 0.88), Peak(25, 0.4), Peak(30, 0.91)]
        clusters = cluster_peaks(peaks, 0.15)
        self.assertEqual(len(clusters), 2)
        self.assertEqual(clusters[0].lags, [10, 20, 30])
        self.assertEqual(clusters[1].lags, [25])

    def test_linkage_is_transitive(self):
        peaks = [Peak(2, 0.3), Peak(4, 0.4), Peak(6, 0.5)]
        self.assertEqual(len(cluster_peaks(peaks, 0.15)), 1)

    def test_height_gap_equal_to_tolerance_links(self):
        self.assertEqual(len(cluster_peaks([Peak(5, 0.4), Peak(10, 0.25)], 0.15)), 1)

    def test_single_and_empty(self):
        self.assertEqual(len(cluster_peaks([Peak(3, 0.5)], 0.15)), 1)
        self.assertEqual(cluster_peaks([], 0.15), [])


class RegularizeClusterTests(SimpleTestCase):

    def cluster(self, *lags):
        return PeakCluster(peaks=tuple(Peak(lag, 0.5) for lag in lags))

    def test_evenly_spaced(self):
        result = regularize_cluster(self.cluster(16, 32, 48, 64), 0.10, 0.20)
        self.assertEqual(result.candidate_period, 16)
        self.assertEqual(result.discarded_outliers, 0)

    def test_tolerable_jitter(self):
        self.assertAlmostEqual(gap_cv([10, 20, 31, 40]), 0.0816, places=3)
        self.assertEqual(regularize_cluster(self.cluster(10, 20, 31, 40), 0.10, 0.20).candidate_period, 10)

    def test_irregular_rejected(self):
        result = regularize_cluster(self.cluster(5, 9, 30), 0.10, 0.20)
        self.assertIsNone(result.candidate_period)
        self.assertEqual(result.lags, [5, 9, 30])

    def test_outlier_removed(self):
        result = regularize_cluster(self.cluster(7, 14, 21, 25, 28, 35), 0.10, 0.20)
        self.assertEqual(result.candidate_period, 7)
        self.assertEqual(result.discarded_outliers, 1)
        self.assertNotIn(25, result.lags)

    def test_singleton_rejected(self):
        self.assertIsNone(regularize_cluster(self.cluster(12), 0.10, 0.20).candidate_period)


class HarmonicLaddersTests(SimpleTestCase):

    def cluster(self, *lags):
        return PeakCluster(peaks=tuple(Peak(lag, 0.5) for lag in lags))

    def test_interleaved_periods(self):
        ladders = harmonic_ladders(self.cluster(3, 5, 10, 12, 15, 18, 20, 25), 0.10)
        self.assertIn([5, 10, 15, 20, 25], [l.lags for l in ladders])
        self.assertIn([12, 15, 18], [l.lags for l in ladders])
        candidates = {regularize_cluster(l, 0.10, 0.20).candidate_period for l in ladders}
        self.assertLessEqual({3, 5}, candidates)

    def test_rung_within_slack(self):
        ladders = harmonic_ladders(self.cluster(20, 41, 60), 0.10)
        self.assertEqual(ladders[0].lags, [20, 41, 60])
        self.assertEqual(regularize_cluster(ladders[0], 0.10, 0.20).candidate_period, 20)

    def test_lone_peak_has_no_ladder(self):
        self.assertEqual(harmonic_ladders(self.cluster(12), 0.10), [])
        self.assertEqual(harmonic_ladders(self.cluster(7, 9), 0.10), [])
