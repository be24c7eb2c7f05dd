from django.test import SimpleTestCase

from traceroute.analysis import analyze_pairs
from traceroute.pairs import group_pairs
from traceroute.parsing import TracerouteRecord

STEP = 900
SLOTS = 180
SOURCES = {'p1': 101, 'p2': 102}
LOOP = [['10.0.0.1', '10.0.1.1'], ['10.0.0.1', '10.0.2.1'], ['10.0.0.1', '*']]


def unique_path(i, src):
    return ['10.0.0.1', f'10.{SOURCES[src]}.{i // 250}.{i % 250 + 1}']


def corpus():
    records = []
    for i in range(SLOTS):
        hops = LOOP[i % 3] if 30 <= i < 150 else unique_path(i, 'p1')
        records.append(TracerouteRecord(i * STEP, 'p1', 'a1', i % 3 + 1, hops))
        records.append(TracerouteRecord(i * STEP, 'p2', 'a1', i % 3 + 1, unique_path(i, 'p2')))
    return records


class AnalyzePairsTests(SimpleTestCase):

    def setUp(self):
        pairs = group_pairs(corpus(), 0, SLOTS * STEP, STEP)
        self.analysis = analyze_pairs(pairs)

    def test_periodic_pairs(self):
        self.assertEqual(self.analysis.pairs_analyzed, 2)
        self.assertEqual(self.analysis.pairs_periodic, 1)
        self.assertEqual(self.analysis.periodic_share, 0.5)

    def test_finding(self):
        [finding] = self.analysis.findings
        self.assertEqual(finding.pair.series_id, 'p1>a1')
        self.assertEqual(finding.periodicity.period_slots, 3)
        self.assertEqual(finding.distinct_paths, 3)
        self.assertTrue(finding.attribution.attributed)
        self.assertTrue(finding.attribution.all_locked)
        self.assertFalse(finding.asterisk_alternation)
        record = finding.record()
        self.assertEqual(record['period_seconds'], 2700)
        self.assertEqual(record['paris_attribution'], 'attributed')
        self.assertEqual(len(record['paris_associations']), 3)

    def test_stats_and_summary(self):
        self.assertEqual(self.analysis.stats['p2>a1'].distinct_path_count, SLOTS)
        self.assertEqual(self.analysis.stats['p1>a1'].distinct_path_count, 63)
        summary = self.analysis.attribution_summary()
        self.assertEqual(summary['attributed_any'], 1)
        self.assertEqual(summary['attributed_any_rate'], 1.0)
        self.assertEqual(summary['attributed_few_paths_share'], 1.0)
