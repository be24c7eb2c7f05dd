import json

from django.core.management.base import CommandError
from django.test import SimpleTestCase

from cli.forms import DetectForm, EvaluateForm, parse_percent_list
from cli.options import RUNTIME_ERROR, USAGE_ERROR, merge_options, read_config_file

from .helpers import WorkdirMixin


class ConfigFileTests(WorkdirMixin, SimpleTestCase):

    def test_dashes_become_underscores(self):
        path = self.write_json('config.json', {'series-count': 3, 'seed': 4})
        self.assertEqual(read_config_file(path), {'series_count': 3, 'seed': 4})

    def test_missing_file_is_a_usage_error(self):
        with self.assertRaises(CommandError) as ctx:
            read_config_file(self.path('absent.json'))
        self.assertEqual(ctx.exception.returncode, USAGE_ERROR)

    def test_not_an_object(self):
        path = self.write_json('config.json', [1, 2])
        with self.assertRaises(CommandError) as ctx:
            read_config_file(path)
        self.assertEqual(ctx.exception.returncode, USAGE_ERROR)

    def test_flags_win(self):
        merged = merge_options({'seed': 4, 'slots': 100}, {'seed': 9, 'slots': None})
        self.assertEqual(merged, {'seed': 9, 'slots': 100})

    def test_config_file_feeds_the_command(self):
        config = self.write_json('config.json', {'series-count': 3, 'slots': 120, 'period-max': 10, 'seed': 4})
        self.call('generate', config=config, output=self.path('corpus'), series_count=2)
        self.assertEqual(len(self.read_lines('corpus/series.jsonl')), 2)
        self.assertEqual(len(self.read_lines('corpus/series.jsonl')[0]['slots']), 120)

    def test_unknown_config_key(self):
        config = self.write_json('config.json', {'colour': 'blue'})
        with self.assertRaises(CommandError) as ctx:
            self.call('generate', config=config, output=self.path('corpus'))
        self.assertEqual(ctx.exception.returncode, USAGE_ERROR)


class UsageErrorTests(WorkdirMixin, SimpleTestCase):

    def assertExitCode(self, code, command, **options):
        with self.assertRaises(CommandError) as ctx:
            self.call(command, **options)
        self.assertEqual(ctx.exception.returncode, code)

    def test_invalid_period_range(self):
        self.assertExitCode(USAGE_ERROR, 'generate', output=self.path('out'), period_min=9, period_max=3)

    def test_paris_needs_traceroutes(self):
        self.assertExitCode(USAGE_ERROR, 'detect', input=self.path('in'), output=self.path('out'), paris=True)

    def test_theta_out_of_range(self):
        self.assertExitCode(USAGE_ERROR, 'detect', input=self.path('in'), output=self.path('out'), theta=1.5)

    def test_missing_input_is_a_runtime_error(self):
        self.assertExitCode(RUNTIME_ERROR, 'detect', input=self.path('absent.jsonl'), output=self.path('out'))

    def test_evaluate_needs_one_input_kind(self):
        self.assertExitCode(USAGE_ERROR, 'evaluate', output=self.path('report'))
        self.assertExitCode(USAGE_ERROR, 'evaluate', output=self.path('report'), truth=self.path('truth.jsonl'))

    def test_atlas_measurement_needs_a_window(self):
        self.assertExitCode(USAGE_ERROR, 'ingest_traceroute', atlas_measurement=42, output=self.path('out'))
        self.assertExitCode(USAGE_ERROR, 'ingest_traceroute', output=self.path('out'))

    def test_beacon_needs_four_hours(self):
        self.assertExitCode(USAGE_ERROR, 'beacon', output=self.path('updates.jsonl'), hours=3)


class FormTests(SimpleTestCase):

    def test_percent_list(self):
        self.assertEqual(parse_percent_list('0, 2,5'), [0.0, 0.02, 0.05])

    def test_detect_defaults_by_source(self):
        form = DetectForm(data={'input': 'a', 'output': 'b', 'source': 'traceroute'})
        self.assertTrue(form.is_valid(), form.errors)
        self.assertEqual(form.cleaned_data['step'], 900)
        self.assertEqual(form.cleaned_data['format'], 'records')
        self.assertEqual(form.cleaned_data['detector_config'].min_repetitions, 3)

    def test_detect_overrides_reach_the_config(self):
        form = DetectForm(data={'input': 'a', 'output': 'b', 'theta': 0.4, 'min_reps': 5})
        self.assertTrue(form.is_valid(), form.errors)
        config = form.cleaned_data['detector_config']
        self.assertEqual(config.peak_threshold, 0.4)
        self.assertEqual(config.min_repetitions, 5)

    def test_bgp_flags_need_bgp_input(self):
        form = DetectForm(data={'input': 'a', 'output': 'b', 'prefix': '10.0.0.0/8'})
        self.assertFalse(form.is_valid())

    def test_noise_list_from_config(self):
        form = EvaluateForm(data={'input': 'corpus', 'output': 'report', 'noise': [0, 5]})
        self.assertTrue(form.is_valid(), form.errors)
        self.assertEqual(form.cleaned_data['noise'], [0.0, 0.05])
        self.assertEqual(form.cleaned_data['overlap'], 0.5)
