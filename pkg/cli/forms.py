"""Validation of command options.

Every command validates its merged options (settings < config file < flags)
through one of these forms before doing any work.
"""

from django import forms
from django.conf import settings

from bgp.updates import normalize_prefix
from detector.config import DetectorConfig, DetectorConfigError
from validation.generator import GeneratorConfig, GeneratorConfigError


def periodicity_setting(key, default=None):
    return getattr(settings, 'PERIODICITY', {}).get(key, default)


def parse_percent_list(text):
    """'0,2,5' -> [0.0, 0.02, 0.05]."""
    values = []
    for item in str(text).split(','):
        item = item.strip()
        if not item:
            continue
        try:
            value = float(item)
        except ValueError:
            raise forms.ValidationError(f'"{item}" is not a number')
        if not 0 <= value < 100:
            raise forms.ValidationError(f'Noise percentage {value} outside [0, 100)')
        values.append(value / 100)
    return values


class DetectorOptionsForm(forms.Form):
    theta = forms.FloatField(required=False, min_value=0, max_value=1)
    eps_y = forms.FloatField(required=False, min_value=0, max_value=1)
    gap_cv = forms.FloatField(required=False, min_value=0, max_value=1)
    min_reps = forms.IntegerField(required=False, min_value=2)
    workers = forms.IntegerField(required=False, min_value=1)

    def clean(self):
        cleaned = super().clean()
        try:
            cleaned['detector_config'] = DetectorConfig.from_settings(
                peak_threshold=cleaned.get('theta'),
                cluster_y_tolerance=cleaned.get('eps_y'),
                gap_cv_threshold=cleaned.get('gap_cv'),
                min_repetitions=cleaned.get('min_reps'),
            )
        except DetectorConfigError as exc:
            raise forms.ValidationError(str(exc))
        if cleaned.get('workers') is None:
            cleaned['workers'] = periodicity_setting('WORKERS', 1)
        return cleaned


class GenerateForm(forms.Form):
    output = forms.CharField()
    series_count = forms.IntegerField(required=False, min_value=1)
    slots = forms.IntegerField(required=False, min_value=4)
    alphabet = forms.IntegerField(required=False, min_value=2)
    period_min = forms.IntegerField(required=False)
    period_max = forms.IntegerField(required=False)
    reps_min = forms.IntegerField(required=False)
    reps_max = forms.IntegerField(required=False)
    seed = forms.IntegerField(required=False, min_value=0)
    step = forms.IntegerField(required=False, min_value=1)

    FIELDS = {
        'series_count': 'series_count',
        'slots': 'slots_per_series',
        'alphabet': 'alphabet_size',
        'period_min': 'period_min',
        'period_max': 'period_max',
        'reps_min': 'repetitions_min',
        'reps_max': 'repetitions_max',
        'seed': 'seed',
        'step': 'step',
    }

    def clean(self):
        cleaned = super().clean()
        values = {
            target: cleaned[name] for name, target in self.FIELDS.items()
            if cleaned.get(name) is not None
        }
        try:
            cleaned['generator_config'] = GeneratorConfig(**values)
        except GeneratorConfigError as exc:
            raise forms.ValidationError(str(exc))
        return cleaned


class DetectForm(DetectorOptionsForm):
    SOURCES = [('series', 'series'), ('traceroute', 'traceroute'), ('atlas', 'atlas'), ('bgp', 'bgp')]
    FORMATS = [('records', 'records'), ('tables', 'tables')]

    input = forms.CharField()
    output = forms.CharField()
    source = forms.ChoiceField(choices=SOURCES, required=False)
    format = forms.ChoiceField(choices=FORMATS, required=False)
    step = forms.IntegerField(required=False, min_value=1)
    start = forms.IntegerField(required=False)
    end = forms.IntegerField(required=False)
    state_threshold = forms.FloatField(required=False, min_value=0.01, max_value=1)
    paris = forms.BooleanField(required=False)
    prefix = forms.CharField(required=False)
    window_hours = forms.FloatField(required=False, min_value=0.01)
    store = forms.BooleanField(required=False)

    def clean_prefix(self):
        prefix = self.cleaned_data.get('prefix')
        if not prefix:
            return None
        try:
            return normalize_prefix(prefix)
        except ValueError as exc:
            raise forms.ValidationError(str(exc))

    def clean(self):
        cleaned = super().clean()
        cleaned['source'] = cleaned.get('source') or 'series'
        cleaned['format'] = cleaned.get('format') or 'records'
        source = cleaned['source']
        if cleaned.get('paris') and source not in ('traceroute', 'atlas'):
            raise forms.ValidationError('--paris needs traceroute input')
        if source != 'bgp' and (cleaned.get('prefix') or cleaned.get('state_threshold') or cleaned.get('window_hours')):
            raise forms.ValidationError('--prefix, --state-threshold and --window-hours need BGP input')
        start, end = cleaned.get('start'), cleaned.get('end')
        if start is not None and end is not None and end <= start:
            raise forms.ValidationError('--end must be after --start')
        if cleaned.get('state_threshold') is None:
            cleaned['state_threshold'] = periodicity_setting('STATE_THRESHOLD', 0.95)
        if cleaned.get('step') is None:
            if source == 'bgp':
                cleaned['step'] = periodicity_setting('BGP_STEP', 1)
            elif source in ('traceroute', 'atlas'):
                cleaned['step'] = periodicity_setting('TRACEROUTE_STEP', 900)
        return cleaned


class EvaluateForm(DetectorOptionsForm):
    input = forms.CharField(required=False, help_text='Directory written by generate')
    truth = forms.CharField(required=False)
    detections = forms.CharField(required=False)
    output = forms.CharField()
    noise = forms.CharField(required=False)
    seed = forms.IntegerField(required=False, min_value=0)
    overlap = forms.FloatField(required=False, min_value=0.01, max_value=1)

    def clean_noise(self):
        noise = self.data.get('noise')
        if isinstance(noise, (list, tuple)):
            noise = ','.join(str(v) for v in noise)
        return parse_percent_list(noise) if noise else None

    def clean(self):
        cleaned = super().clean()
        corpus = bool(cleaned.get('input'))
        files = bool(cleaned.get('truth')) or bool(cleaned.get('detections'))
        if corpus == files:
            raise forms.ValidationError('Give either --input or both --truth and --detections')
        if files and not (cleaned.get('truth') and cleaned.get('detections')):
            raise forms.ValidationError('--truth and --detections go together')
        if files and cleaned.get('noise'):
            raise forms.ValidationError('--noise needs the series, use --input')
        if not cleaned.get('noise'):
            cleaned['noise'] = [0.0]
        if cleaned.get('overlap') is None:
            cleaned['overlap'] = periodicity_setting('OVERLAP_THRESHOLD', 0.5)
        return cleaned


class IngestTracerouteForm(forms.Form):
    FORMATS = [('jsonl', 'jsonl'), ('atlas', 'atlas')]

    input = forms.CharField(required=False)
    atlas_measurement = forms.IntegerField(required=False, min_value=1)
    output = forms.CharField()
    format = forms.ChoiceField(choices=FORMATS, required=False)
    step = forms.IntegerField(required=False, min_value=1)
    start = forms.IntegerField(required=False)
    end = forms.IntegerField(required=False)
    stats = forms.CharField(required=False)

    def clean(self):
        cleaned = super().clean()
        cleaned['format'] = cleaned.get('format') or 'jsonl'
        if cleaned.get('step') is None:
            cleaned['step'] = periodicity_setting('TRACEROUTE_STEP', 900)
        start, end = cleaned.get('start'), cleaned.get('end')
        if cleaned.get('atlas_measurement'):
            if cleaned.get('input'):
                raise forms.ValidationError('Give either --input or --atlas-measurement')
            if start is None or end is None:
                raise forms.ValidationError('--atlas-measurement needs --start and --end')
        elif not cleaned.get('input'):
            raise forms.ValidationError('--input or --atlas-measurement is required')
        if start is not None and end is not None and end <= start:
            raise forms.ValidationError('--end must be after --start')
        return cleaned


class IngestBgpForm(forms.Form):
    input = forms.CharField()
    output = forms.CharField()
    prefix = forms.CharField(required=False)
    step = forms.IntegerField(required=False, min_value=1)
    start = forms.IntegerField(required=False)
    end = forms.IntegerField(required=False)
    window_hours = forms.FloatField(required=False, min_value=0.01)

    clean_prefix = DetectForm.clean_prefix

    def clean(self):
        cleaned = super().clean()
        if cleaned.get('step') is None:
            cleaned['step'] = periodicity_setting('BGP_STEP', 1)
        start, end = cleaned.get('start'), cleaned.get('end')
        if start is not None and end is not None and end <= start:
            raise forms.ValidationError('--end must be after --start')
        return cleaned


class BeaconForm(forms.Form):
    output = forms.CharField()
    start = forms.IntegerField(required=False)
    hours = forms.FloatField(required=False, min_value=4)
    peers = forms.IntegerField(required=False, min_value=0)
    flap_pct = forms.FloatField(required=False, min_value=0, max_value=99)
    seed = forms.IntegerField(required=False, min_value=0)
    prefix = forms.CharField(required=False)

    clean_prefix = DetectForm.clean_prefix


class PeriodicPairsForm(forms.Form):
    run = forms.IntegerField(required=False, min_value=1)
    sample = forms.IntegerField(required=False, min_value=1)
    seed = forms.IntegerField(required=False, min_value=0)
