from django.db import models


class DetectionRun(models.Model):
    class Source(models.TextChoices):
        SERIES = 'series', 'Symbol series'
        TRACEROUTE = 'traceroute', 'Traceroute records'
        BGP = 'bgp', 'BGP updates'

    source = models.CharField(max_length=16, choices=Source.choices, default=Source.SERIES)
    input_path = models.CharField(max_length=512, blank=True)
    config = models.JSONField(default=dict, help_text='Effective detector configuration')
    series_count = models.PositiveIntegerField(default=0)
    periodic_series_count = models.PositiveIntegerField(default=0)
    periodicity_count = models.PositiveIntegerField(default=0)
    created_at = models.DateTimeField(auto_now_add=True)

    class Meta:
        ordering = ['-created_at', '-id']

    def __str__(self):
        return f'Run {self.pk} ({self.source}): {self.periodicity_count} periodicities in {self.series_count} series'


class DetectedPeriodicity(models.Model):
    run = models.ForeignKey(DetectionRun, on_delete=models.CASCADE, related_name='periodicities')
    series_id = models.CharField(max_length=255)
    period_slots = models.PositiveIntegerField()
    period_seconds = models.BigIntegerField()
    start_ts = models.BigIntegerField()
    end_ts = models.BigIntegerField()
    start_slot = models.PositiveIntegerField()
    end_slot = models.PositiveIntegerField()
    repetitions = models.PositiveIntegerField()
    mismatch_count = models.PositiveIntegerField(default=0)
    # raw values, null for a missing slot
    pattern = models.JSONField(default=list)

    class Meta:
        ordering = ['series_id', 'start_slot', 'period_slots']
        indexes = [
            models.Index(fields=['run', 'series_id'], name='detector_run_series_idx'),
        ]

    def __str__(self):
        return f'{self.series_id}: P={self.period_slots} [{self.start_ts}, {self.end_ts})'
