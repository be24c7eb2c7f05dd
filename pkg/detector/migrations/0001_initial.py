import django.db.models.deletion
from django.db import migrations, models


class Migration(migrations.Migration):

    initial = True

    dependencies = []

    operations = [
        migrations.CreateModel(
            name='DetectionRun',
            fields=[
                ('id', models.BigAutoField(auto_created=True, primary_key=True, serialize=False, verbose_name='ID')),
                ('source', models.CharField(choices=[('series', 'Symbol series'), ('traceroute', 'Traceroute records'), ('bgp', 'BGP updates')], default='series', max_length=16)),
                ('input_path', models.CharField(blank=True, max_length=512)),
                ('config', models.JSONField(default=dict, help_text='Effective detector configuration')),
                ('series_count', models.PositiveIntegerField(default=0)),
                ('periodic_series_count', models.PositiveIntegerField(default=0)),
                ('periodicity_count', models.PositiveIntegerField(default=0)),
                ('created_at', models.DateTimeField(auto_now_add=True)),
            ],
            options={
                'ordering': ['-created_at', '-id'],
            },
        ),
        migrations.CreateModel(
            name='DetectedPeriodicity',
            fields=[
                ('id', models.BigAutoField(auto_created=True, primary_key=True, serialize=False, verbose_name='ID')),
                ('series_id', models.CharField(max_length=255)),
                ('period_slots', models.PositiveIntegerField()),
                ('period_seconds', models.BigIntegerField()),
                ('start_ts', models.BigIntegerField()),
                ('end_ts', models.BigIntegerField()),
                ('start_slot', models.PositiveIntegerField()),
                ('end_slot', models.PositiveIntegerField()),
                ('repetitions', models.PositiveIntegerField()),
                ('mismatch_count', models.PositiveIntegerField(default=0)),
                ('pattern', models.JSONField(default=list)),
                ('run', models.ForeignKey(on_delete=django.db.models.deletion.CASCADE, related_name='periodicities', to='detector.detectionrun')),
            ],
            options={
                'ordering': ['series_id', 'start_slot', 'period_slots'],
                'indexes': [models.Index(fields=['run', 'series_id'], name='detector_run_series_idx')],
            },
        ),
    ]
