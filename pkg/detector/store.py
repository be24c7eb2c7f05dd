"""Persistence of detection runs.

A stored run lets the series found periodic in one week be picked again for
the following one without re-running detection on everything.
"""

from __future__ import annotations

import logging
from typing import List, Optional, Sequence

import numpy as np
from django.db import transaction

from .config import DetectorConfig
from .models import DetectedPeriodicity, DetectionRun
from .pipeline import SeriesDetections


logger = logging.getLogger(__name__)


def save_run(
    results: Sequence[SeriesDetections],
    config: DetectorConfig,
    source: str = DetectionRun.Source.SERIES,
    input_path: str = '',
) -> DetectionRun:
    with transaction.atomic():
        run = DetectionRun.objects.create(
            source=source,
            input_path=str(input_path),
            config=config.as_dict(),
            series_count=len(results),
            periodic_series_count=sum(1 for r in results if r.periodicities),
            periodicity_count=sum(len(r.periodicities) for r in results),
        )
        rows = [
            DetectedPeriodicity(run=run, **record)
            for result in results
            for record in result.records()
        ]
        DetectedPeriodicity.objects.bulk_create(rows, batch_size=1000)
    logger.info(f'Stored run {run.pk}: {len(rows)} periodicities from {run.series_count} series')
    return run


def periodic_series_ids(run: DetectionRun) -> List[str]:
    """Ids of the series with at least one periodicity in ``run``, sorted."""
    return list(
        run.periodicities.order_by('series_id').values_list('series_id', flat=True).distinct()
    )


def sample_periodic_series(run: DetectionRun, size: Optional[int] = None, seed: int = 0) -> List[str]:
    """Seeded sample without replacement of the periodic series of ``run``."""
    ids = periodic_series_ids(run)
    if size is None or size >= len(ids):
        return ids
    rng = np.random.default_rng(seed)
    picked = rng.choice(len(ids), size=size, replace=False)
    return sorted(ids[i] for i in picked)
