"""Detector configuration."""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass, fields, replace
from typing import Any, Dict, Optional


class DetectorConfigError(ValueError):
    """Raised when a detector configuration violates its invariants."""


# settings.PERIODICITY key -> DetectorConfig field
SETTINGS_KEYS = {
    'MAX_LAG_FRACTION': 'max_lag_fraction',
    'PEAK_THRESHOLD': 'peak_threshold',
    'PEAK_SIGMAS': 'peak_sigmas',
    'CLUSTER_Y_TOLERANCE': 'cluster_y_tolerance',
    'GAP_CV_THRESHOLD': 'gap_cv_threshold',
    'MAX_OUTLIER_FRACTION': 'max_outlier_fraction',
    'MIN_REPETITIONS': 'min_repetitions',
    'TOLERANCE_THRESHOLD': 'tolerance_threshold',
    'TOLERANCE_FRACTION': 'tolerance_fraction',
    'CHANCE_ALPHA': 'chance_alpha',
}


@dataclass(frozen=True)
class DetectorConfig:
    max_lag_fraction: float = 1 / 3
    peak_threshold: float = 0.25
    # lags this many standard errors above the ACF chance baseline are also peaks; None disables
    peak_sigmas: Optional[float] = 3.0
    cluster_y_tolerance: float = 0.15
    gap_cv_threshold: float = 0.10
    max_outlier_fraction: float = 0.20
    min_repetitions: int = 3
    tolerance_threshold: int = 5
    tolerance_fraction: float = 0.10
    # expected number of chance repetitions above which a run is discarded; None disables
    chance_alpha: Optional[float] = 0.01

    def __post_init__(self):
        for name in ('max_lag_fraction', 'peak_threshold', 'cluster_y_tolerance',
                     'gap_cv_threshold', 'max_outlier_fraction', 'tolerance_fraction'):
            value = getattr(self, name)
            if not 0 < value <= 1:
                raise DetectorConfigError(f'{name} must be in (0, 1], got {value}')
        if self.min_repetitions < 2:
            raise DetectorConfigError(f'min_repetitions must be >= 2, got {self.min_repetitions}')
        if self.tolerance_threshold < 1:
            raise DetectorConfigError(f'tolerance_threshold must be >= 1, got {self.tolerance_threshold}')
        if self.peak_sigmas is not None and self.peak_sigmas <= 0:
            raise DetectorConfigError(f'peak_sigmas must be positive, got {self.peak_sigmas}')
        if self.chance_alpha is not None and self.chance_alpha <= 0:
            raise DetectorConfigError(f'chance_alpha must be positive, got {self.chance_alpha}')

    @classmethod
    def from_settings(cls, **overrides: Any) -> 'DetectorConfig':
        """Defaults from settings.PERIODICITY, then non-None overrides."""
        from django.conf import settings

        values: Dict[str, Any] = {}
        configured = getattr(settings, 'PERIODICITY', {})
        for key, name in SETTINGS_KEYS.items():
            if key in configured:
                values[name] = configured[key]
        known = {f.name for f in fields(cls)}
        for name, value in overrides.items():
            if name not in known:
                raise DetectorConfigError(f'Unknown detector option {name!r}')
            if value is not None:
                values[name] = value
        return cls(**values)

    def tolerance(self, period: int) -> int:
        return tolerance_for(period, self.tolerance_threshold, self.tolerance_fraction)

    def with_overrides(self, **overrides: Any) -> 'DetectorConfig':
        return replace(self, **{k: v for k, v in overrides.items() if v is not None})

    def as_dict(self) -> Dict[str, Any]:
        return asdict(self)


def tolerance_for(period: int, threshold: int = 5, fraction: float = 0.10) -> int:
    """Hamming tolerance t_i allowed between consecutive windows of a period.

    One mismatch for periods shorter than ``threshold``, otherwise ``fraction``
    of the period rounded half-up and never below one.
    """
    if period < 1:
        raise DetectorConfigError(f'Period must be >= 1, got {period}')
    if period < threshold:
        return 1
    return max(1, math.floor(fraction * period + 0.5))
