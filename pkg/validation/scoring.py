"""Matching detections against planted periodicities and the evaluation report."""

from __future__ import annotations

import logging
from collections import Counter
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional, Sequence, Tuple

from detector.config import DetectorConfig, tolerance_for
from detector.pipeline import detect_many
from series.periodicity import Periodicity, fundamental_block, hamming, rotate
from series.symbols import SymbolSeries

from .generator import GeneratorConfig, child_seed, generate
from .noise import inject_noise
from .truth import GroundTruth, NoiseCounts, PlantedPeriodicity, SeriesTruth


logger = logging.getLogger(__name__)


@dataclass
class Matching:
    pairs: List[Tuple[int, int]] = field(default_factory=list)
    false_negatives: List[int] = field(default_factory=list)
    false_positives: List[int] = field(default_factory=list)


def overlap_ratio(a, b) -> float:
    shorter = min(a.end_slot - a.start_slot, b.end_slot - b.start_slot)
    if shorter <= 0:
        return 0.0
    return a.overlap(b) / shorter


def match_detections(
    detected: Sequence[Periodicity],
    planted: Sequence[PlantedPeriodicity],
    overlap_threshold: float = 0.5,
) -> Matching:
    """One-to-one greedy matching, largest overlap first, equal periods only.

    ``pairs`` holds (detected index, planted index).
    """
    options = []
    for d, found in enumerate(detected):
        for g, truth in enumerate(planted):
            if found.period_slots != truth.period_slots:
                continue
            if overlap_ratio(found, truth) >= overlap_threshold:
                options.append((-found.overlap(truth), d, g))
    options.sort()

    used_d, used_g = set(), set()
    matching = Matching()
    for _, d, g in options:
        if d in used_d or g in used_g:
            continue
        used_d.add(d)
        used_g.add(g)
        matching.pairs.append((d, g))
    matching.pairs.sort()
    matching.false_negatives = [g for g in range(len(planted)) if g not in used_g]
    matching.false_positives = [d for d in range(len(detected)) if d not in used_d]
    return matching


def characterization_correct(found, truth, tolerance: Optional[int] = None) -> bool:
    """Whether the detected pattern is a rotation of the planted one, within tolerance."""
    if len(found.pattern) != len(truth.pattern):
        return False
    if tolerance is None:
        tolerance = tolerance_for(truth.period_slots)
    return any(
        hamming(found.pattern, rotate(truth.pattern, shift)) <= tolerance
        for shift in range(len(truth.pattern))
    )


@dataclass
class LevelScore:
    """Scores of one noise level."""
    noise: float = 0.0
    planted: int = 0
    found: int = 0
    detected: int = 0
    false_positives: int = 0
    characterized: int = 0
    fn_by_period: Counter = field(default_factory=Counter)
    fn_by_repetitions: Counter = field(default_factory=Counter)
    planted_by_repetitions: Counter = field(default_factory=Counter)
    sub_period_planted: int = 0
    sub_period_detected: int = 0
    noise_counts: NoiseCounts = field(default_factory=NoiseCounts)

    @property
    def false_negatives(self) -> int:
        return self.planted - self.found

    @property
    def found_rate(self) -> float:
        return self.found / self.planted if self.planted else 0.0

    @property
    def false_negative_rate(self) -> float:
        return 1.0 - self.found_rate

    @property
    def false_positive_rate(self) -> float:
        return self.false_positives / self.planted if self.planted else 0.0

    @property
    def characterization_accuracy(self) -> float:
        return self.characterized / self.found if self.found else 0.0

    def fn_rate_by_repetitions(self) -> Dict[int, float]:
        return {
            reps: self.fn_by_repetitions.get(reps, 0) / total
            for reps, total in sorted(self.planted_by_repetitions.items())
        }

    def score_series(
        self,
        detected: Sequence[Periodicity],
        planted: Sequence[PlantedPeriodicity],
        overlap_threshold: float = 0.5,
    ) -> Matching:
        matching = match_detections(detected, planted, overlap_threshold)
        self.planted += len(planted)
        self.detected += len(detected)
        self.found += len(matching.pairs)
        self.false_positives += len(matching.false_positives)
        for d, g in matching.pairs:
            if characterization_correct(detected[d], planted[g]):
                self.characterized += 1
        for g in matching.false_negatives:
            self.fn_by_period[planted[g].period_slots] += 1
            self.fn_by_repetitions[planted[g].repetitions] += 1
        for truth in planted:
            self.planted_by_repetitions[truth.repetitions] += 1
            if not truth.sub_period:
                continue
            self.sub_period_planted += 1
            block = fundamental_block(truth.pattern)
            if any(d.period_slots == block and overlap_ratio(d, truth) >= overlap_threshold for d in detected):
                self.sub_period_detected += 1
        return matching

    def as_dict(self) -> Dict[str, Any]:
        return {
            'noise_pct': self.noise * 100,
            'planted': self.planted,
            'detected': self.detected,
            'found': self.found,
            'found_rate': self.found_rate,
            'false_negative_rate': self.false_negative_rate,
            'false_positive_count': self.false_positives,
            'false_positive_rate': self.false_positive_rate,
            'characterization_accuracy': self.characterization_accuracy,
            'fn_by_period_length': {str(k): v for k, v in sorted(self.fn_by_period.items())},
            'fn_by_repetitions': {str(k): v for k, v in sorted(self.fn_by_repetitions.items())},
            'sub_period_planted': self.sub_period_planted,
            'sub_period_detected_at_sub_period': self.sub_period_detected,
            'noise_events': {
                'inserted': self.noise_counts.inserted,
                'deleted': self.noise_counts.deleted,
                'substituted': self.noise_counts.substituted,
            },
        }


@dataclass
class EvalReport:
    """One LevelScore per noise level; the headline figures are those of the first level."""
    levels: List[LevelScore] = field(default_factory=list)
    periodicities_per_series: Dict[int, int] = field(default_factory=dict)

    @property
    def baseline(self) -> LevelScore:
        return self.levels[0] if self.levels else LevelScore()

    @property
    def found_rate(self) -> float:
        return self.baseline.found_rate

    @property
    def false_negative_rate(self) -> float:
        return self.baseline.false_negative_rate

    @property
    def false_positive_count(self) -> int:
        return self.baseline.false_positives

    @property
    def false_positive_rate(self) -> float:
        return self.baseline.false_positive_rate

    @property
    def characterization_accuracy(self) -> float:
        return self.baseline.characterization_accuracy

    def as_dict(self) -> Dict[str, Any]:
        data = self.baseline.as_dict()
        data['periodicities_per_series'] = {str(k): v for k, v in self.periodicities_per_series.items()}
        data['noise_sweep'] = [level.as_dict() for level in self.levels]
        return data


def score_level(
    detections: Dict[str, Sequence[Periodicity]],
    truth: GroundTruth,
    noise: float = 0.0,
    overlap_threshold: float = 0.5,
) -> LevelScore:
    """Score detections keyed by series id against ``truth``."""
    level = LevelScore(noise=noise)
    for entry in truth:
        level.score_series(detections.get(entry.series_id, ()), entry.planted, overlap_threshold)
        level.noise_counts.add(entry.noise)
    return level


def noisy_copy(
    series: Sequence[SymbolSeries],
    truth: GroundTruth,
    pct: float,
    seed: int,
) -> Tuple[List[SymbolSeries], GroundTruth]:
    """Noise applied to every series with a per-series child seed."""
    if pct == 0:
        return list(series), truth

    noisy_series, noisy_truth = [], GroundTruth()
    for index, item in enumerate(series):
        entry = truth.get(item.series_id)
        planted = entry.planted if entry else []
        counts = NoiseCounts()
        if planted:
            item, planted = inject_noise(item, planted, pct, child_seed(seed, index), counts)
        noisy_series.append(item)
        noisy_truth.add(SeriesTruth(item.series_id, item.table, list(planted), counts))
    return noisy_series, noisy_truth


def evaluate_series(
    series: Sequence[SymbolSeries],
    truth: GroundTruth,
    noise_levels: Sequence[float] = (0.0,),
    detector_config: DetectorConfig = None,
    noise_seed: int = 0,
    overlap_threshold: float = 0.5,
    workers: int = 1,
) -> EvalReport:
    report = EvalReport(periodicities_per_series=truth.periodicities_per_series())
    for pct in noise_levels:
        noisy_series, noisy_truth = noisy_copy(series, truth, pct, noise_seed)
        results = detect_many(noisy_series, detector_config, workers=workers)
        detections = {r.series_id: r.periodicities for r in results}
        level = score_level(detections, noisy_truth, pct, overlap_threshold)
        logger.info(
            f'Noise {pct * 100:g}%: found {level.found_rate:.4f}, FP {level.false_positives} '
            f'({level.false_positive_rate:.4f}), characterization {level.characterization_accuracy:.4f}'
        )
        report.levels.append(level)
    return report


def evaluate(
    config: GeneratorConfig,
    noise_levels: Sequence[float] = (0.0,),
    detector_config: DetectorConfig = None,
    noise_seed: Optional[int] = None,
    overlap_threshold: float = 0.5,
    workers: int = 1,
) -> EvalReport:
    """Generate, optionally add noise, detect and score, one row per noise level."""
    series, truth = generate(config)
    return evaluate_series(
        series, truth, noise_levels, detector_config,
        noise_seed=config.seed if noise_seed is None else noise_seed,
        overlap_threshold=overlap_threshold,
        workers=workers,
    )
