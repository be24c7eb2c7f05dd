"""Seeded synthetic series with planted periodicities.

Every series alternates periodic blocks (a random pattern repeated a random
number of times) with blocks of uniform random symbols of the same length
distribution, shuffles the block order and is cut to the configured length.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import List, Tuple

import numpy as np

from series.periodicity import fundamental_block
from series.symbols import SymbolSeries, SymbolTable

from .truth import GroundTruth, PlantedPeriodicity, SeriesTruth


logger = logging.getLogger(__name__)


class GeneratorConfigError(ValueError):
    """Raised when a generator configuration violates its invariants."""


@dataclass(frozen=True)
class GeneratorConfig:
    series_count: int = 5000
    slots_per_series: int = 10000
    alphabet_size: int = 30
    period_min: int = 2
    period_max: int = 30
    repetitions_min: int = 3
    repetitions_max: int = 40
    seed: int = 1
    step: int = 900
    start_ts: int = 0

    def __post_init__(self):
        if self.series_count < 1:
            raise GeneratorConfigError(f'series_count must be positive, got {self.series_count}')
        if self.alphabet_size < 2:
            raise GeneratorConfigError(f'alphabet_size must be >= 2, got {self.alphabet_size}')
        if not 2 <= self.period_min <= self.period_max:
            raise GeneratorConfigError(f'Invalid period range [{self.period_min}, {self.period_max}]')
        if not 2 <= self.repetitions_min <= self.repetitions_max:
            raise GeneratorConfigError(
                f'Invalid repetition range [{self.repetitions_min}, {self.repetitions_max}]'
            )
        if self.slots_per_series < 2 * self.period_max:
            raise GeneratorConfigError(
                f'slots_per_series ({self.slots_per_series}) must be at least twice the longest period'
            )
        if self.step <= 0:
            raise GeneratorConfigError(f'step must be positive, got {self.step}')
        if self.seed < 0:
            raise GeneratorConfigError(f'seed must be non-negative, got {self.seed}')


def child_seed(seed: int, index: int) -> np.random.SeedSequence:
    """Seed of work item ``index``; identical whatever the worker that runs it."""
    return np.random.SeedSequence(seed, spawn_key=(index,))


def child_rng(seed: int, index: int) -> np.random.Generator:
    return np.random.default_rng(child_seed(seed, index))


def alphabet_table(size: int) -> SymbolTable:
    width = len(str(size - 1))
    return SymbolTable(f'p{i:0{width}d}'.encode() for i in range(size))


def _blocks(config: GeneratorConfig, rng: np.random.Generator) -> List[Tuple[np.ndarray, int]]:
    """(slots, period) blocks until the series is full; period 0 marks a random block."""
    blocks = []
    total = 0
    while total < config.slots_per_series:
        period = int(rng.integers(config.period_min, config.period_max + 1))
        repetitions = int(rng.integers(config.repetitions_min, config.repetitions_max + 1))
        pattern = rng.integers(0, config.alphabet_size, size=period)
        blocks.append((np.tile(pattern, repetitions), period))
        total += period * repetitions

        # random block, length drawn from the periodic length distribution
        length = (int(rng.integers(config.period_min, config.period_max + 1))
                  * int(rng.integers(config.repetitions_min, config.repetitions_max + 1)))
        blocks.append((rng.integers(0, config.alphabet_size, size=length), 0))
        total += length
    return blocks


def generate_one(config: GeneratorConfig, index: int, table: SymbolTable = None) -> Tuple[SymbolSeries, SeriesTruth]:
    rng = child_rng(config.seed, index)
    table = table if table is not None else alphabet_table(config.alphabet_size)
    blocks = _blocks(config, rng)
    order = rng.permutation(len(blocks))

    slots = np.concatenate([blocks[k][0] for k in order])[:config.slots_per_series]
    planted = []
    start = 0
    for k in order:
        values, period = blocks[k]
        if period and start < config.slots_per_series:
            repetitions = min(len(values), config.slots_per_series - start) // period
            if repetitions >= config.repetitions_min:
                pattern = tuple(int(v) for v in values[:period])
                planted.append(PlantedPeriodicity(
                    period_slots=period,
                    pattern=pattern,
                    start_slot=start,
                    end_slot=start + repetitions * period,
                    repetitions=repetitions,
                    sub_period=fundamental_block(pattern) < period,
                ))
        start += len(values)

    series_id = f'synthetic-{index:05d}'
    series = SymbolSeries(
        series_id=series_id,
        start_ts=config.start_ts,
        step=config.step,
        slots=tuple(int(v) for v in slots),
        table=table,
    )
    return series, SeriesTruth(series_id=series_id, table=table, planted=planted)


def generate(config: GeneratorConfig) -> Tuple[List[SymbolSeries], GroundTruth]:
    """All series of ``config`` with their ground truth; fully determined by the seed."""
    table = alphabet_table(config.alphabet_size)
    series: List[SymbolSeries] = []
    truth = GroundTruth()
    for index in range(config.series_count):
        item, entry = generate_one(config, index, table)
        series.append(item)
        truth.add(entry)
    logger.info(
        f'Generated {len(series)} series of {config.slots_per_series} slots '
        f'with {truth.total()} planted periodicities (seed {config.seed})'
    )
    return series, truth
