"""Slot match operators.

The detector never compares symbols directly; it asks a match operator,
so the traceroute pipeline (exact equality) and the BGP pipeline (states
coinciding on enough collector peers) share every step.
"""

from __future__ import annotations

from abc import ABC, abstractmethod
from typing import Optional

import numpy as np

from series.symbols import MISSING, Symbol, SymbolSeries


class MatchOperator(ABC):
    """Symmetric 0/1 predicate over slot values. MISSING matches nothing."""

    exact = False

    @abstractmethod
    def __call__(self, a: Optional[Symbol], b: Optional[Symbol]) -> int:
        ...

    def matrix(self, series: SymbolSeries) -> np.ndarray:
        """Boolean k x k compatibility of the series alphabet."""
        size = len(series.table)
        out = np.zeros((size, size), dtype=bool)
        for i in range(size):
            for j in range(i, size):
                out[i, j] = out[j, i] = bool(self(i, j))
        return out

    def padded_matrix(self, series: SymbolSeries) -> np.ndarray:
        """Compatibility with one extra all-False row/column standing for MISSING."""
        base = self.matrix(series)
        size = base.shape[0]
        out = np.zeros((size + 1, size + 1), dtype=bool)
        out[:size, :size] = base
        return out


class ExactMatch(MatchOperator):
    """One iff both slots hold the same symbol."""

    exact = True

    def __call__(self, a: Optional[Symbol], b: Optional[Symbol]) -> int:
        return int(a is not MISSING and b is not MISSING and a == b)

    def matrix(self, series: SymbolSeries) -> np.ndarray:
        return np.eye(len(series.table), dtype=bool)

    def __repr__(self) -> str:
        return 'ExactMatch()'


def padded_codes(series: SymbolSeries) -> np.ndarray:
    """Slot codes with MISSING mapped onto the extra index of padded_matrix()."""
    codes = series.codes
    return np.where(codes < 0, len(series.table), codes)


class SlotMatcher:
    """Vectorised evaluation of a match operator over one series."""

    def __init__(self, series: SymbolSeries, match: MatchOperator):
        self.series = series
        self.match = match
        self.codes = series.codes
        if match.exact:
            self._matrix = None
            self._padded = None
        else:
            self._matrix = match.padded_matrix(series)
            self._padded = padded_codes(series)

    def lagged(self, lag: int) -> np.ndarray:
        """Boolean array m[n] = match(x(n), x(n+lag)) for n in [0, N-lag)."""
        if self._matrix is None:
            head = self.codes[:-lag] if lag else self.codes
            tail = self.codes[lag:]
            return (head == tail) & (head >= 0)
        head = self._padded[:-lag] if lag else self._padded
        return self._matrix[head, self._padded[lag:]]

    def against(self, pattern: np.ndarray, windows: np.ndarray) -> np.ndarray:
        """Slotwise match of each row of ``windows`` against ``pattern`` (codes)."""
        if self._matrix is None:
            return (windows == pattern) & (windows >= 0)
        size = len(self.series.table)
        w = np.where(windows < 0, size, windows)
        p = np.where(pattern < 0, size, pattern)
        return self._matrix[p, w]

    def same(self, a: int, b: int) -> bool:
        """Operator verdict for two symbols of the series alphabet."""
        if a < 0 or b < 0:
            return False
        if self._matrix is None:
            return a == b
        return bool(self._matrix[a, b])

    def match_probability(self, symbol: int, frequencies: np.ndarray) -> float:
        """Probability that a slot drawn from ``frequencies`` matches ``symbol``."""
        if symbol < 0:
            return 0.0
        if self._matrix is None:
            return float(frequencies[symbol])
        size = len(self.series.table)
        return float(self._matrix[symbol, :size].astype(float) @ frequencies)
