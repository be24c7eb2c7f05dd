"""AS swaps inside periodic BGP patterns.

Two adjacent ASes that appear in one order in some state of a pattern and in
the opposite order in another, at the same peer, are the signature of a
dispute reel: a policy configuration that can oscillate forever.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Dict, List, Set, Tuple

from series.periodicity import Periodicity
from series.symbols import MISSING

from .state import AsPath, InternetStateSeries


logger = logging.getLogger(__name__)


@dataclass(frozen=True, order=True)
class AsSwap:
    peer: str
    first_as: int
    second_as: int


def adjacent_pairs(path: AsPath) -> Set[Tuple[int, int]]:
    """Ordered (u, v) for every hop u -> v of the path, prepending collapsed."""
    return {(u, v) for u, v in zip(path, path[1:]) if u != v}


def swapped_pairs(paths: List[AsPath]) -> Set[Tuple[int, int]]:
    """Unordered AS pairs seen adjacent in both orders across ``paths``."""
    seen: Set[Tuple[int, int]] = set()
    for path in paths:
        seen |= adjacent_pairs(path)
    return {(min(u, v), max(u, v)) for u, v in seen if (v, u) in seen}


def detect_as_swap(states: InternetStateSeries, periodicity: Periodicity) -> List[AsSwap]:
    """Per peer, the AS pairs whose order flips between the states of the pattern."""
    per_peer: Dict[str, List[AsPath]] = {peer: [] for peer in states.peers}
    for symbol in dict.fromkeys(periodicity.pattern):
        if symbol is MISSING:
            continue
        for peer, path in states.state(symbol):
            per_peer[peer].append(path)

    swaps = sorted(
        AsSwap(peer, u, v)
        for peer, paths in per_peer.items()
        for u, v in swapped_pairs(paths)
    )
    if swaps:
        logger.info(f'{states.prefix}: {len(swaps)} AS swaps in period {periodicity.period_slots} pattern')
    return swaps
