"""The state of the Internet toward one prefix, as seen by the collector peers.

A peer's state at time t is the AS path it uses to reach the prefix, or
UNREACHABLE. The state of the Internet is the vector of all peer states;
each distinct vector becomes one symbol of a series sampled every ``step``
seconds. Raw symbol values are canonical::

    b"peerA=3333-12654;peerB=!"

peers in a fixed order, AS numbers joined by ``-``, ``!`` for UNREACHABLE.
"""

from __future__ import annotations

import logging
import math
from collections import defaultdict
from dataclasses import dataclass, field
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

import numpy as np

from detector.config import DetectorConfig
from detector.matching import MatchOperator
from detector.pipeline import SeriesDetections, detect_series
from series.periodicity import Periodicity
from series.symbols import MISSING, SeriesError, Symbol, SymbolSeries, SymbolTable, slot_count

from .updates import BgpUpdate, UpdateKind


logger = logging.getLogger(__name__)

AsPath = Tuple[int, ...]
UNREACHABLE: AsPath = ()
InternetState = Tuple[Tuple[str, AsPath], ...]

DEFAULT_THRESHOLD = 0.95


class StateMismatchError(Exception):
    """Raised when two states do not cover the same peers in the same order."""


def encode_path(path: AsPath) -> str:
    return '-'.join(str(asn) for asn in path) if path else '!'


def decode_path(text: str) -> AsPath:
    return UNREACHABLE if text == '!' else tuple(int(asn) for asn in text.split('-'))


def encode_state(state: InternetState) -> bytes:
    return ';'.join(f'{peer}={encode_path(path)}' for peer, path in state).encode('ascii')


def decode_state(raw: bytes) -> InternetState:
    if not raw:
        return ()
    state = []
    for item in raw.decode('ascii').split(';'):
        peer, _, path = item.partition('=')
        state.append((peer, decode_path(path)))
    return tuple(state)


def required_agreement(threshold: float, peers: int) -> int:
    """Least number of coinciding peers for two states to match."""
    return math.ceil(threshold * peers - 1e-9)


def state_match(a: InternetState, b: InternetState, threshold: float = DEFAULT_THRESHOLD) -> int:
    """1 iff at least ``threshold`` of the peers are in the same state in a and b."""
    if [peer for peer, _ in a] != [peer for peer, _ in b]:
        raise StateMismatchError('States cover different peers')
    if not a:
        return 1
    equal = sum(1 for (_, x), (_, y) in zip(a, b) if x == y)
    return int(equal >= required_agreement(threshold, len(a)))


class StateMatchOperator(MatchOperator):
    """Two slots match when their states coincide on enough peers.

    With threshold 1.0 this is exact symbol equality.
    """

    def __init__(self, threshold: float = DEFAULT_THRESHOLD, table: Optional[SymbolTable] = None):
        if not 0 < threshold <= 1:
            raise ValueError(f'Coincidence threshold must be in (0, 1], got {threshold}')
        self.threshold = threshold
        self.table = table
        self._cache: Optional[Tuple[Tuple[bytes, ...], np.ndarray]] = None

    @property
    def peer_count(self) -> int:
        if self.table is None or not len(self.table):
            return 0
        return len(decode_state(self.table.lookup(0)))

    def __call__(self, a: Optional[Symbol], b: Optional[Symbol]) -> int:
        if a is MISSING or b is MISSING:
            return 0
        if a == b:
            return 1
        if self.table is None:
            raise StateMismatchError('StateMatchOperator needs the state table to compare symbols')
        return state_match(decode_state(self.table.lookup(a)), decode_state(self.table.lookup(b)), self.threshold)

    def matrix(self, series: SymbolSeries) -> np.ndarray:
        entries = series.table.entries
        if self._cache is not None and self._cache[0] == entries:
            return self._cache[1]
        states = [decode_state(raw) for raw in entries]
        if not states:
            return np.zeros((0, 0), dtype=bool)
        peers = [peer for peer, _ in states[0]]
        if any([peer for peer, _ in state] != peers for state in states):
            raise StateMismatchError(f'Series {series.series_id!r} mixes states over different peers')

        # per-peer state ids, one column per peer
        codes = np.empty((len(states), len(peers)), dtype=np.int64)
        for column in range(len(peers)):
            ids: Dict[AsPath, int] = {}
            for row, state in enumerate(states):
                codes[row, column] = ids.setdefault(state[column][1], len(ids))
        agreement = np.zeros((len(states), len(states)), dtype=np.int32)
        for column in range(len(peers)):
            agreement += codes[:, column, None] == codes[None, :, column]
        out = agreement >= required_agreement(self.threshold, len(peers)) if peers else np.ones_like(agreement, dtype=bool)
        self._cache = (entries, out)
        return out

    def __getstate__(self):
        state = self.__dict__.copy()
        state['_cache'] = None
        return state

    def __repr__(self) -> str:
        return f'StateMatchOperator(threshold={self.threshold})'


@dataclass(frozen=True, eq=False)
class InternetStateSeries:
    prefix: str
    peers: Tuple[str, ...]
    series: SymbolSeries
    # per peer: (ts, state) at every change, starting with the state at start_ts
    timelines: Dict[str, List[Tuple[int, AsPath]]] = field(default_factory=dict)
    dropped: int = 0

    @property
    def start_ts(self) -> int:
        return self.series.start_ts

    @property
    def step(self) -> int:
        return self.series.step

    def state(self, symbol: Symbol) -> InternetState:
        return decode_state(self.series.table.lookup(symbol))

    def state_at(self, i: int) -> Optional[InternetState]:
        symbol = self.series.slots[i]
        return None if symbol is MISSING else self.state(symbol)


def seed_before(updates: Iterable[BgpUpdate], t0: int) -> Dict[str, AsPath]:
    """Per-peer state just before ``t0``: the last update of each peer with ts < t0."""
    seed: Dict[str, AsPath] = {}
    for update in sorted((u for u in updates if u.ts < t0), key=lambda u: u.ts):
        seed[update.peer] = update.as_path if update.kind is UpdateKind.ANNOUNCE else UNREACHABLE
    return seed


def build_state_series(
    updates: Iterable[BgpUpdate],
    peers: Optional[Sequence[str]] = None,
    t0: int = 0,
    t1: int = 0,
    step: int = 1,
    seed: Optional[Dict[str, AsPath]] = None,
    prefix: Optional[str] = None,
) -> InternetStateSeries:
    """Replay updates into a state series on the grid [t0, t1).

    Slot i holds the state after every update with ts <= t0 + i*step. Peers
    start UNREACHABLE unless ``seed`` gives their initial AS path. When
    ``peers`` is None the peer universe is every peer seen in ``updates``.
    """
    if t1 <= t0:
        raise SeriesError(f'Empty window [{t0}, {t1})')
    updates = list(updates)
    if peers is None:
        peers = sorted({u.peer for u in updates})
    peers = tuple(peers)
    if prefix is None:
        prefixes = {u.prefix for u in updates}
        prefix = prefixes.pop() if len(prefixes) == 1 else ''

    position = {peer: k for k, peer in enumerate(peers)}
    events: List[BgpUpdate] = []
    dropped = 0
    for update in updates:
        if update.ts < t0 or update.ts >= t1 or update.peer not in position:
            dropped += 1
            continue
        events.append(update)
    events.sort(key=lambda u: u.ts)
    if dropped:
        logger.warning(f'{prefix or "state series"}: dropped {dropped} updates outside [{t0}, {t1}) or from unknown peers')

    seed = seed or {}
    current: List[AsPath] = [tuple(seed.get(peer, UNREACHABLE)) for peer in peers]
    timelines: Dict[str, List[Tuple[int, AsPath]]] = defaultdict(list)
    for peer, path in zip(peers, current):
        timelines[peer].append((t0, path))

    table = SymbolTable()
    slots: List[Symbol] = []
    symbol = table.intern(encode_state(tuple(zip(peers, current))))
    j = 0
    for i in range(slot_count(t0, t1, step)):
        now = t0 + i * step
        changed = False
        while j < len(events) and events[j].ts <= now:
            update = events[j]
            k = position[update.peer]
            path = update.as_path if update.kind is UpdateKind.ANNOUNCE else UNREACHABLE
            if current[k] != path:
                current[k] = path
                timelines[update.peer].append((update.ts, path))
                changed = True
            j += 1
        if changed:
            symbol = table.intern(encode_state(tuple(zip(peers, current))))
        slots.append(symbol)

    series = SymbolSeries(series_id=prefix, start_ts=t0, step=step, slots=tuple(slots), table=table)
    logger.info(f'{prefix}: {len(series)} slots, {len(peers)} peers, {len(table)} distinct states')
    return InternetStateSeries(prefix=prefix, peers=peers, series=series, timelines=dict(timelines), dropped=dropped)


def window_state_series(
    updates: Sequence[BgpUpdate],
    t0: int,
    t1: int,
    step: int = 1,
    prefix: Optional[str] = None,
) -> InternetStateSeries:
    """State series on [t0, t1) of a stream that may start before t0.

    Earlier updates set the starting state of their peers instead of being
    dropped; peers seen only before t0 stay in the peer universe.
    """
    peers = sorted({u.peer for u in updates})
    return build_state_series(
        [u for u in updates if u.ts >= t0], peers=peers, t0=t0, t1=t1, step=step,
        seed=seed_before(updates, t0), prefix=prefix,
    )


def peer_state_series(states: InternetStateSeries, peer: str) -> SymbolSeries:
    """The AS path sequence of a single collector peer."""
    if peer not in states.peers:
        raise StateMismatchError(f'{peer!r} is not a peer of {states.prefix}')
    column = states.peers.index(peer)
    table = SymbolTable()
    by_symbol: Dict[Symbol, Symbol] = {}
    slots = []
    for symbol in states.series.slots:
        if symbol is MISSING:
            slots.append(MISSING)
            continue
        if symbol not in by_symbol:
            path = states.state(symbol)[column][1]
            by_symbol[symbol] = table.intern(encode_path(path).encode('ascii'))
        slots.append(by_symbol[symbol])
    return SymbolSeries(
        series_id=f'{states.prefix}@{peer}', start_ts=states.start_ts, step=states.step,
        slots=tuple(slots), table=table,
    )


def state_operator(states: InternetStateSeries, threshold: float = DEFAULT_THRESHOLD) -> StateMatchOperator:
    return StateMatchOperator(threshold, states.series.table)


def detect_state_series(
    states: InternetStateSeries,
    config: Optional[DetectorConfig] = None,
    threshold: float = DEFAULT_THRESHOLD,
) -> SeriesDetections:
    return detect_series(states.series, config, state_operator(states, threshold))


def detect_state_periodicity(
    states: InternetStateSeries,
    config: Optional[DetectorConfig] = None,
    threshold: float = DEFAULT_THRESHOLD,
) -> List[Periodicity]:
    """The detector pipeline with states matching on ``threshold`` of the peers."""
    return detect_state_series(states, config, threshold).periodicities


def state_classes(states: InternetStateSeries, pattern: Sequence[Optional[Symbol]],
                  threshold: float = DEFAULT_THRESHOLD) -> int:
    """Number of groups of pattern states that match each other, built greedily."""
    operator = state_operator(states, threshold)
    representatives: List[Symbol] = []
    for symbol in pattern:
        if symbol is MISSING:
            continue
        if not any(operator(symbol, other) for other in representatives):
            representatives.append(symbol)
    return len(representatives)
