"""Synthetic routing beacon: a prefix announced for two hours, withdrawn for two."""

from __future__ import annotations

import logging
from typing import List, Sequence, Union

import numpy as np

from .updates import BgpUpdate, UpdateKind


logger = logging.getLogger(__name__)

HALF_PERIOD = 2 * 3600
BEACON_PREFIX = '84.205.64.0/24'
BEACON_ORIGIN = 12654
TRANSIT_AS = 3333
DETOUR_AS = 1299
FIRST_PEER_AS = 64512


def beacon_peers(count: int) -> List[str]:
    return [f'peer{k:03d}' for k in range(count)]


def beacon_path(k: int, transit: int = TRANSIT_AS) -> tuple:
    return (FIRST_PEER_AS + k, transit, BEACON_ORIGIN)


def synth_beacon(
    t0: int,
    duration: int,
    peers: Union[int, Sequence[str]],
    prefix: str = BEACON_PREFIX,
    flap_fraction: float = 0.0,
    seed: int = 0,
) -> List[BgpUpdate]:
    """Beacon updates over [t0, t0 + duration], sorted by (ts, peer).

    Every peer announces at t0 + 4h*k and withdraws two hours later, the
    boundary at t0 + duration included. With ``flap_fraction`` > 0 that share
    of the peers ignores the schedule and picks a random state (the beacon
    path, a detour path or unreachable) every second.
    """
    if duration < 2 * HALF_PERIOD:
        raise ValueError(f'A beacon needs at least four hours, got {duration} s')
    if not 0 <= flap_fraction < 1:
        raise ValueError(f'flap_fraction must be in [0, 1), got {flap_fraction}')
    names = beacon_peers(peers) if isinstance(peers, int) else list(peers)
    if not names:
        return []

    rng = np.random.default_rng(seed)
    flapping = int(round(flap_fraction * len(names)))
    flappers = set(rng.choice(len(names), size=flapping, replace=False).tolist()) if flapping else set()

    updates: List[BgpUpdate] = []
    for k, peer in enumerate(names):
        if k in flappers:
            updates.extend(_flaps(rng, t0, duration, peer, prefix, k))
            continue
        for ts in range(t0, t0 + duration + 1, HALF_PERIOD):
            announce = (ts - t0) // HALF_PERIOD % 2 == 0
            updates.append(BgpUpdate(
                ts=ts, peer=peer, prefix=prefix,
                kind=UpdateKind.ANNOUNCE if announce else UpdateKind.WITHDRAW,
                as_path=beacon_path(k) if announce else (),
            ))
    updates.sort(key=lambda u: (u.ts, u.peer))
    logger.info(f'Synthesized {len(updates)} beacon updates for {len(names)} peers ({flapping} flapping)')
    return updates


def _flaps(rng: np.random.Generator, t0: int, duration: int, peer: str, prefix: str, k: int) -> List[BgpUpdate]:
    choices = rng.integers(0, 3, size=duration + 1)
    out: List[BgpUpdate] = []
    previous = None
    for offset, choice in enumerate(choices.tolist()):
        if choice == previous:
            continue
        previous = choice
        if choice == 2:
            out.append(BgpUpdate(ts=t0 + offset, peer=peer, prefix=prefix, kind=UpdateKind.WITHDRAW))
        else:
            path = beacon_path(k, TRANSIT_AS if choice == 0 else DETOUR_AS)
            out.append(BgpUpdate(ts=t0 + offset, peer=peer, prefix=prefix, kind=UpdateKind.ANNOUNCE, as_path=path))
    return out
