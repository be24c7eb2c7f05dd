"""BGP update stream reader.

Input is JSON Lines, one update per line::

    {"ts": int, "peer": str, "prefix": str, "type": "A"|"W", "as_path": [int, ...]}

``as_path`` is required for announcements and must be absent, null or empty
for withdrawals. Route-collector dumps (MRT) are converted to this schema
upstream, e.g. ``bgpdump -m`` output mapped field by field.
"""

from __future__ import annotations

import enum
import ipaddress
import json
import logging
from dataclasses import dataclass, field
from typing import Dict, IO, Iterable, List, Optional, Sequence, Tuple

import numpy as np


logger = logging.getLogger(__name__)

# characters reserved by the state encoding
RESERVED_PEER_CHARS = frozenset(';=')


class BgpParseError(Exception):
    """Raised when an update stream cannot be read at all."""


class UpdateKind(str, enum.Enum):
    ANNOUNCE = 'A'
    WITHDRAW = 'W'


@dataclass(frozen=True)
class BgpUpdate:
    ts: int
    peer: str
    prefix: str
    kind: UpdateKind
    as_path: Tuple[int, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, 'as_path', tuple(int(asn) for asn in self.as_path))
        object.__setattr__(self, 'kind', UpdateKind(self.kind))
        if not self.peer or RESERVED_PEER_CHARS & set(self.peer):
            raise ValueError(f'Invalid peer id {self.peer!r}')
        if self.kind is UpdateKind.ANNOUNCE and not self.as_path:
            raise ValueError('an announcement needs an AS path')
        if self.kind is UpdateKind.WITHDRAW and self.as_path:
            raise ValueError('a withdrawal carries no AS path')
        if any(asn < 0 for asn in self.as_path):
            raise ValueError('AS numbers must be non-negative')


@dataclass
class BgpParseResult:
    updates: List[BgpUpdate]
    total_lines: int = 0
    malformed: int = 0
    filtered: int = 0
    errors: List[str] = field(default_factory=list)

    def to_summary(self) -> Dict[str, object]:
        return {
            'updates': len(self.updates),
            'total_lines': self.total_lines,
            'malformed': self.malformed,
            'filtered': self.filtered,
        }


def normalize_prefix(prefix: str) -> str:
    """Canonical IPv4 CIDR text; raises ValueError on anything else."""
    network = ipaddress.ip_network(prefix, strict=False)
    if network.version != 4:
        raise ValueError(f'{prefix} is not an IPv4 prefix')
    return str(network)


def _update_from_dict(data: object) -> BgpUpdate:
    if not isinstance(data, dict):
        raise ValueError('update is not an object')
    ts = data['ts']
    if isinstance(ts, bool) or not isinstance(ts, int):
        raise ValueError('"ts" must be an integer number of seconds')
    as_path = data.get('as_path') or []
    if not isinstance(as_path, list) or not all(isinstance(a, int) and not isinstance(a, bool) for a in as_path):
        raise ValueError('"as_path" must be a list of AS numbers')
    return BgpUpdate(
        ts=ts,
        peer=str(data['peer']),
        prefix=normalize_prefix(str(data['prefix'])),
        kind=UpdateKind(data['type']),
        as_path=as_path,
    )


def parse_bgp_updates(stream: IO[str], prefix: Optional[str] = None) -> BgpParseResult:
    """Updates for ``prefix`` (all prefixes when None) sorted by (ts, peer).

    The sort is stable, so several updates of one peer within one second keep
    their file order and the last of them wins when states are replayed.
    """
    wanted = normalize_prefix(prefix) if prefix else None
    result = BgpParseResult(updates=[])
    try:
        for lineno, line in enumerate(stream, start=1):
            line = line.strip()
            if not line:
                continue
            result.total_lines += 1
            try:
                update = _update_from_dict(json.loads(line))
            except (json.JSONDecodeError, KeyError, TypeError, ValueError) as exc:
                result.malformed += 1
                result.errors.append(f'line {lineno}: {exc}')
                continue
            if wanted is not None and update.prefix != wanted:
                result.filtered += 1
                continue
            result.updates.append(update)
    except (OSError, UnicodeDecodeError) as exc:
        raise BgpParseError(f'Cannot read BGP updates: {exc}') from exc

    result.updates.sort(key=lambda u: (u.ts, u.peer))
    if result.malformed:
        logger.warning(f'Skipped {result.malformed} malformed BGP update lines of {result.total_lines}')
    logger.info(f'Parsed {len(result.updates)} BGP updates ({result.filtered} for other prefixes)')
    return result


def prefixes_of(updates: Iterable[BgpUpdate]) -> List[str]:
    return sorted({u.prefix for u in updates}, key=lambda p: ipaddress.ip_network(p))


def busiest_window(updates: Sequence[BgpUpdate], hours: float) -> Tuple[int, int]:
    """[t0, t1) of the given length holding the most updates, earliest on ties."""
    if not updates:
        raise ValueError('no updates to choose a window from')
    width = int(round(hours * 3600))
    if width <= 0:
        raise ValueError(f'Window length must be positive, got {hours} hours')
    ts = np.sort(np.fromiter((u.ts for u in updates), dtype=np.int64, count=len(updates)))
    inside = np.searchsorted(ts, ts + width, side='left') - np.arange(len(ts))
    t0 = int(ts[int(np.argmax(inside))])
    return t0, t0 + width


def update_to_record(update: BgpUpdate) -> Dict[str, object]:
    record: Dict[str, object] = {
        'ts': update.ts,
        'peer': update.peer,
        'prefix': update.prefix,
        'type': update.kind.value,
    }
    if update.kind is UpdateKind.ANNOUNCE:
        record['as_path'] = list(update.as_path)
    return record


def write_updates(target: IO[str], updates: Iterable[BgpUpdate]) -> int:
    written = 0
    for update in updates:
        target.write(json.dumps(update_to_record(update), separators=(',', ':')) + '\n')
        written += 1
    return written
