"""Traceroute record readers.

Native input is JSON Lines, one traceroute per line::

    {"ts": int, "src": str, "dst": str, "paris_id": int|null, "hops": [str, ...]}

with ``"*"`` for hops that did not answer. ``parse_atlas_results`` reads the
public measurement-archive result format instead and keeps only the first
reply of every hop.
"""

from __future__ import annotations

import ipaddress
import json
import logging
from dataclasses import dataclass, field
from typing import Any, Dict, IO, Iterable, List, Optional, Tuple


logger = logging.getLogger(__name__)

ASTERISK = '*'


class TracerouteParseError(Exception):
    """Raised when a traceroute input cannot be read at all."""


@dataclass(frozen=True)
class TracerouteRecord:
    ts: int
    src: str
    dst: str
    paris_id: Optional[int]
    hops: Tuple[str, ...]

    def __post_init__(self):
        object.__setattr__(self, 'hops', tuple(self.hops))
        if not self.hops:
            raise ValueError('a traceroute needs at least one hop')
        for hop in self.hops:
            if hop != ASTERISK:
                ipaddress.IPv4Address(hop)
        if self.paris_id is not None and self.paris_id < 1:
            raise ValueError(f'paris_id must be >= 1, got {self.paris_id}')

    @property
    def pair(self) -> Tuple[str, str]:
        return (self.src, self.dst)


@dataclass
class TracerouteParseResult:
    records: List[TracerouteRecord]
    total_lines: int = 0
    malformed: int = 0
    skipped_ipv6: int = 0
    errors: List[str] = field(default_factory=list)

    def to_summary(self) -> Dict[str, object]:
        return {
            'records': len(self.records),
            'total_lines': self.total_lines,
            'malformed': self.malformed,
            'skipped_ipv6': self.skipped_ipv6,
        }


def _record_from_dict(data: Any) -> TracerouteRecord:
    if not isinstance(data, dict):
        raise ValueError('record is not an object')
    hops = data['hops']
    if not isinstance(hops, list) or not all(isinstance(h, str) for h in hops):
        raise ValueError('"hops" must be a list of strings')
    paris_id = data.get('paris_id')
    if paris_id is not None and (isinstance(paris_id, bool) or not isinstance(paris_id, int)):
        raise ValueError('"paris_id" must be an integer or null')
    ts = data['ts']
    if isinstance(ts, bool) or not isinstance(ts, int):
        raise ValueError('"ts" must be an integer')
    return TracerouteRecord(ts=ts, src=str(data['src']), dst=str(data['dst']), paris_id=paris_id, hops=hops)


def _read_lines(stream: IO[str]) -> Iterable[str]:
    try:
        yield from stream
    except (OSError, UnicodeDecodeError) as exc:
        raise TracerouteParseError(f'Cannot read traceroute input: {exc}') from exc


def parse_traceroute_records(stream: IO[str]) -> TracerouteParseResult:
    """Read JSON Lines traceroutes; malformed lines are counted and skipped."""
    result = TracerouteParseResult(records=[])
    for lineno, line in enumerate(_read_lines(stream), start=1):
        line = line.strip()
        if not line:
            continue
        result.total_lines += 1
        try:
            result.records.append(_record_from_dict(json.loads(line)))
        except (json.JSONDecodeError, KeyError, TypeError, ValueError) as exc:
            result.malformed += 1
            result.errors.append(f'line {lineno}: {exc}')
    if result.malformed:
        logger.warning(f'Skipped {result.malformed} malformed traceroute lines of {result.total_lines}')
    logger.info(f'Parsed {len(result.records)} traceroutes')
    return result


def first_reply(hop: Dict[str, Any]) -> str:
    """Address of the first reply of an archive hop, ``*`` when it timed out."""
    replies = hop.get('result') or []
    if not replies:
        return ASTERISK
    first = replies[0]
    if not isinstance(first, dict) or 'from' not in first:
        return ASTERISK
    return str(first['from'])


def _atlas_objects(stream: IO[str]) -> Iterable[Tuple[int, Any]]:
    text = ''.join(_read_lines(stream))
    stripped = text.lstrip()
    if stripped.startswith('['):
        try:
            items = json.loads(stripped)
        except json.JSONDecodeError as exc:
            raise TracerouteParseError(f'Archive result array is not valid JSON: {exc}') from exc
        for index, item in enumerate(items, start=1):
            yield index, item
        return
    for lineno, line in enumerate(text.splitlines(), start=1):
        line = line.strip()
        if not line:
            continue
        try:
            yield lineno, json.loads(line)
        except json.JSONDecodeError as exc:
            yield lineno, exc


def _atlas_record(item: Dict[str, Any]) -> TracerouteRecord:
    hops = [first_reply(hop) for hop in sorted(item['result'], key=lambda h: h.get('hop', 0))]
    return TracerouteRecord(
        ts=int(item['timestamp']),
        src=str(item['prb_id']),
        dst=str(item['dst_addr']),
        paris_id=item.get('paris_id'),
        hops=hops,
    )


def parse_atlas_results(stream: IO[str]) -> TracerouteParseResult:
    """Read archive traceroute results (a JSON array or JSON Lines)."""
    result = TracerouteParseResult(records=[])
    for position, item in _atlas_objects(stream):
        result.total_lines += 1
        if isinstance(item, Exception):
            result.malformed += 1
            result.errors.append(f'item {position}: {item}')
            continue
        if isinstance(item, dict) and item.get('af') == 6:
            result.skipped_ipv6 += 1
            continue
        try:
            result.records.append(_atlas_record(item))
        except ipaddress.AddressValueError:
            result.skipped_ipv6 += 1
        except (KeyError, TypeError, ValueError, AttributeError) as exc:
            result.malformed += 1
            result.errors.append(f'item {position}: {exc}')
    if result.malformed:
        logger.warning(f'Skipped {result.malformed} malformed archive results of {result.total_lines}')
    if result.skipped_ipv6:
        logger.warning(f'Skipped {result.skipped_ipv6} IPv6 archive results')
    logger.info(f'Parsed {len(result.records)} archive traceroutes')
    return result
