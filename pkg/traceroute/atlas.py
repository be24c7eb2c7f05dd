"""Download traceroute results of one measurement from the public archive API."""

from __future__ import annotations

import io
import json
import logging
from typing import Any, List, Optional, Tuple

import requests
from django.conf import settings

from .parsing import TracerouteParseResult, parse_atlas_results


logger = logging.getLogger(__name__)


def results_url(measurement_id: int, base_url: Optional[str] = None) -> str:
    root = (base_url or settings.ATLAS_API_URL).rstrip('/')
    return f'{root}/measurements/{int(measurement_id)}/results/'


def fetch_results(
    measurement_id: int,
    start_ts: int,
    end_ts: int,
    base_url: Optional[str] = None,
    timeout: int = 60,
) -> Tuple[Optional[List[Any]], Optional[str]]:
    """Raw results in [start_ts, end_ts), or (None, error message)."""
    url = results_url(measurement_id, base_url)
    params = {'start': start_ts, 'stop': end_ts - 1, 'format': 'json'}
    try:
        logger.debug(f'Making GET request to {url} with {params}')
        resp = requests.get(url, params=params, timeout=timeout)
        logger.debug(f'GET {url} -> HTTP {resp.status_code}')
        if resp.status_code != 200:
            error_msg = f'HTTP {resp.status_code} for {url}'
            logger.warning(error_msg)
            return None, error_msg
        try:
            data = resp.json()
        except json.JSONDecodeError as e:
            error_msg = f'JSON decode error for {url}: {e}'
            logger.error(error_msg)
            return None, error_msg
        if not isinstance(data, list):
            error_msg = f'Unexpected payload for {url}: {type(data).__name__}'
            logger.error(error_msg)
            return None, error_msg
        logger.info(f'Fetched {len(data)} results of measurement {measurement_id}')
        return data, None
    except requests.exceptions.Timeout:
        error_msg = f'Timeout for {url}'
        logger.error(error_msg)
        return None, error_msg
    except requests.exceptions.ConnectionError as e:
        error_msg = f'Connection error for {url}: {e}'
        logger.error(error_msg)
        return None, error_msg


def fetch_traceroutes(measurement_id: int, start_ts: int, end_ts: int, **kwargs) -> Tuple[Optional[TracerouteParseResult], Optional[str]]:
    data, error = fetch_results(measurement_id, start_ts, end_ts, **kwargs)
    if data is None:
        return None, error
    return parse_atlas_results(io.StringIO(json.dumps(data))), None
