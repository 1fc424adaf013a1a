"""
Client for the public coinmetrics v2 API.

Responses are cached verbatim under a key derived from the request URL
and parameters, so a rerun with the same arguments replays the cached
bytes without network I/O.
"""

import hashlib
import json
import logging
import math
from dataclasses import dataclass
from datetime import date
from pathlib import Path
from typing import Any, Optional, Tuple, Union

import httpx
import numpy as np
import pandas as pd
import pytz

from src.config import CACHE_DIR, COINMETRICS_ENDPOINT, HTTP_TIMEOUT, TIMEZONE
from src.datapipe.series import Series
from src.exceptions import (
    DomainError,
    EmptySeriesError,
    FetchNetworkError,
    FetchParseError,
    FetchStatusError,
)
from src.utils.dates import format_date, parse_date_window
from src.utils.io import write_bytes_atomic

logger = logging.getLogger(__name__)

MAX_ATTEMPTS = 2


@dataclass(frozen=True)
class ResponseSchema:
    """Dotted paths locating observations in the JSON body."""

    series_path: str = "metricData.series"
    time_field: str = "time"
    value_field: str = "values.0"


DEFAULT_SCHEMA = ResponseSchema()


def _resolve(document: Any, path: str) -> Any:
    node = document
    for part in path.split("."):
        if isinstance(node, list) and part.lstrip("-").isdigit():
            node = node[int(part)]
        elif isinstance(node, dict):
            node = node[part]
        else:
            raise KeyError(part)
    return node


def request_url(endpoint: str, asset: str) -> str:
    return f"{endpoint.rstrip('/')}/assets/{asset}/metricdata"


def cache_path(cache_dir: Union[str, Path], url: str, params: dict) -> Path:
    """Cache file for a request; the name hashes the URL and sorted params."""
    key = json.dumps({"url": url, "params": params}, sort_keys=True)
    digest = hashlib.sha256(key.encode("utf-8")).hexdigest()
    return Path(cache_dir) / f"coinmetrics-{digest[:32]}.json"


def parse_response(body: bytes, schema: ResponseSchema = DEFAULT_SCHEMA,
                   label: str = "value", timezone: str = TIMEZONE) -> Series:
    """
    Parse a response body into a Series.

    Raises:
        FetchParseError: Malformed JSON, a missing field, or a null or
            non-numeric value; the offset is the character position for
            JSON errors and the observation index otherwise
        EmptySeriesError: A well-formed body without observations
    """
    try:
        document = json.loads(body.decode("utf-8"))
    except UnicodeDecodeError as error:
        raise FetchParseError("response is not UTF-8", offset=error.start) from error
    except json.JSONDecodeError as error:
        raise FetchParseError(f"malformed JSON: {error.msg}", offset=error.pos) from error

    try:
        entries = _resolve(document, schema.series_path)
    except (KeyError, IndexError, TypeError):
        raise FetchParseError(f"response has no '{schema.series_path}' list") from None
    if not isinstance(entries, list):
        raise FetchParseError(f"'{schema.series_path}' is not a list")
    if not entries:
        raise EmptySeriesError("response contains no observations")

    times, values = [], []
    for offset, entry in enumerate(entries):
        try:
            stamp = _resolve(entry, schema.time_field)
            raw = _resolve(entry, schema.value_field)
        except (KeyError, IndexError, TypeError):
            raise FetchParseError("observation is missing a field", offset=offset) from None
        if raw is None or stamp is None:
            raise FetchParseError("observation has a null entry", offset=offset)
        try:
            value = float(raw)
        except (TypeError, ValueError):
            raise FetchParseError(f"value '{raw}' is not numeric", offset=offset) from None
        if not math.isfinite(value):
            raise FetchParseError(f"value '{raw}' is not finite", offset=offset)
        times.append(stamp)
        values.append(value)

    try:
        stamps = pd.DatetimeIndex(pd.to_datetime(times, utc=True)).tz_convert(pytz.timezone(timezone))
    except (ValueError, TypeError) as error:
        raise FetchParseError(f"unparsable timestamp: {error}") from error
    try:
        return Series(np.asarray(values), label=label, timestamps=stamps)
    except DomainError as error:
        raise FetchParseError(str(error)) from error


async def _download(url: str, params: dict, timeout: float,
                    transport: Optional[httpx.AsyncBaseTransport]) -> bytes:
    last_error: Optional[Exception] = None
    async with httpx.AsyncClient(timeout=timeout, transport=transport) as client:
        for attempt in range(1, MAX_ATTEMPTS + 1):
            try:
                response = await client.get(url, params=params)
            except httpx.TransportError as error:
                last_error = error
                logger.warning("Request to %s failed (attempt %d): %s", url, attempt, error)
                continue
            if response.status_code >= 500 and attempt < MAX_ATTEMPTS:
                logger.warning("Endpoint returned HTTP %d, retrying", response.status_code)
                continue
            if not response.is_success:
                raise FetchStatusError(response.status_code, str(response.url))
            return response.content
    raise FetchNetworkError(f"could not reach {url}: {last_error}")


async def fetch_coinmetrics(
    asset: str,
    metric: str,
    start: Union[str, date],
    end: Union[str, date],
    endpoint: str = COINMETRICS_ENDPOINT,
    cache_dir: Union[str, Path] = CACHE_DIR,
    offline: bool = False,
    schema: ResponseSchema = DEFAULT_SCHEMA,
    timeout: float = HTTP_TIMEOUT,
    transport: Optional[httpx.AsyncBaseTransport] = None,
) -> Tuple[Series, Path]:
    """
    Fetch one metric of one asset over an inclusive date window.

    Args:
        asset: Asset identifier, e.g. "btc"
        metric: Metric identifier; there is no default metric
        start: First date (YYYY-MM-DD)
        end: Last date (YYYY-MM-DD)
        endpoint: API base URL
        cache_dir: Directory holding verbatim response bodies
        offline: Use only the cache
        schema: Where observations live in the JSON body
        timeout: Request timeout in seconds
        transport: Optional httpx transport (tests inject a mock)

    Returns:
        Tuple of (Series, cache file path)
    """
    if not asset or not metric:
        raise DomainError("asset and metric are required")
    start_date, end_date = parse_date_window(start, end)
    url = request_url(endpoint, asset)
    params = {"metrics": metric, "start": format_date(start_date), "end": format_date(end_date)}
    path = cache_path(cache_dir, url, params)

    if path.is_file():
        logger.info("Cache hit for %s %s: %s", asset, metric, path)
        body = path.read_bytes()
    elif offline:
        raise FetchNetworkError(f"offline and no cached response at {path}")
    else:
        logger.info("Cache miss for %s %s, requesting %s", asset, metric, url)
        body = await _download(url, params, timeout, transport)
        series = parse_response(body, schema, label=metric)
        write_bytes_atomic(path, body)
        return series, path

    return parse_response(body, schema, label=metric), path
