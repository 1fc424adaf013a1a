"""
Data ingestion: CSV columns, log returns, KDE and the coinmetrics client
"""

from .series import Series, read_series_csv, log_returns, cumulative_prices
from .csv_io import read_csv_column
from .kde import kde, silverman_bandwidth

from .coinmetrics import (
    ResponseSchema,
    DEFAULT_SCHEMA,
    fetch_coinmetrics,
    parse_response,
    cache_path,
    request_url
)

__all__ = [
    'Series',
    'read_series_csv',
    'log_returns',
    'cumulative_prices',
    'read_csv_column',
    'kde',
    'silverman_bandwidth',
    'ResponseSchema',
    'DEFAULT_SCHEMA',
    'fetch_coinmetrics',
    'parse_response',
    'cache_path',
    'request_url'
]
