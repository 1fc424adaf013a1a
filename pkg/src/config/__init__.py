from .settings import (
    APP_NAME,
    DEFAULT_SEED,
    LOG_LEVEL,
    FIT_MAX_ITER,
    FIT_TOL,
    FIT_RESTARTS,
    COINMETRICS_ENDPOINT,
    CACHE_DIR,
    CACHE_DIR_NAME,
    CACHE_DIR_OVERRIDE,
    HTTP_TIMEOUT,
    TIMEZONE,
    validate_config
)

from .environment import check_environment
from .logging_setup import configure_logging

__all__ = [
    'APP_NAME',
    'DEFAULT_SEED',
    'LOG_LEVEL',
    'FIT_MAX_ITER',
    'FIT_TOL',
    'FIT_RESTARTS',
    'COINMETRICS_ENDPOINT',
    'CACHE_DIR',
    'CACHE_DIR_NAME',
    'CACHE_DIR_OVERRIDE',
    'HTTP_TIMEOUT',
    'TIMEZONE',
    'validate_config',
    'check_environment',
    'configure_logging'
]
