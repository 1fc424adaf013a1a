""" Configuration settings for the BTGN toolkit """
import os
from dotenv import load_dotenv

# Load environment variables
load_dotenv()

APP_NAME = os.getenv("APP_NAME", "btgn-toolkit")
DEFAULT_SEED = int(os.getenv("BTGN_DEFAULT_SEED", "20190101"))
LOG_LEVEL = os.getenv("BTGN_LOG_LEVEL", "WARNING").upper()

FIT_MAX_ITER = int(os.getenv("BTGN_FIT_MAX_ITER", "4000"))
FIT_TOL = float(os.getenv("BTGN_FIT_TOL", "1e-8"))
FIT_RESTARTS = int(os.getenv("BTGN_FIT_RESTARTS", "5"))

COINMETRICS_ENDPOINT = os.getenv(
    "COINMETRICS_ENDPOINT", "https://community-api.coinmetrics.io/v2"
)
CACHE_DIR_NAME = ".btgn_cache"
# Unset means: beside --output when one is given, else the working directory
CACHE_DIR_OVERRIDE = os.getenv("BTGN_CACHE_DIR")
CACHE_DIR = CACHE_DIR_OVERRIDE or CACHE_DIR_NAME
HTTP_TIMEOUT = float(os.getenv("BTGN_HTTP_TIMEOUT", "30"))
TIMEZONE = os.getenv("BTGN_TIMEZONE", "UTC")

_LOG_LEVELS = ("DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL")


def validate_config():
    """Validate that all configuration values are usable."""
    errors = []

    if LOG_LEVEL not in _LOG_LEVELS:
        errors.append(f"BTGN_LOG_LEVEL must be one of {', '.join(_LOG_LEVELS)}")

    if FIT_MAX_ITER < 1:
        errors.append("BTGN_FIT_MAX_ITER must be positive")

    if not FIT_TOL > 0:
        errors.append("BTGN_FIT_TOL must be positive")

    if FIT_RESTARTS < 1:
        errors.append("BTGN_FIT_RESTARTS must be at least 1")

    if not HTTP_TIMEOUT > 0:
        errors.append("BTGN_HTTP_TIMEOUT must be positive")

    if not COINMETRICS_ENDPOINT.startswith(("http://", "https://")):
        errors.append("COINMETRICS_ENDPOINT must be an http(s) URL")

    try:
        import pytz
        pytz.timezone(TIMEZONE)
    except Exception:
        errors.append(f"BTGN_TIMEZONE '{TIMEZONE}' is not a known timezone")

    if errors:
        raise ValueError(f"Configuration errors: {', '.join(errors)}")

    return True
