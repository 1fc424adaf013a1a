""" Environment validation for the BTGN toolkit. Checks the numerical stack and configuration """

import logging
import sys
from src.config.settings import validate_config

logger = logging.getLogger(__name__)

_REQUIRED_PACKAGES = ("numpy", "scipy", "pandas", "httpx", "pytz")


def check_environment() -> bool:
    """
    Check that the environment can run the toolkit.

    Returns:
        bool: True if every required package imports and the configuration is valid
    """
    for package in _REQUIRED_PACKAGES:
        try:
            __import__(package)
            logger.debug("✓ %s imported successfully", package)
        except ImportError as e:
            logger.error("✗ Failed to import %s: %s (solution: pip install %s)", package, e, package)
            return False

    try:
        validate_config()
        logger.debug("✓ Configuration validated successfully")
    except ValueError as e:
        logger.error("✗ %s (check your .env file)", e)
        return False

    return True


if __name__ == "__main__":
    logging.basicConfig(level=logging.DEBUG)
    if not check_environment():
        print("\n Environment check failed!")
        sys.exit(1)
    else:
        print("\n✓ Environment is ready!")
