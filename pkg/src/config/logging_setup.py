""" Logging setup shared by the CLI and scripts """

import logging
from src.config.settings import LOG_LEVEL

LOG_FORMAT = "%(asctime)s %(levelname)-8s %(name)s: %(message)s"


def configure_logging(verbosity: int = 0) -> None:
    """
    Configure root logging on stderr.

    Args:
        verbosity: 0 uses BTGN_LOG_LEVEL, 1 forces INFO, 2 or more forces DEBUG
    """
    if verbosity >= 2:
        level = logging.DEBUG
    elif verbosity == 1:
        level = logging.INFO
    else:
        level = getattr(logging, LOG_LEVEL, logging.WARNING)

    logging.basicConfig(level=level, format=LOG_FORMAT, force=True)
