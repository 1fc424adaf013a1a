"""
Command-line front end
"""

import logging
import sys
from typing import Optional, Sequence

from src.config import check_environment, configure_logging
from src.exceptions import BTGNError, ConvergenceError

from .parser import build_parser
from .commands import (
    EXIT_OK,
    EXIT_ERROR,
    EXIT_USAGE,
    EXIT_NOT_CONVERGED,
    HANDLERS
)

logger = logging.getLogger(__name__)


def main(argv: Optional[Sequence[str]] = None) -> int:
    """
    Run one subcommand.

    Args:
        argv: Arguments without the program name (defaults to sys.argv[1:])

    Returns:
        Exit code: 0 success, 1 invalid input or data, 2 usage error,
        3 non-convergence
    """
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exit_request:
        code = exit_request.code
        return code if isinstance(code, int) else EXIT_USAGE

    configure_logging(args.verbose)

    if not check_environment():
        print("error: environment check failed", file=sys.stderr)
        return EXIT_ERROR

    try:
        return HANDLERS[args.command](args)
    except ConvergenceError as error:
        print(f"error: {error}", file=sys.stderr)
        return EXIT_NOT_CONVERGED
    except (BTGNError, ValueError) as error:
        print(f"error: {error}", file=sys.stderr)
        return EXIT_ERROR


__all__ = [
    'main',
    'build_parser',
    'EXIT_OK',
    'EXIT_ERROR',
    'EXIT_USAGE',
    'EXIT_NOT_CONVERGED'
]
