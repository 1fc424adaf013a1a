"""
BTGN toolkit - Main Entry Point
Runs one CLI subcommand: eval, fit, compare, sample, fetch or plotdata
"""
import sys

from src.cli import main


if __name__ == "__main__":
    sys.exit(main())
