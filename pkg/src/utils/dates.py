""" Date parsing for fetch windows """

from datetime import date, datetime
from typing import Tuple, Union

from src.exceptions import DomainError

DATE_FORMAT = "%Y-%m-%d"


def parse_date(value: Union[str, date]) -> date:
    """
    Parse an explicit YYYY-MM-DD date.

    Args:
        value: Date string or an existing date

    Returns:
        Parsed date object

    Raises:
        DomainError: If the date cannot be parsed
    """
    if isinstance(value, datetime):
        return value.date()
    if isinstance(value, date):
        return value
    try:
        return datetime.strptime(str(value).strip(), DATE_FORMAT).date()
    except ValueError:
        raise DomainError(f"Invalid date format: '{value}' (expected YYYY-MM-DD)") from None


def parse_date_window(start: Union[str, date], end: Union[str, date]) -> Tuple[date, date]:
    """Parse an inclusive (start, end) window; start must not follow end."""
    start_date = parse_date(start)
    end_date = parse_date(end)
    if start_date > end_date:
        raise DomainError(f"start {start_date} is after end {end_date}")
    return start_date, end_date


def format_date(value: date) -> str:
    return value.strftime(DATE_FORMAT)
