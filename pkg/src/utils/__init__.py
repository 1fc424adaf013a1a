""" Utility functions for the BTGN toolkit """

from .io import (
    write_bytes_atomic,
    write_text_atomic,
    to_json_text,
    write_json,
    frame_to_csv_text,
    write_csv
)

from .dates import (
    DATE_FORMAT,
    parse_date,
    parse_date_window,
    format_date
)

__all__ = [
    'write_bytes_atomic',
    'write_text_atomic',
    'to_json_text',
    'write_json',
    'frame_to_csv_text',
    'write_csv',
    'DATE_FORMAT',
    'parse_date',
    'parse_date_window',
    'format_date'
]
