""" CSV column ingestion """

import logging
from pathlib import Path
from typing import Union

import numpy as np
import pandas as pd

from src.datapipe.series import Series
from src.exceptions import DataError

logger = logging.getLogger(__name__)


def _select_column(frame: pd.DataFrame, column: Union[str, int], has_header: bool, path: Path) -> pd.Series:
    if isinstance(column, str) and column in frame.columns:
        return frame[column]
    index = None
    if isinstance(column, int):
        index = column
    elif isinstance(column, str) and column.lstrip("-").isdigit():
        index = int(column)
    if index is not None and -frame.shape[1] <= index < frame.shape[1]:
        return frame.iloc[:, index]
    available = ", ".join(str(name) for name in frame.columns) if has_header else f"0..{frame.shape[1] - 1}"
    raise DataError(f"column '{column}' not found in {path} (available: {available})")


def read_csv_column(
    path: Union[str, Path],
    column: Union[str, int] = 0,
    has_header: bool = True,
    delimiter: str = ",",
    skip_invalid: bool = False,
) -> Series:
    """
    Read one numeric column of a CSV file into a Series.

    Args:
        path: CSV file (UTF-8)
        column: Header name or zero-based index
        has_header: Whether the first line is a header row
        delimiter: Field delimiter
        skip_invalid: Drop unparsable rows with a warning instead of failing

    Returns:
        Series labelled with the column name

    Raises:
        DataError: Missing file or column, unparsable rows (with line
            numbers) when skip_invalid is False, or no usable rows
    """
    path = Path(path)
    if not path.is_file():
        raise DataError(f"data file not found: {path}")
    try:
        frame = pd.read_csv(
            path,
            sep=delimiter,
            header=0 if has_header else None,
            dtype=str,
            keep_default_na=False,
            skip_blank_lines=False,
            encoding="utf-8",
        )
    except pd.errors.EmptyDataError:
        raise DataError(f"data file {path} is empty") from None
    except (pd.errors.ParserError, UnicodeDecodeError) as error:
        raise DataError(f"cannot parse {path}: {error}") from error

    raw = _select_column(frame, column, has_header, path)
    blank = frame.apply(lambda col: col.fillna("").str.strip() == "").all(axis=1).to_numpy()
    parsed = pd.to_numeric(raw.str.strip(), errors="coerce").to_numpy(dtype=np.float64)
    invalid = ~np.isfinite(parsed) & ~blank
    first_line = 2 if has_header else 1
    if invalid.any():
        lines = (np.flatnonzero(invalid) + first_line).tolist()
        shown = ", ".join(str(line) for line in lines[:10])
        more = f" and {len(lines) - 10} more" if len(lines) > 10 else ""
        if not skip_invalid:
            raise DataError(f"{path}: non-numeric value in column '{raw.name}' at line(s) {shown}{more}")
        logger.warning("%s: skipped %d invalid row(s) at line(s) %s%s", path, len(lines), shown, more)

    values = parsed[~invalid & ~blank]
    if values.size == 0:
        raise DataError(f"{path}: column '{raw.name}' has no numeric values")
    label = str(raw.name) if has_header else f"column{raw.name}"
    return Series(values, label=label)
