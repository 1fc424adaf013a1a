"""
Observation series: finite values, an optional strictly increasing time
index, and a label. Serialises to a one- or two-column CSV.
"""

import logging
from dataclasses import dataclass
from pathlib import Path
from typing import Optional, Union

import numpy as np
import pandas as pd

from src.exceptions import DataError, DomainError
from src.utils.io import write_csv

logger = logging.getLogger(__name__)

TIMESTAMP_COLUMN = "timestamp"


@dataclass(frozen=True, eq=False)
class Series:
    values: np.ndarray
    label: str = "value"
    timestamps: Optional[pd.DatetimeIndex] = None

    def __post_init__(self):
        values = np.asarray(self.values, dtype=np.float64).ravel()
        if values.size == 0:
            raise DomainError("series must not be empty")
        bad = np.flatnonzero(~np.isfinite(values))
        if bad.size:
            raise DomainError(f"series values must be finite; first bad index is {bad[0]}")
        values.setflags(write=False)
        object.__setattr__(self, "values", values)

        if self.timestamps is not None:
            stamps = pd.DatetimeIndex(self.timestamps)
            if len(stamps) != values.size:
                raise DomainError(
                    f"{len(stamps)} timestamps for {values.size} values"
                )
            if len(stamps) > 1 and not (stamps[1:] > stamps[:-1]).all():
                raise DomainError("timestamps must be strictly increasing")
            object.__setattr__(self, "timestamps", stamps)

    def __len__(self) -> int:
        return int(self.values.size)

    def to_frame(self) -> pd.DataFrame:
        columns = {}
        if self.timestamps is not None:
            columns[TIMESTAMP_COLUMN] = [stamp.isoformat() for stamp in self.timestamps]
        columns[self.label] = self.values
        return pd.DataFrame(columns)

    def to_csv(self, path: Union[str, Path]) -> Path:
        """Write the series (timestamp column first when present) atomically."""
        return write_csv(path, self.to_frame())


def read_series_csv(path: Union[str, Path]) -> Series:
    """
    Read a CSV written by Series.to_csv.

    The value column is the last column; a leading "timestamp" column,
    when present, becomes the time index.
    """
    path = Path(path)
    if not path.is_file():
        raise DataError(f"series file not found: {path}")
    try:
        frame = pd.read_csv(path)
    except (pd.errors.ParserError, pd.errors.EmptyDataError, UnicodeDecodeError) as error:
        raise DataError(f"cannot parse series file {path}: {error}") from error

    if frame.shape[1] == 0 or frame.empty:
        raise DataError(f"series file {path} has no observations")
    label = str(frame.columns[-1])
    timestamps = None
    if frame.shape[1] > 1 and frame.columns[0] == TIMESTAMP_COLUMN:
        timestamps = pd.DatetimeIndex(pd.to_datetime(frame[TIMESTAMP_COLUMN], utc=True))
    try:
        return Series(frame[label].to_numpy(dtype=np.float64), label=label, timestamps=timestamps)
    except (DomainError, ValueError) as error:
        raise DataError(f"series file {path}: {error}") from error


def log_returns(prices: Series) -> Series:
    """
    Log returns r_t = ln(p_t / p_{t-1}).

    Args:
        prices: Strictly positive price series of length at least 2

    Returns:
        Series one shorter than the input; timestamps move to the later point

    Raises:
        DomainError: For a non-positive price (its index is named) or a
            series shorter than 2
    """
    values = prices.values
    if values.size < 2:
        raise DomainError("log returns need at least two prices")
    bad = np.flatnonzero(values <= 0.0)
    if bad.size:
        raise DomainError(f"price at index {bad[0]} is not positive ({values[bad[0]]})")
    returns = np.diff(np.log(values))
    stamps = prices.timestamps[1:] if prices.timestamps is not None else None
    return Series(returns, label=f"logret_{prices.label}", timestamps=stamps)


def cumulative_prices(returns: Series, start: float = 1.0) -> Series:
    """Inverse of log_returns: prices start·exp(cumsum(r)), with `start` prepended."""
    if not (np.isfinite(start) and start > 0.0):
        raise DomainError("start price must be positive")
    values = start * np.exp(np.concatenate(([0.0], np.cumsum(returns.values))))
    return Series(values, label="price")
