""" Gaussian kernel density estimation on a fixed grid """

import math
from typing import Optional

import numpy as np
import pandas as pd
from scipy import stats

from src.datapipe.series import Series
from src.exceptions import DomainError


def _values(data) -> np.ndarray:
    values = data.values if isinstance(data, Series) else np.asarray(data, dtype=np.float64).ravel()
    if values.size < 2:
        raise DomainError("KDE needs at least two observations")
    if not np.all(np.isfinite(values)):
        raise DomainError("KDE data must be finite")
    if float(np.std(values, ddof=1)) == 0.0:
        raise DomainError("KDE data has zero variance")
    return values


def silverman_bandwidth(data) -> float:
    """0.9 · min(sd, IQR/1.34) · n^(-1/5); IQR is ignored when it is zero."""
    values = _values(data)
    sd = float(np.std(values, ddof=1))
    q75, q25 = np.percentile(values, [75.0, 25.0])
    spread = min(sd, (q75 - q25) / 1.34) if q75 > q25 else sd
    return 0.9 * spread * values.size ** (-0.2)


def kde(data, grid, bandwidth: Optional[float] = None) -> pd.DataFrame:
    """
    Gaussian-kernel density estimate.

    Args:
        data: Series or array of at least two finite, not all equal, observations
        grid: Finite evaluation points
        bandwidth: Kernel standard deviation; Silverman's rule when omitted

    Returns:
        DataFrame with columns x and density
    """
    values = _values(data)
    grid = np.asarray(grid, dtype=np.float64).ravel()
    if not np.all(np.isfinite(grid)):
        raise DomainError("KDE grid must be finite")
    if bandwidth is None:
        bandwidth = silverman_bandwidth(values)
    elif not (math.isfinite(bandwidth) and bandwidth > 0.0):
        raise DomainError(f"bandwidth must be positive, got {bandwidth}")

    # gaussian_kde scales its factor by the sample sd
    estimator = stats.gaussian_kde(values, bw_method=bandwidth / float(np.std(values, ddof=1)))
    return pd.DataFrame({"x": grid, "density": estimator(grid)})
