""" Small helpers for scalar-or-array numerics """

import numpy as np


def as_float_array(value) -> np.ndarray:
    """Convert a scalar or sequence to a float64 ndarray (0-d for scalars)."""
    return np.asarray(value, dtype=np.float64)


def unwrap(result: np.ndarray):
    """Return a Python float for 0-d results, the array otherwise."""
    if result.ndim == 0:
        return float(result)
    return result
