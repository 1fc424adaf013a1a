""" Error function through the incomplete gamma: erf(x) = sign(x) P(1/2, x²) """

import numpy as np

from src.exceptions import DomainError
from src.specfun._arrays import as_float_array, unwrap
from src.specfun.gamma import _incomplete_gamma


def _half_gamma(x: np.ndarray):
    if not np.all(np.isfinite(x)):
        raise DomainError("erf needs finite input")
    p, q, _ = _incomplete_gamma(0.5, x * x)
    return p, q


def erf(x):
    """
    Error function.

    Args:
        x: Finite real (scalar or array)

    Returns:
        erf(x) in [-1, 1]
    """
    x = as_float_array(x)
    p, _ = _half_gamma(x)
    return unwrap(np.sign(x) * p)


def erfc(x):
    """Complementary error function 1 - erf(x), accurate in the upper tail."""
    x = as_float_array(x)
    p, q = _half_gamma(x)
    return unwrap(np.where(x >= 0.0, q, 1.0 + p))
