"""
Gamma variates by the Marsaglia-Tsang squeeze method.

The generator state is a numpy Generator owned by the caller. Shapes below
one are boosted: draw with shape + 1 and multiply by U^(1/shape).
"""

import numpy as np

from src.exceptions import DomainError

_SQUEEZE = 0.0331


def _check_generator(rng) -> None:
    if not isinstance(rng, np.random.Generator):
        raise DomainError("rng must be a numpy.random.Generator")


def gamma_samples(shape: float, size: int, rng: np.random.Generator) -> np.ndarray:
    """
    Draw i.i.d. Gamma(shape, scale=1) variates.

    Args:
        shape: Positive shape parameter
        size: Number of variates
        rng: Seeded numpy Generator (single owner)

    Returns:
        Array of `size` variates
    """
    shape = float(shape)
    if not np.isfinite(shape) or shape <= 0.0:
        raise DomainError("gamma shape must be finite and positive")
    if size < 0:
        raise DomainError("size must be non-negative")
    _check_generator(rng)

    boost = shape < 1.0
    a = shape + 1.0 if boost else shape
    d = a - 1.0 / 3.0
    c = 1.0 / np.sqrt(9.0 * d)

    out = np.empty(size, dtype=np.float64)
    pending = np.arange(size)
    while pending.size:
        z = rng.standard_normal(pending.size)
        u = rng.random(pending.size)
        v = (1.0 + c * z) ** 3
        positive = v > 0.0
        safe_v = np.where(positive, v, 1.0)
        with np.errstate(divide="ignore"):
            log_u = np.log(u)
        squeeze = u < 1.0 - _SQUEEZE * z ** 4
        exact = log_u < 0.5 * z * z + d * (1.0 - safe_v + np.log(safe_v))
        accept = positive & (squeeze | exact)
        out[pending[accept]] = d * v[accept]
        pending = pending[~accept]

    if boost:
        out *= rng.random(size) ** (1.0 / shape)
    return out


def gamma_sample(shape: float, rng: np.random.Generator) -> float:
    """Draw one Gamma(shape, 1) variate."""
    return float(gamma_samples(shape, 1, rng)[0])
