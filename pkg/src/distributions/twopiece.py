"""
Two-piece skewing of a symmetric base density.

The junction sits at mu. The left half is the base scaled by sigma/psi
and the right half by sigma*psi, both weighted by 2/(psi + 1/psi), so
psi > 1 stretches the right side and P(X > mu) = psi²/(1 + psi²).
"""

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np
from scipy import special

from src.distributions import btgn
from src.distributions.params import ShapeParams, require_finite, require_positive
from src.exceptions import DomainError
from src.specfun import erfc
from src.specfun._arrays import as_float_array, unwrap

_HALF_LOG_2PI = 0.5 * math.log(2.0 * math.pi)


@dataclass(frozen=True)
class SymmetricBase:
    """A standard density symmetric about 0 with its CDF, quantile and sampler."""

    name: str
    log_pdf: Callable[[np.ndarray], np.ndarray]
    cdf: Callable[[np.ndarray], np.ndarray]
    quantile: Callable[[float], float]
    sample: Callable[[int, np.random.Generator], np.ndarray]


@dataclass(frozen=True)
class TwoPieceParams:
    """Junction mu, scale sigma, body alpha, tail beta and skewness psi."""

    mu: float
    sigma: float
    alpha: float
    beta: float
    psi: float

    def __post_init__(self):
        require_finite("mu", self.mu)
        for name in ("sigma", "alpha", "beta", "psi"):
            require_positive(name, getattr(self, name))
        for name in ("mu", "sigma", "alpha", "beta", "psi"):
            object.__setattr__(self, name, float(getattr(self, name)))

    @property
    def shape(self) -> ShapeParams:
        return ShapeParams(self.alpha, self.beta)


def btgn_base(shape: ShapeParams) -> SymmetricBase:
    """Standard BTGN as a two-piece base."""
    return SymmetricBase(
        name="btgn",
        log_pdf=lambda z: btgn.log_pdf(z, shape),
        cdf=lambda z: btgn.cdf(z, shape),
        quantile=lambda q: btgn.quantile(q, shape),
        sample=lambda n, rng: btgn.sample(n, shape, rng),
    )


def _normal_log_pdf(z):
    z = as_float_array(z)
    return unwrap(-0.5 * z * z - _HALF_LOG_2PI)


def _normal_cdf(z):
    z = as_float_array(z)
    return unwrap(0.5 * as_float_array(erfc(-z / math.sqrt(2.0))))


NORMAL_BASE = SymmetricBase(
    name="normal",
    log_pdf=_normal_log_pdf,
    cdf=_normal_cdf,
    quantile=lambda q: float(special.ndtri(q)),
    sample=lambda n, rng: rng.standard_normal(n),
)


def _check_skew_scale(sigma: float, psi: float) -> None:
    require_positive("sigma", sigma)
    require_positive("psi", psi)


def two_piece_log_pdf(x, mu: float, sigma: float, psi: float, base: SymmetricBase):
    """Log-density of the two-piece construction over an arbitrary base."""
    _check_skew_scale(sigma, psi)
    z = as_float_array(x) - mu
    log_weight = math.log(2.0 / (psi + 1.0 / psi)) - math.log(sigma)
    # x == mu takes the left branch; both branches agree there
    scaled = np.where(z <= 0.0, z * psi / sigma, z / (sigma * psi))
    return unwrap(log_weight + as_float_array(base.log_pdf(scaled)))


def two_piece_cdf(x, mu: float, sigma: float, psi: float, base: SymmetricBase):
    _check_skew_scale(sigma, psi)
    z = as_float_array(x) - mu
    psi2 = psi * psi
    left = 2.0 / (1.0 + psi2) * as_float_array(base.cdf(np.minimum(z, 0.0) * psi / sigma))
    right_base = as_float_array(base.cdf(np.maximum(z, 0.0) / (sigma * psi)))
    right = 1.0 / (1.0 + psi2) + 2.0 * psi2 / (1.0 + psi2) * (right_base - 0.5)
    return unwrap(np.clip(np.where(z <= 0.0, left, right), 0.0, 1.0))


def _two_piece_quantile_scalar(q: float, mu: float, sigma: float, psi: float, base: SymmetricBase) -> float:
    if not 0.0 < q < 1.0:
        raise DomainError(f"quantile level must lie in (0, 1), got {q}")
    psi2 = psi * psi
    left_mass = 1.0 / (1.0 + psi2)
    if q <= left_mass:
        z = base.quantile(q * (1.0 + psi2) / 2.0)
        return mu + sigma * float(z) / psi
    z = base.quantile(0.5 + (q - left_mass) * (1.0 + psi2) / (2.0 * psi2))
    return mu + sigma * psi * float(z)


def two_piece_quantile(q, mu: float, sigma: float, psi: float, base: SymmetricBase):
    """Inverse CDF: select the side by its mass, then invert the base."""
    _check_skew_scale(sigma, psi)
    q = as_float_array(q)
    values = np.array(
        [_two_piece_quantile_scalar(float(level), mu, sigma, psi, base) for level in q.ravel()]
    )
    return unwrap(values.reshape(q.shape))


def two_piece_sample(n: int, mu: float, sigma: float, psi: float, base: SymmetricBase,
                     rng: np.random.Generator) -> np.ndarray:
    """Right side with probability psi²/(1+psi²), scaled |Z| on the chosen side."""
    _check_skew_scale(sigma, psi)
    if n < 0:
        raise DomainError("sample size must be non-negative")
    magnitude = np.abs(base.sample(n, rng))
    right = rng.random(n) < psi * psi / (1.0 + psi * psi)
    return mu + np.where(right, sigma * psi * magnitude, -(sigma / psi) * magnitude)


# TPBTGN


def tp_log_pdf(x, p: TwoPieceParams):
    return two_piece_log_pdf(x, p.mu, p.sigma, p.psi, btgn_base(p.shape))


def tp_pdf(x, p: TwoPieceParams):
    """
    Two-piece BTGN density.

    Args:
        x: Real argument(s)
        p: Two-piece parameters

    Returns:
        Density, continuous at mu and integrating to one
    """
    return unwrap(np.exp(as_float_array(tp_log_pdf(x, p))))


def tp_cdf(x, p: TwoPieceParams):
    """Two-piece BTGN CDF; equals 1/(1+psi²) at mu."""
    return two_piece_cdf(x, p.mu, p.sigma, p.psi, btgn_base(p.shape))


def tp_quantile(q, p: TwoPieceParams):
    return two_piece_quantile(q, p.mu, p.sigma, p.psi, btgn_base(p.shape))


def tp_sample(n: int, p: TwoPieceParams, rng: np.random.Generator) -> np.ndarray:
    return two_piece_sample(n, p.mu, p.sigma, p.psi, btgn_base(p.shape), rng)


def tptan_params(mu: float, sigma: float, beta: float, psi: float) -> TwoPieceParams:
    """Two-piece tail adjusted normal: the TPBTGN with a normal body (alpha = 2)."""
    return TwoPieceParams(mu=mu, sigma=sigma, alpha=2.0, beta=beta, psi=psi)
