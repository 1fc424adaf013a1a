""" Immutable parameter carriers for the BTGN family """

import math
import numbers
from dataclasses import dataclass

from src.exceptions import DomainError


def require_positive(name: str, value: float) -> None:
    if not (isinstance(value, numbers.Real) and math.isfinite(value) and value > 0):
        raise DomainError(f"{name} must be finite and positive, got {value!r}")


def require_finite(name: str, value: float) -> None:
    if not (isinstance(value, numbers.Real) and math.isfinite(value)):
        raise DomainError(f"{name} must be finite, got {value!r}")


@dataclass(frozen=True)
class ShapeParams:
    """Body shape alpha and tail shape beta of the standard BTGN."""

    alpha: float
    beta: float

    def __post_init__(self):
        require_positive("alpha", self.alpha)
        require_positive("beta", self.beta)
        object.__setattr__(self, "alpha", float(self.alpha))
        object.__setattr__(self, "beta", float(self.beta))

    @property
    def kernel_shape(self) -> float:
        """alpha / beta, the shape argument of the kernel Γ(α/β, ·)."""
        return self.alpha / self.beta

    @property
    def norm_shape(self) -> float:
        """(alpha + 1) / beta, the shape argument of the normalizer."""
        return (self.alpha + 1.0) / self.beta


@dataclass(frozen=True)
class LocScaleParams:
    """Location mu, scale sigma and shape of the location-scale BTGN."""

    mu: float
    sigma: float
    shape: ShapeParams

    def __post_init__(self):
        require_finite("mu", self.mu)
        require_positive("sigma", self.sigma)
        if not isinstance(self.shape, ShapeParams):
            raise DomainError("shape must be a ShapeParams instance")
        object.__setattr__(self, "mu", float(self.mu))
        object.__setattr__(self, "sigma", float(self.sigma))

    @classmethod
    def of(cls, mu: float, sigma: float, alpha: float, beta: float) -> "LocScaleParams":
        return cls(mu, sigma, ShapeParams(alpha, beta))
