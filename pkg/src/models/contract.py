"""
Uniform model contract shared by every zoo model.

A contract names its parameters, says which are free and how each free
parameter is mapped to the unconstrained optimizer coordinate ("log" for
positive parameters, "identity" for locations), and carries vectorised
log-density, CDF, quantile and sampler callables keyed by a plain
parameter dict.
"""

from dataclasses import dataclass, field
from typing import Callable, Dict, Mapping, Tuple

import numpy as np

from src.exceptions import DomainError

Params = Dict[str, float]

LOG = "log"
IDENTITY = "identity"


@dataclass(frozen=True)
class ModelContract:
    name: str
    param_names: Tuple[str, ...]
    transforms: Mapping[str, str]
    log_pdf: Callable[[np.ndarray, Mapping[str, float]], np.ndarray]
    cdf: Callable[[np.ndarray, Mapping[str, float]], np.ndarray]
    sample: Callable[[int, Mapping[str, float], np.random.Generator], np.ndarray]
    quantile: Callable[[float, Mapping[str, float]], float]
    initial: Callable[[np.ndarray], Params]
    validate: Callable[[Mapping[str, float]], None]
    fixed: Mapping[str, float] = field(default_factory=dict)

    @property
    def free_params(self) -> Tuple[str, ...]:
        return tuple(name for name in self.param_names if name not in self.fixed)

    @property
    def n_free_params(self) -> int:
        return len(self.free_params)

    def complete(self, params: Mapping[str, float]) -> Params:
        """Merge fixed values into a parameter dict and validate it."""
        merged = {name: float(params[name]) for name in self.free_params if name in params}
        missing = [name for name in self.free_params if name not in merged]
        if missing:
            raise DomainError(f"{self.name}: missing parameters {', '.join(missing)}")
        for name, value in self.fixed.items():
            if name in params and float(params[name]) != value:
                raise DomainError(f"{self.name}: {name} is fixed at {value}")
            merged[name] = float(value)
        ordered = {name: merged[name] for name in self.param_names}
        self.validate(ordered)
        return ordered

    def to_free_vector(self, params: Mapping[str, float]) -> np.ndarray:
        """Map free parameters to unconstrained optimizer coordinates."""
        values = []
        for name in self.free_params:
            value = float(params[name])
            values.append(np.log(value) if self.transforms[name] == LOG else value)
        return np.array(values, dtype=np.float64)

    def from_free_vector(self, vector) -> Params:
        """Inverse of to_free_vector; fixed parameters are filled in."""
        vector = np.asarray(vector, dtype=np.float64)
        if vector.shape != (self.n_free_params,):
            raise DomainError(
                f"{self.name}: expected {self.n_free_params} free parameters, got {vector.shape}"
            )
        params = {}
        for name, value in zip(self.free_params, vector):
            params[name] = float(np.exp(value)) if self.transforms[name] == LOG else float(value)
        return self.complete(params)

    def pdf(self, x, params: Mapping[str, float]):
        return np.exp(np.asarray(self.log_pdf(x, params), dtype=np.float64))

    def log_likelihood(self, data, params: Mapping[str, float]) -> float:
        """Σ log f(x_i | params) over the data."""
        values = np.asarray(self.log_pdf(np.asarray(data, dtype=np.float64), params))
        return float(np.sum(values))

    def fit(self, data, options=None):
        """Maximum-likelihood fit; see src.inference.mle_fit."""
        from src.inference import mle_fit
        return mle_fit(self, data, options)
