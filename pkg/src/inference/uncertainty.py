""" Asymptotic standard errors and goodness-of-fit summaries """

import logging
from dataclasses import dataclass, field
from typing import Callable, Dict, Optional

import numpy as np
from scipy import stats

from src.exceptions import DomainError
from src.inference.fitting import FitReport
from src.inference.likelihood import neg_log_likelihood, validate_data
from src.models import LOG, ModelContract

logger = logging.getLogger(__name__)

HESSIAN_STEP = 1e-4


@dataclass(frozen=True)
class StandardErrors:
    values: Dict[str, float] = field(default_factory=dict)
    available: bool = True
    reason: Optional[str] = None

    def to_dict(self) -> dict:
        if not self.available:
            return {"available": False, "reason": self.reason}
        return {"available": True, **self.values}


def _steps(model: ModelContract, estimates: Dict[str, float]) -> np.ndarray:
    location_scale = estimates.get("sigma", estimates.get("b", 1.0))
    steps = []
    for name in model.free_params:
        scale = abs(estimates[name]) if model.transforms[name] == LOG else location_scale
        steps.append(HESSIAN_STEP * max(scale, 1e-8))
    return np.array(steps)


def numeric_hessian(f: Callable[[np.ndarray], float], theta: np.ndarray, steps: np.ndarray) -> np.ndarray:
    """Central-difference Hessian of f at theta."""
    k = theta.size
    hessian = np.empty((k, k))
    f0 = f(theta)
    for i in range(k):
        ei = np.zeros(k)
        ei[i] = steps[i]
        hessian[i, i] = (f(theta + ei) - 2.0 * f0 + f(theta - ei)) / steps[i] ** 2
        for j in range(i + 1, k):
            ej = np.zeros(k)
            ej[j] = steps[j]
            value = (
                f(theta + ei + ej) - f(theta + ei - ej) - f(theta - ei + ej) + f(theta - ei - ej)
            ) / (4.0 * steps[i] * steps[j])
            hessian[i, j] = hessian[j, i] = value
    return hessian


def standard_errors(model: ModelContract, fit: FitReport, data) -> StandardErrors:
    """
    Standard errors from the inverse numeric Hessian of the negative log-likelihood.

    Args:
        model: The fitted model
        fit: A converged FitReport for that model
        data: The data the model was fitted to

    Returns:
        StandardErrors; available is False (with a reason) when the Hessian
        is not positive definite
    """
    if not fit.converged:
        raise DomainError("standard errors need a converged fit")
    values = validate_data(data)
    names = model.free_params
    theta = np.array([fit.estimates[name] for name in names])

    def f(vector: np.ndarray) -> float:
        params = dict(fit.estimates)
        params.update(zip(names, (float(v) for v in vector)))
        try:
            return neg_log_likelihood(model, params, values, warn=False)
        except DomainError:
            return float("inf")

    hessian = numeric_hessian(f, theta, _steps(model, fit.estimates))
    if not np.all(np.isfinite(hessian)):
        return StandardErrors(available=False, reason="Hessian has non-finite entries")
    try:
        np.linalg.cholesky(hessian)
    except np.linalg.LinAlgError:
        logger.warning("%s: Hessian is not positive definite", model.name)
        return StandardErrors(available=False, reason="Hessian is not positive definite")
    covariance = np.linalg.inv(hessian)
    diagonal = np.clip(np.diag(covariance), 0.0, None)
    return StandardErrors(values={name: float(np.sqrt(v)) for name, v in zip(names, diagonal)})


def ks_statistic(data, cdf: Callable[[np.ndarray], np.ndarray]) -> Dict[str, float]:
    """Kolmogorov-Smirnov statistic and asymptotic p-value of data against a CDF."""
    values = validate_data(data)
    result = stats.kstest(values, lambda x: np.asarray(cdf(x), dtype=np.float64))
    return {"statistic": float(result.statistic), "pvalue": float(result.pvalue)}
