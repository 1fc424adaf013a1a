""" Negative log-likelihood evaluation """

import logging
from typing import Mapping

import numpy as np

from src.exceptions import DomainError
from src.models import ModelContract

logger = logging.getLogger(__name__)


def validate_data(data) -> np.ndarray:
    """Return data as a 1-D float array, rejecting empty or non-finite input."""
    values = np.asarray(data, dtype=np.float64).ravel()
    if values.size == 0:
        raise DomainError("data must not be empty")
    if not np.all(np.isfinite(values)):
        raise DomainError("data must be finite")
    return values


def neg_log_likelihood(model: ModelContract, params: Mapping[str, float], data, *, warn: bool = True) -> float:
    """
    Negative log-likelihood -Σ log f(x_i).

    Args:
        model: Model contract
        params: Full or free parameter dict (fixed values are merged in)
        data: Non-empty finite observations
        warn: Log the +inf case at WARNING (DEBUG when False, as inside
              an optimizer objective)

    Returns:
        The negative log-likelihood, or +inf when some point's log-density
        is not finite
    """
    values = validate_data(data)
    full = model.complete(params)
    log_density = np.asarray(model.log_pdf(values, full), dtype=np.float64)
    if not np.all(np.isfinite(log_density)):
        bad = int(np.count_nonzero(~np.isfinite(log_density)))
        log = logger.warning if warn else logger.debug
        log("%s: %d observation(s) have non-finite log-density at %s; likelihood is +inf", model.name, bad, full)
        return float("inf")
    return float(-np.sum(log_density))
