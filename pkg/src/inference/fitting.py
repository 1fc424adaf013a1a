"""
Maximum-likelihood fitting by multi-start Nelder-Mead.

Free parameters are searched in unconstrained coordinates (log for
positive parameters, identity for locations). The first start is the
robust moment-based guess; the remaining starts jitter it.
"""

import logging
from dataclasses import asdict, dataclass, field
from typing import Dict, List, Optional

import numpy as np
from scipy import optimize

from src.config import FIT_MAX_ITER, FIT_RESTARTS, FIT_TOL, DEFAULT_SEED
from src.exceptions import ConvergenceError, DomainError
from src.inference.likelihood import neg_log_likelihood, validate_data
from src.models import LOG, ModelContract

logger = logging.getLogger(__name__)

JITTER_LOG_SD = 0.3
JITTER_LOCATION = 0.5
SIMPLEX_STEP = 0.25


@dataclass(frozen=True)
class FitOptions:
    max_iter: int = FIT_MAX_ITER
    tol: float = FIT_TOL
    n_restarts: int = FIT_RESTARTS
    seed: int = DEFAULT_SEED

    def __post_init__(self):
        if self.max_iter < 1:
            raise DomainError("max_iter must be positive")
        if not self.tol > 0:
            raise DomainError("tol must be positive")
        if self.n_restarts < 1:
            raise DomainError("n_restarts must be at least 1")


@dataclass
class FitReport:
    model_name: str
    estimates: Dict[str, float]
    log_likelihood: float
    n_free_params: int
    n_obs: int
    converged: bool
    n_evaluations: int
    restarts_used: int
    initial_log_likelihood: float
    options: Dict[str, float] = field(default_factory=dict)
    message: str = ""

    @property
    def bic(self) -> float:
        from src.inference.comparison import bic
        return bic(self.log_likelihood, self.n_free_params, self.n_obs)

    def to_dict(self) -> dict:
        payload = asdict(self)
        payload["bic"] = self.bic if np.isfinite(self.log_likelihood) else None
        return payload


@dataclass
class _RestartOutcome:
    vector: np.ndarray
    value: float
    success: bool
    evaluations: int
    message: str


def _location_scale(start: Dict[str, float]) -> float:
    for name in ("sigma", "b"):
        if name in start:
            return start[name]
    return 1.0


def _starting_vectors(model: ModelContract, start: Dict[str, float], options: FitOptions) -> List[np.ndarray]:
    x0 = model.to_free_vector(start)
    rng = np.random.default_rng(options.seed)
    scale = _location_scale(start)
    starts = [x0]
    for _ in range(options.n_restarts - 1):
        jittered = x0.copy()
        for i, name in enumerate(model.free_params):
            if model.transforms[name] == LOG:
                jittered[i] += rng.normal(0.0, JITTER_LOG_SD)
            else:
                jittered[i] += JITTER_LOCATION * scale * rng.normal()
        starts.append(jittered)
    return starts


def _initial_simplex(model: ModelContract, x0: np.ndarray, scale: float) -> np.ndarray:
    simplex = np.tile(x0, (x0.size + 1, 1))
    for i, name in enumerate(model.free_params):
        step = SIMPLEX_STEP if model.transforms[name] == LOG else SIMPLEX_STEP * scale
        simplex[i + 1, i] += step
    return simplex


def mle_fit(model: ModelContract, data, options: Optional[FitOptions] = None) -> FitReport:
    """
    Fit a model by maximum likelihood.

    Args:
        model: Model contract to fit
        data: Finite observations; more of them than free parameters
        options: Iteration cap, simplex tolerance, restarts and seed

    Returns:
        FitReport for the best restart; converged is False when no restart
        met the tolerance (the report is never a fabricated optimum)
    """
    options = options or FitOptions()
    values = validate_data(data)
    k = model.n_free_params
    if values.size <= k:
        raise DomainError(f"{model.name}: need more than {k} observations, got {values.size}")

    start = model.complete(model.initial(values))
    initial_nll = neg_log_likelihood(model, start, values)
    scale = _location_scale(start)

    def objective(vector: np.ndarray) -> float:
        try:
            return neg_log_likelihood(model, model.from_free_vector(vector), values, warn=False)
        except (DomainError, ConvergenceError, FloatingPointError):
            return float("inf")

    outcomes: List[_RestartOutcome] = []
    for index, x0 in enumerate(_starting_vectors(model, start, options)):
        logger.debug("%s: restart %d from %s", model.name, index, model.from_free_vector(x0))
        with np.errstate(over="ignore", under="ignore"):
            result = optimize.minimize(
                objective,
                x0,
                method="Nelder-Mead",
                options={
                    "maxiter": options.max_iter,
                    "maxfev": options.max_iter * (k + 1),
                    "fatol": options.tol,
                    "xatol": np.inf,
                    "initial_simplex": _initial_simplex(model, x0, scale),
                },
            )
        success = bool(result.success) and bool(np.isfinite(result.fun))
        outcomes.append(
            _RestartOutcome(np.asarray(result.x), float(result.fun), success, int(result.nfev), str(result.message))
        )
        logger.debug("%s: restart %d -> nll=%.10g success=%s", model.name, index, result.fun, success)

    best_overall = min(outcomes, key=lambda o: o.value)
    converged_outcomes = [o for o in outcomes if o.success]
    best = min(converged_outcomes, key=lambda o: o.value) if converged_outcomes else best_overall
    message = best.message
    if best is not best_overall and best_overall.value < best.value:
        message += f"; an unconverged restart stopped lower at nll={best_overall.value:.10g}"

    if not np.isfinite(best.value) or best.value > initial_nll:
        # never report something worse than the starting point
        estimates = start
        log_likelihood = -initial_nll
        converged = False
        logger.warning("%s: no restart improved on the starting point", model.name)
    else:
        estimates = model.from_free_vector(best.vector)
        log_likelihood = -best.value
        converged = best.success
        if not converged:
            logger.warning("%s: no restart met the simplex tolerance %.3g", model.name, options.tol)

    return FitReport(
        model_name=model.name,
        estimates=estimates,
        log_likelihood=log_likelihood,
        n_free_params=k,
        n_obs=int(values.size),
        converged=converged,
        n_evaluations=sum(o.evaluations for o in outcomes),
        restarts_used=len(outcomes),
        initial_log_likelihood=-initial_nll,
        options=asdict(options),
        message=message,
    )
