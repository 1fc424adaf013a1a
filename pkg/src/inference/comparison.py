"""
BIC-approximated Bayes-factor model comparison.

Twice the log Bayes factor of a reference model over an alternative is
approximated by BIC(alt) - BIC(ref), and labelled on the Kass-Raftery
scale: [0, 2) negligible, [2, 6) positive, [6, 10) strong, [10, inf)
very strong.
"""

import logging
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass
from enum import Enum
from typing import List, Optional, Sequence

import numpy as np

from src.exceptions import DomainError
from src.inference.fitting import FitOptions, FitReport, mle_fit
from src.inference.likelihood import validate_data
from src.models import ModelContract

logger = logging.getLogger(__name__)

REFERENCE_MARKER = "H0"
BEST = "best"


class EvidenceCategory(Enum):
    NEGLIGIBLE = "Negligible"
    POSITIVE = "Positive"
    STRONG = "Strong"
    VERY_STRONG = "Very strong"


_BOUNDARIES = (
    (2.0, EvidenceCategory.NEGLIGIBLE),
    (6.0, EvidenceCategory.POSITIVE),
    (10.0, EvidenceCategory.STRONG),
)


def bic(log_likelihood: float, k: int, n: int) -> float:
    """
    Bayesian information criterion k ln n - 2 loglik.

    Raises:
        DomainError: If n < 1 or k < 1
    """
    if int(n) != n or n < 1:
        raise DomainError(f"n must be a positive count, got {n}")
    if int(k) != k or k < 1:
        raise DomainError(f"k must be a positive count, got {k}")
    return k * math.log(n) - 2.0 * log_likelihood


def two_ln_bf(bic_ref: float, bic_alt: float) -> float:
    """2 ln BF(reference over alternative) ≈ BIC(alt) - BIC(ref)."""
    return bic_alt - bic_ref


def evidence_category(value: float) -> EvidenceCategory:
    """
    Kass-Raftery category of a 2 ln BF value.

    Negative values are classified by magnitude; the sign says which model
    the evidence favours and is reported separately by comparison rows.
    """
    if math.isnan(value):
        raise DomainError("2 ln BF must not be NaN")
    magnitude = abs(value)
    for upper, category in _BOUNDARIES:
        if magnitude < upper:
            return category
    return EvidenceCategory.VERY_STRONG


@dataclass(frozen=True)
class ExternalRow:
    """A competitor fitted elsewhere, entered by its log-likelihood and parameter count."""

    model_name: str
    log_likelihood: float
    n_free_params: int

    @classmethod
    def parse(cls, spec: str) -> "ExternalRow":
        """Parse NAME:LOGLIK:K."""
        parts = spec.rsplit(":", 2)
        if len(parts) != 3 or not parts[0]:
            raise DomainError(f"external row must be NAME:LOGLIK:K, got '{spec}'")
        name, loglik, k = parts
        try:
            return cls(name, float(loglik), int(k))
        except ValueError:
            raise DomainError(f"external row must be NAME:LOGLIK:K, got '{spec}'") from None


@dataclass(frozen=True)
class ComparisonRow:
    model_name: str
    log_likelihood: float
    n_free_params: int
    bic: float
    two_ln_bf: float
    category: EvidenceCategory
    favours: str
    converged: bool
    is_reference: bool
    external: bool

    def to_dict(self) -> dict:
        payload = asdict(self)
        payload["category"] = self.category.value
        payload["marker"] = REFERENCE_MARKER if self.is_reference else ""
        return payload


@dataclass(frozen=True)
class ComparisonTable:
    reference_model: str
    n_obs: int
    rows: List[ComparisonRow]
    fits: List[FitReport]

    def row(self, name: str) -> ComparisonRow:
        for row in self.rows:
            if row.model_name == name:
                return row
        raise KeyError(name)

    def to_dict(self) -> dict:
        return {
            "reference_model": self.reference_model,
            "n_obs": self.n_obs,
            "rows": [row.to_dict() for row in self.rows],
            "fits": [fit.to_dict() for fit in self.fits],
        }


@dataclass(frozen=True)
class _Candidate:
    name: str
    log_likelihood: float
    k: int
    bic: float
    converged: bool
    external: bool


def _fit_all(models: Sequence[ModelContract], values: np.ndarray, options: FitOptions,
             max_workers: Optional[int]) -> List[FitReport]:
    if max_workers and max_workers > 1 and len(models) > 1:
        with ThreadPoolExecutor(max_workers=max_workers) as pool:
            return list(pool.map(lambda m: mle_fit(m, values, options), models))
    return [mle_fit(model, values, options) for model in models]


def compare_models(
    models: Sequence[ModelContract],
    data,
    reference: str = BEST,
    options: Optional[FitOptions] = None,
    external: Sequence[ExternalRow] = (),
    max_workers: Optional[int] = None,
) -> ComparisonTable:
    """
    Fit every model and tabulate BIC-based Bayes factors against a reference.

    Args:
        models: Zoo models to fit on the same data
        data: Observations
        reference: A model name, or "best" for the lowest-BIC converged model
        options: Fit options shared by every model
        external: Rows fitted elsewhere
        max_workers: Fit models in parallel threads when greater than 1

    Returns:
        ComparisonTable with rows sorted by 2 ln BF; non-converged fits stay
        in the table, flagged, and never serve as reference
    """
    values = validate_data(data)
    names = [m.name for m in models] + [row.model_name for row in external]
    if len(names) < 2:
        raise DomainError("comparison needs at least two models")
    if len(set(names)) != len(names):
        raise DomainError(f"model names must be unique, got {names}")

    options = options or FitOptions()
    n = int(values.size)
    fits = _fit_all(models, values, options, max_workers)

    candidates = []
    for fit in fits:
        finite = math.isfinite(fit.log_likelihood)
        candidates.append(_Candidate(
            name=fit.model_name,
            log_likelihood=fit.log_likelihood,
            k=fit.n_free_params,
            bic=bic(fit.log_likelihood, fit.n_free_params, n) if finite else math.inf,
            converged=fit.converged and finite,
            external=False,
        ))
    for row in external:
        candidates.append(_Candidate(
            name=row.model_name,
            log_likelihood=row.log_likelihood,
            k=row.n_free_params,
            bic=bic(row.log_likelihood, row.n_free_params, n),
            converged=True,
            external=True,
        ))

    eligible = [c for c in candidates if c.converged]
    if not eligible:
        raise DomainError("no model converged; there is no reference to compare against")
    if reference == BEST:
        ref = min(eligible, key=lambda c: (c.bic, c.name))
    else:
        matches = [c for c in candidates if c.name == reference]
        if not matches:
            raise DomainError(f"reference '{reference}' is not among the compared models")
        ref = matches[0]
        if not ref.converged:
            raise DomainError(f"reference '{reference}' did not converge")

    rows = []
    for c in candidates:
        value = 0.0 if c is ref else two_ln_bf(ref.bic, c.bic)
        if not c.converged:
            logger.warning("%s did not converge; its row is flagged", c.name)
        rows.append(ComparisonRow(
            model_name=c.name,
            log_likelihood=c.log_likelihood,
            n_free_params=c.k,
            bic=c.bic,
            two_ln_bf=value,
            category=evidence_category(value) if not math.isinf(value) else EvidenceCategory.VERY_STRONG,
            favours="reference" if value >= 0.0 else "alternative",
            converged=c.converged,
            is_reference=c is ref,
            external=c.external,
        ))
    rows.sort(key=lambda r: (r.two_ln_bf, r.model_name))
    fits_sorted = sorted(fits, key=lambda f: f.model_name)
    return ComparisonTable(reference_model=ref.name, n_obs=n, rows=rows, fits=fits_sorted)
