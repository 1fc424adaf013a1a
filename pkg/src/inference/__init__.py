"""
Maximum-likelihood fitting and Bayes-factor model comparison
"""

from .likelihood import neg_log_likelihood, validate_data
from .fitting import FitOptions, FitReport, mle_fit

from .comparison import (
    BEST,
    REFERENCE_MARKER,
    EvidenceCategory,
    ExternalRow,
    ComparisonRow,
    ComparisonTable,
    bic,
    two_ln_bf,
    evidence_category,
    compare_models
)

from .uncertainty import StandardErrors, standard_errors, numeric_hessian, ks_statistic

__all__ = [
    'neg_log_likelihood',
    'validate_data',
    'FitOptions',
    'FitReport',
    'mle_fit',
    'BEST',
    'REFERENCE_MARKER',
    'EvidenceCategory',
    'ExternalRow',
    'ComparisonRow',
    'ComparisonTable',
    'bic',
    'two_ln_bf',
    'evidence_category',
    'compare_models',
    'StandardErrors',
    'standard_errors',
    'numeric_hessian',
    'ks_statistic'
]
