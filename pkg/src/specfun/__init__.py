"""
Special functions underpinning every density, CDF, moment and sampler
"""

from .gamma import (
    MAX_ITER,
    log_gamma,
    reg_gamma_q,
    reg_gamma_p,
    log_reg_gamma_q,
    upper_gamma,
    log_upper_gamma,
    gamma_p_series,
    gamma_q_continued_fraction
)

from .errorfunc import erf, erfc
from .variates import gamma_sample, gamma_samples

__all__ = [
    'MAX_ITER',
    'log_gamma',
    'reg_gamma_q',
    'reg_gamma_p',
    'log_reg_gamma_q',
    'upper_gamma',
    'log_upper_gamma',
    'gamma_p_series',
    'gamma_q_continued_fraction',
    'erf',
    'erfc',
    'gamma_sample',
    'gamma_samples'
]
