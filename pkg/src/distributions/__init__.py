"""
BTGN distribution family: symmetric core, location-scale form and two-piece skewing
"""

from .params import ShapeParams, LocScaleParams

from .btgn import (
    kernel,
    derivative_kernel,
    pdf,
    log_pdf,
    cdf,
    quantile,
    abs_moment,
    variance,
    excess_kurtosis,
    sample,
    lemma2_closed_form,
    tail_limit_check,
    locscale_pdf,
    locscale_log_pdf,
    locscale_cdf,
    locscale_quantile,
    locscale_sample,
    locscale_abs_moment,
    locscale_variance
)

from .twopiece import (
    SymmetricBase,
    TwoPieceParams,
    NORMAL_BASE,
    btgn_base,
    two_piece_log_pdf,
    two_piece_cdf,
    two_piece_quantile,
    two_piece_sample,
    tp_pdf,
    tp_log_pdf,
    tp_cdf,
    tp_quantile,
    tp_sample,
    tptan_params
)

__all__ = [
    'ShapeParams',
    'LocScaleParams',
    'kernel',
    'derivative_kernel',
    'pdf',
    'log_pdf',
    'cdf',
    'quantile',
    'abs_moment',
    'variance',
    'excess_kurtosis',
    'sample',
    'lemma2_closed_form',
    'tail_limit_check',
    'locscale_pdf',
    'locscale_log_pdf',
    'locscale_cdf',
    'locscale_quantile',
    'locscale_sample',
    'locscale_abs_moment',
    'locscale_variance',
    'SymmetricBase',
    'TwoPieceParams',
    'NORMAL_BASE',
    'btgn_base',
    'two_piece_log_pdf',
    'two_piece_cdf',
    'two_piece_quantile',
    'two_piece_sample',
    'tp_pdf',
    'tp_log_pdf',
    'tp_cdf',
    'tp_quantile',
    'tp_sample',
    'tptan_params'
]
