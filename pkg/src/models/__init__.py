"""
Model zoo: every model fitted and compared through one contract
"""

from .contract import ModelContract, Params, LOG, IDENTITY

from .zoo import (
    EXTERNAL_COMPETITORS,
    MODEL_FACTORIES,
    MODEL_NAMES,
    get_model,
    robust_location_scale,
    normal_model,
    laplace_model,
    student_t_model,
    gn_model,
    btgn_model,
    tptan_model,
    tpbtgn_model,
    two_piece_normal_model
)

__all__ = [
    'ModelContract',
    'Params',
    'LOG',
    'IDENTITY',
    'EXTERNAL_COMPETITORS',
    'MODEL_FACTORIES',
    'MODEL_NAMES',
    'get_model',
    'robust_location_scale',
    'normal_model',
    'laplace_model',
    'student_t_model',
    'gn_model',
    'btgn_model',
    'tptan_model',
    'tpbtgn_model',
    'two_piece_normal_model'
]
