__version__ = "1.0.0"

from . import config
from . import exceptions
from . import specfun
from . import distributions
from . import models
from . import inference
from . import datapipe
from . import utils

__all__ = [
    'config',
    'exceptions',
    'specfun',
    'distributions',
    'models',
    'inference',
    'datapipe',
    'utils'
]
