__author__ = 'sciparallel developers'
__email__ = 'dev@sciparallel.org'
__version__ = '0.1.0'

from sciparallel.pipeline import (  # noqa
    Pipeline
)

from sciparallel.exceptions import *  # noqa
