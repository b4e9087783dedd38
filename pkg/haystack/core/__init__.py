"""
Haystack Core Module

Numerical primitives shared by every layer: constants, seeded random
streams, and dense matrix helpers.
"""

from .constants import (
    DEFAULT_ALPHA, DEFAULT_EPOCHS, DEFAULT_LR, FLOAT_FORMAT,
    INPUT_LOW, INPUT_HIGH,
)
from .rng import Rng, uniform, derive_seed
from .linalg import as_matrix, affine, ols_fit

__all__ = [
    'DEFAULT_ALPHA', 'DEFAULT_EPOCHS', 'DEFAULT_LR', 'FLOAT_FORMAT',
    'INPUT_LOW', 'INPUT_HIGH',
    'Rng', 'uniform', 'derive_seed',
    'as_matrix', 'affine', 'ols_fit',
]
