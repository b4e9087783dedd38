"""
Haystack Dataset Module

Separable targets, seeded generation with sort preprocessing,
64/16/20 splitting, and MSE in both reporting scales.
"""

from .targets import TargetKind, scaled_target
from .loss import LossScale, mse, to_original
from .generate import Split, SplitDataset, generate, split_sizes

__all__ = [
    'TargetKind', 'scaled_target',
    'LossScale', 'mse', 'to_original',
    'Split', 'SplitDataset', 'generate', 'split_sizes',
]
