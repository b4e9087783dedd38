"""
Haystack Analysis Module

Bound evaluators, power-law scaling fits, residual-independence statistics
of local networks, and pooled sparsity maps of first-layer weights.
"""

from .bounds import (
    BoundInputs, UP_TO_CONSTANT,
    aposteriori_gap, apriori_loss, apriori_pathnorm, leading_gap,
    lambda_threshold, sample_complexity, required_width,
    local_error_estimate, gamma_rate, evaluate_all,
)
from .scaling import XAxis, Aggregate, ScalingPoint, ScalingFit, aggregate_points, fit_scaling
from .residuals import block_outputs, residual_correlation, residual_summary
from .sparsity import sparsity_map, to_levels

__all__ = [
    'BoundInputs', 'UP_TO_CONSTANT',
    'aposteriori_gap', 'apriori_loss', 'apriori_pathnorm', 'leading_gap',
    'lambda_threshold', 'sample_complexity', 'required_width',
    'local_error_estimate', 'gamma_rate', 'evaluate_all',
    'XAxis', 'Aggregate', 'ScalingPoint', 'ScalingFit', 'aggregate_points', 'fit_scaling',
    'block_outputs', 'residual_correlation', 'residual_summary',
    'sparsity_map', 'to_levels',
]
