"""
Mean squared error in the two reporting scales.

Scaled:   (1/n) * sum (pred_i - y_i)**2, the training loss on f = f~/d.
Original: d**2 times the scaled value, the loss on the unscaled target.
"""

from enum import Enum

import numpy as np

from haystack.exceptions import DimensionError, ParameterError


class LossScale(Enum):
    SCALED = 'scaled'
    ORIGINAL = 'original'


def mse(pred, y, scale, d):
    """
    Mean squared error.

    Args:
        pred: np.ndarray - Predictions, length n >= 1
        y: np.ndarray - Scaled targets, length n
        scale: LossScale - Reporting scale
        d: int - Input dimension (used by the Original scale)

    Returns:
        float: Loss value
    """
    pred = np.asarray(pred, dtype=np.float64)
    y = np.asarray(y, dtype=np.float64)
    if pred.shape != y.shape or pred.ndim != 1:
        raise DimensionError(f'pred {pred.shape} and y {y.shape} must be equal-length vectors')
    if pred.shape[0] == 0:
        raise ParameterError('mse of an empty batch')

    r = pred - y
    scaled = float(np.dot(r, r) / r.shape[0])
    if scale is LossScale.ORIGINAL:
        return to_original(scaled, d)
    return scaled


def to_original(scaled, d):
    """Convert a Scaled loss to the Original scale (one multiplication)."""
    return float(d * d) * scaled
