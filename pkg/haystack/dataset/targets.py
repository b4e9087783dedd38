"""
Separable target functions.

Each target is f(x) = (1/d) * sum_i g(x_i) for a scalar component g. The
network learns this scaled form; losses on the unscaled sum are recovered
with a d**2 factor (see dataset.loss).
"""

from enum import Enum

import numpy as np


class TargetKind(Enum):
    """Component function family of a separable target."""

    SQUARE = 'square'
    QUARTIC = 'quartic'
    COSINE = 'cosine'

    def component(self, x):
        """
        Evaluate g elementwise.

        Args:
            x: np.ndarray - Inputs of any shape

        Returns:
            np.ndarray: g(x), same shape
        """
        if self is TargetKind.SQUARE:
            return np.square(x)
        if self is TargetKind.QUARTIC:
            return np.power(x, 4)
        return np.cos(x)

    @classmethod
    def parse(cls, name):
        """Look up a target by its tag, case-insensitive."""
        if isinstance(name, cls):
            return name
        try:
            return cls(str(name).lower())
        except ValueError:
            valid = ', '.join(t.value for t in cls)
            raise ValueError(f'unknown target {name!r} (expected one of: {valid})') from None


def scaled_target(x, target):
    """
    Scaled separable target (1/d) * sum_i g(x_i).

    Args:
        x: np.ndarray - One input of shape (d,) or rows of shape (n, d)
        target: TargetKind - Component family

    Returns:
        float for a single input, np.ndarray of shape (n,) for rows
    """
    x = np.asarray(x, dtype=np.float64)
    d = x.shape[-1]
    # Summing in sorted order makes the value independent of coordinate order
    y = np.sort(target.component(x), axis=-1).sum(axis=-1) / d
    return float(y) if x.ndim == 1 else y
