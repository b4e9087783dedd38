"""
Pooled sparsity maps of first-layer weights.

Rows of |W1| are pooled in consecutive groups of `pool` and each group is
reduced to its maximum, giving a (ceil(rows / pool), d) map that shows the
block structure a well-trained dense network should approach.
"""

import numpy as np

from haystack.core.constants import DEFAULT_POOL, PGM_MAXVAL
from haystack.exceptions import DimensionError, ParameterError


def sparsity_map(W1, pool=DEFAULT_POOL):
    """
    Max-|W1| pooling over row groups.

    Args:
        W1: np.ndarray - (rows, d) first-layer weights
        pool: int - Rows per group (>= 1)

    Returns:
        np.ndarray: (ceil(rows / pool), d), entries >= 0
    """
    if pool < 1:
        raise ParameterError(f'pool must be >= 1, got {pool}')
    W1 = np.asarray(W1, dtype=np.float64)
    if W1.ndim != 2 or W1.shape[0] == 0:
        raise DimensionError(f'expected a non-empty 2-D weight matrix, got shape {W1.shape}')
    starts = np.arange(0, W1.shape[0], pool)
    return np.maximum.reduceat(np.abs(W1), starts, axis=0)


def to_levels(smap, maxval=PGM_MAXVAL):
    """
    Rescale a non-negative map linearly onto 0..maxval integers (max -> maxval).

    An all-zero map stays all zero.
    """
    smap = np.asarray(smap, dtype=np.float64)
    top = float(smap.max(initial=0.0))
    if top <= 0.0:
        return np.zeros(smap.shape, dtype=np.int64)
    return np.rint(smap / top * maxval).astype(np.int64)
