"""
Dense matrix primitives.

Matrices are numpy float64 arrays in C (row-major) order. These helpers
validate shapes at module boundaries and keep the arithmetic in 64-bit
floats; hot loops in the network layer call numpy directly.
"""

import numpy as np

from haystack.exceptions import DimensionError, ParameterError, SingularityError


def as_matrix(data, rows=None, cols=None):
    """
    Coerce data into a finite row-major float64 matrix.

    Args:
        data: array-like - 2-D data, or flat data when rows/cols are given
        rows: int - Optional row count for flat input
        cols: int - Optional column count for flat input

    Returns:
        np.ndarray: C-contiguous float64 array of shape (rows, cols)
    """
    m = np.ascontiguousarray(data, dtype=np.float64)
    if rows is not None and cols is not None:
        if m.size != rows * cols:
            raise DimensionError(f'{m.size} values cannot fill a {rows}x{cols} matrix')
        m = m.reshape(rows, cols)
    if m.ndim != 2:
        raise DimensionError(f'expected a 2-D matrix, got ndim={m.ndim}')
    if not np.all(np.isfinite(m)):
        raise ParameterError('matrix contains NaN or Inf')
    return m


def affine(W, x, b=None):
    """
    Compute W @ x + b.

    Args:
        W: np.ndarray - Matrix of shape (m, k)
        x: np.ndarray - Vector of length k
        b: np.ndarray - Optional vector of length m (zero when absent)

    Returns:
        np.ndarray: Vector of length m
    """
    W = np.asarray(W, dtype=np.float64)
    x = np.asarray(x, dtype=np.float64)
    if W.ndim != 2 or x.ndim != 1 or W.shape[1] != x.shape[0]:
        raise DimensionError(f'cannot apply {W.shape} matrix to vector of shape {x.shape}')
    y = W @ x
    if b is not None:
        b = np.asarray(b, dtype=np.float64)
        if b.shape != (W.shape[0],):
            raise DimensionError(f'bias shape {b.shape} does not match output ({W.shape[0]},)')
        y = y + b
    return y


def ols_fit(xs, ys):
    """
    Ordinary least-squares line through (xs, ys).

    Solves the 2x2 normal equations in centered form.

    Args:
        xs: array-like - Abscissae, n >= 2, not all equal
        ys: array-like - Ordinates, same length

    Returns:
        tuple: (slope, intercept) as floats
    """
    xs = np.asarray(xs, dtype=np.float64)
    ys = np.asarray(ys, dtype=np.float64)
    if xs.ndim != 1 or xs.shape != ys.shape:
        raise DimensionError(f'xs {xs.shape} and ys {ys.shape} must be equal-length vectors')
    if xs.shape[0] < 2:
        raise ParameterError(f'need at least 2 points, got {xs.shape[0]}')

    x_mean = xs.mean()
    y_mean = ys.mean()
    dx = xs - x_mean
    sxx = float(np.dot(dx, dx))
    if sxx == 0.0:
        raise SingularityError()

    slope = float(np.dot(dx, ys - y_mean)) / sxx
    intercept = float(y_mean - slope * x_mean)
    return slope, intercept
