"""
Per-coordinate residual statistics of a local network.

For a shared block g(.; theta) approximating the component function, the
residual of coordinate i is z_i = g*(x_i) - g(x_i; theta). If the z_i are
mean zero and independent, the off-diagonal second moments E[z_i z_j]
vanish and the network error shrinks like 1/d.
"""

import numpy as np

from haystack.core.constants import INPUT_LOW, INPUT_HIGH
from haystack.dataset.targets import TargetKind
from haystack.network.model import forward_batch
from haystack.network.params import ArchKind
from haystack.exceptions import ParameterError


PROBE_CHUNK = 10000


def block_outputs(params, X):
    """
    Per-coordinate block outputs g(x_i; theta) before the 1/d average.

    Args:
        params: Params - LOCAL or LCN parameters
        X: np.ndarray - Inputs (B, d)

    Returns:
        np.ndarray: (B, d)
    """
    if params.arch.kind is ArchKind.GLOBAL:
        raise ParameterError('block outputs exist only for LOCAL and LCN networks')
    _, cache = forward_batch(params, X)
    w3 = params['w3']
    if params.arch.kind is ArchKind.LOCAL:
        return cache.h2 @ w3
    return np.einsum('bdj,dj->bd', cache.h2, w3)


def residual_correlation(params, n_probe, rng, target=TargetKind.SQUARE):
    """
    Empirical second-moment matrix C[i, j] = mean(z_i * z_j).

    Probes are drawn fresh and uniform on [-1, 1]^d (unsorted: the shared
    block is applied to each coordinate independently).

    Args:
        params: Params - LOCAL parameters
        n_probe: int - Probe count (>= 1)
        rng: Rng - Probe source
        target: TargetKind - Component function g*

    Returns:
        np.ndarray: (d, d) symmetric matrix
    """
    if params.arch.kind is not ArchKind.LOCAL:
        raise ParameterError('residual correlation is defined for the LOCAL architecture')
    if n_probe < 1:
        raise ParameterError(f'n_probe must be >= 1, got {n_probe}')

    d = params.arch.d
    acc = np.zeros((d, d))
    remaining = n_probe
    while remaining > 0:
        size = min(PROBE_CHUNK, remaining)
        X = rng.uniform(INPUT_LOW, INPUT_HIGH, (size, d))
        Z = target.component(X) - block_outputs(params, X)
        acc += Z.T @ Z
        remaining -= size
    return acc / n_probe


def residual_summary(C):
    """
    Summarize a residual second-moment matrix.

    Returns:
        dict: mean_diagonal, max_abs_offdiagonal, ratio (max off / mean diag)
    """
    C = np.asarray(C)
    d = C.shape[0]
    mean_diag = float(np.mean(np.diag(C)))
    if d > 1:
        off = np.abs(C[~np.eye(d, dtype=bool)])
        max_off = float(off.max())
    else:
        max_off = 0.0
    ratio = max_off / mean_diag if mean_diag > 0 else float('inf') if max_off > 0 else 0.0
    return {'mean_diagonal': mean_diag, 'max_abs_offdiagonal': max_off, 'ratio': ratio}
