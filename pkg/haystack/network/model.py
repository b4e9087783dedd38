"""
Forward pass, exact backpropagation, initialization and perturbation.

All three layouts compute out = (1/d) * (last layer) so the network learns
the scaled target directly. Batched evaluation is the primitive; the single
input forward() is a thin wrapper.

ReLU derivative at exactly 0 is taken as 0.
"""

import math

import numpy as np

from haystack.network.params import ArchKind, Params, PARAM_KEYS
from haystack.exceptions import DimensionError, ParameterError


class ForwardCache:
    """
    Pre-activations and activations of one batched forward pass.

    Shapes are (B, width) for GLOBAL and (B, d, alpha) for LCN/LOCAL.
    backward() consumes these without re-running the forward pass.
    """

    __slots__ = ('X', 'z1', 'h1', 'z2', 'h2')

    def __init__(self, X, z1, h1, z2, h2):
        self.X = X
        self.z1 = z1
        self.h1 = h1
        self.z2 = z2
        self.h2 = h2

    def min_kink_distance(self):
        """Smallest |pre-activation| in the batch (distance to a ReLU kink)."""
        return float(min(np.min(np.abs(self.z1)), np.min(np.abs(self.z2))))


def _check_batch(arch, X):
    X = np.asarray(X, dtype=np.float64)
    if X.ndim != 2 or X.shape[1] != arch.d:
        raise DimensionError(f'batch of shape {X.shape} does not match input dimension {arch.d}')
    return X


def glorot_limit(fan_in, fan_out):
    """Glorot uniform half-width sqrt(6 / (fan_in + fan_out))."""
    return math.sqrt(6.0 / (fan_in + fan_out))


def layer_fans(arch):
    """
    (fan_in, fan_out) per weight layer.

    GLOBAL uses the dense fans; LCN/LOCAL use per-block fans.
    """
    if arch.kind is ArchKind.GLOBAL:
        w = arch.width
        return {'w1': (arch.d, w), 'w2': (w, w), 'w3': (w, 1)}
    a = arch.alpha
    return {'w1': (1, a), 'w2': (a, a), 'w3': (a, 1)}


def init_glorot(arch, rng):
    """
    Glorot-uniform weights, zero biases.

    Args:
        arch: Architecture - Layout to initialize
        rng: Rng - Draw source (advanced)

    Returns:
        Params
    """
    shapes = arch.shapes()
    fans = layer_fans(arch)
    tensors = {}
    for key in PARAM_KEYS:
        if key in fans:
            limit = glorot_limit(*fans[key])
            tensors[key] = rng.uniform(-limit, limit, shapes[key])
        else:
            tensors[key] = np.zeros(shapes[key])
    return Params(arch, tensors)


def forward_batch(params, X):
    """
    Batched forward pass.

    Args:
        params: Params - Network parameters
        X: np.ndarray - Inputs of shape (B, d)

    Returns:
        tuple: (out of shape (B,), ForwardCache)
    """
    arch = params.arch
    X = _check_batch(arch, X)
    t = params.tensors
    d = arch.d

    if arch.kind is ArchKind.GLOBAL:
        z1 = X @ t['w1'].T + t['b1']
        h1 = np.maximum(z1, 0.0)
        z2 = h1 @ t['w2'].T + t['b2']
        h2 = np.maximum(z2, 0.0)
        out = (h2 @ t['w3']) / d
    elif arch.kind is ArchKind.LCN:
        z1 = X[:, :, None] * t['w1'] + t['b1']
        h1 = np.maximum(z1, 0.0)
        z2 = np.einsum('bdi,dji->bdj', h1, t['w2']) + t['b2']
        h2 = np.maximum(z2, 0.0)
        out = np.einsum('bdj,dj->b', h2, t['w3']) / d
    else:
        z1 = X[:, :, None] * t['w1'] + t['b1']
        h1 = np.maximum(z1, 0.0)
        z2 = np.einsum('bdi,ji->bdj', h1, t['w2']) + t['b2']
        h2 = np.maximum(z2, 0.0)
        # Sorted reduction keeps the output exactly invariant under input permutation
        g = np.einsum('bdj,j->bd', h2, t['w3'])
        out = np.sort(g, axis=1).sum(axis=1) / d

    return out, ForwardCache(X, z1, h1, z2, h2)


def forward(params, x):
    """
    Forward pass for one input.

    Args:
        params: Params - Network parameters
        x: np.ndarray - Input of length d (sorted by pipeline contract)

    Returns:
        tuple: (output float, ForwardCache for a batch of one)
    """
    x = np.asarray(x, dtype=np.float64)
    if x.ndim != 1:
        raise DimensionError(f'expected a vector input, got shape {x.shape}')
    out, cache = forward_batch(params, x[None, :])
    return float(out[0]), cache


def predict(params, X):
    """Batched outputs without keeping the cache."""
    return forward_batch(params, X)[0]


def backward_from_cache(params, cache, residual):
    """
    Gradient of the batch MSE given a forward cache.

    Args:
        params: Params - Parameters the cache was computed with
        cache: ForwardCache - Result of forward_batch
        residual: np.ndarray - pred - y, shape (B,)

    Returns:
        Params: Gradient with the layout of params
    """
    arch = params.arch
    t = params.tensors
    n = residual.shape[0]
    d = arch.d
    # d(MSE)/d(out) = (2/n)(pred - y); out carries the 1/d factor
    delta = (2.0 / n) * residual / d

    if arch.kind is ArchKind.GLOBAL:
        g_w3 = cache.h2.T @ delta
        dz2 = np.outer(delta, t['w3']) * (cache.z2 > 0)
        g_w2 = dz2.T @ cache.h1
        g_b2 = dz2.sum(axis=0)
        dz1 = (dz2 @ t['w2']) * (cache.z1 > 0)
        g_w1 = dz1.T @ cache.X
        g_b1 = dz1.sum(axis=0)
    elif arch.kind is ArchKind.LCN:
        g_w3 = np.einsum('b,bdj->dj', delta, cache.h2)
        dz2 = delta[:, None, None] * t['w3'][None] * (cache.z2 > 0)
        g_w2 = np.einsum('bdj,bdi->dji', dz2, cache.h1)
        g_b2 = dz2.sum(axis=0)
        dz1 = np.einsum('bdj,dji->bdi', dz2, t['w2']) * (cache.z1 > 0)
        g_w1 = np.einsum('bdi,bd->di', dz1, cache.X)
        g_b1 = dz1.sum(axis=0)
    else:
        # Shared block: gradients accumulate over the d applications
        g_w3 = np.einsum('b,bdj->j', delta, cache.h2)
        dz2 = delta[:, None, None] * t['w3'] * (cache.z2 > 0)
        g_w2 = np.einsum('bdj,bdi->ji', dz2, cache.h1)
        g_b2 = dz2.sum(axis=(0, 1))
        dz1 = (dz2 @ t['w2']) * (cache.z1 > 0)
        g_w1 = np.einsum('bdi,bd->i', dz1, cache.X)
        g_b1 = dz1.sum(axis=(0, 1))

    return Params.wrap(arch, {'w1': g_w1, 'b1': g_b1, 'w2': g_w2, 'b2': g_b2, 'w3': g_w3})


def loss_and_grad(params, X, y):
    """
    Scaled batch MSE and its gradient from a single forward pass.

    Args:
        params: Params - Network parameters
        X: np.ndarray - Batch inputs (B, d), B >= 1
        y: np.ndarray - Scaled targets (B,)

    Returns:
        tuple: (mse float, gradient Params)
    """
    y = np.asarray(y, dtype=np.float64)
    if y.ndim != 1 or y.shape[0] != np.shape(X)[0]:
        raise DimensionError(f'targets {y.shape} do not match batch {np.shape(X)}')
    if y.shape[0] == 0:
        raise ParameterError('empty batch')
    out, cache = forward_batch(params, X)
    residual = out - y
    loss = float(np.dot(residual, residual) / residual.shape[0])
    return loss, backward_from_cache(params, cache, residual)


def backward(params, X, y):
    """
    Gradient of the Scaled batch MSE with respect to every parameter.

    Args:
        params: Params - Network parameters
        X: np.ndarray - Batch inputs (B, d)
        y: np.ndarray - Scaled targets (B,)

    Returns:
        Params: Gradient structure
    """
    return loss_and_grad(params, X, y)[1]


def perturb(params, eps, rng):
    """
    Add eps * U[-1, 1] noise to every entry (weights and biases).

    Args:
        params: Params - Source parameters (unchanged)
        eps: float - Perturbation magnitude (>= 0)
        rng: Rng - Noise source

    Returns:
        Params
    """
    if eps < 0:
        raise ParameterError(f'eps must be >= 0, got {eps}')
    if eps == 0:
        return params.copy()
    return params.map(lambda v: v + eps * rng.uniform(-1.0, 1.0, v.shape))
