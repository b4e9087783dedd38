"""
Haystack Network Module

The global, locally connected and local networks: parameter layouts,
Glorot initialization, forward pass, exact backpropagation, local-to-global
embedding, path norm and weight perturbation.

Usage:
    from haystack.network import Architecture, ArchKind, init_glorot, forward
    from haystack.core import Rng

    arch = Architecture(ArchKind.LOCAL, d=8, alpha=20)
    params = init_glorot(arch, Rng(0))
    out, cache = forward(params, sorted_x)
"""

from .params import (
    ArchKind, Architecture, Params,
    PARAM_KEYS, WEIGHT_KEYS, BIAS_KEYS,
)
from .model import (
    ForwardCache, init_glorot, glorot_limit, forward, forward_batch, predict,
    backward, backward_from_cache, loss_and_grad, perturb,
)
from .embed import embed, as_blocks
from .norms import path_norm, path_norm_and_grad, block_path_norm

__all__ = [
    'ArchKind', 'Architecture', 'Params',
    'PARAM_KEYS', 'WEIGHT_KEYS', 'BIAS_KEYS',
    'ForwardCache', 'init_glorot', 'glorot_limit', 'forward', 'forward_batch',
    'predict', 'backward', 'backward_from_cache', 'loss_and_grad', 'perturb',
    'embed', 'as_blocks',
    'path_norm', 'path_norm_and_grad', 'block_path_norm',
]
