"""
Embedding of LCN/LOCAL parameters into the dense GLOBAL layout.

Hidden unit (i, c), coordinate i and channel c, maps to global index
i * alpha + c. W1 gets one populated column per coordinate, W2 is block
diagonal, and every off-block entry is exactly zero, so the embedded dense
network computes the same function as the block network.
"""

import numpy as np

from haystack.network.params import ArchKind, Params


def as_blocks(params):
    """
    Per-coordinate block arrays of an LCN or LOCAL network.

    LOCAL parameters are repeated d times, giving the LCN layout.

    Returns:
        dict: name -> array with a leading axis of length d
    """
    arch = params.arch
    if arch.kind is ArchKind.LCN:
        return dict(params.tensors)
    if arch.kind is ArchKind.LOCAL:
        d = arch.d
        return {k: np.repeat(v[None], d, axis=0) for k, v in params.tensors.items()}
    raise ValueError('as_blocks expects an LCN or LOCAL network')


def embed(params):
    """
    Dense GLOBAL parameters equivalent to an LCN or LOCAL network.

    Args:
        params: Params - LCN or LOCAL layout (GLOBAL is returned as a copy)

    Returns:
        Params: GLOBAL layout
    """
    arch = params.arch
    if arch.kind is ArchKind.GLOBAL:
        return params.copy()

    d, a = arch.d, arch.alpha
    width = d * a
    blocks = as_blocks(params)

    w1 = np.zeros((width, d))
    w1[np.arange(width), np.repeat(np.arange(d), a)] = blocks['w1'].reshape(-1)

    w2 = np.zeros((width, width))
    for i in range(d):
        s = slice(i * a, (i + 1) * a)
        w2[s, s] = blocks['w2'][i]

    return Params(arch.as_global(), {
        'w1': w1,
        'b1': blocks['b1'].reshape(-1),
        'w2': w2,
        'b2': blocks['b2'].reshape(-1),
        'w3': blocks['w3'].reshape(-1),
    })
