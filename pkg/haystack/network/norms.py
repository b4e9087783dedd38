"""
Path norm of the three-layer network and its (sub)gradient.

    P(theta) = (1/d) * sum_i sum_{j,k} |W1[j,i]| |W2[k,j]| |W3[k]|
             = (1/d) * |W3|^T |W2| |W1| 1

evaluated with two matrix-vector products. LCN/LOCAL networks are handled
on their blocks directly; the result equals the path norm of the embedded
dense network because off-block entries contribute zero paths.

sign(0) = 0 in every subgradient.
"""

import numpy as np

from haystack.network.params import ArchKind, Params


def path_norm(params):
    """
    Path norm of any layout.

    Args:
        params: Params - GLOBAL, LCN or LOCAL parameters

    Returns:
        float: Non-negative path norm
    """
    return path_norm_and_grad(params, with_grad=False)[0]


def path_norm_and_grad(params, with_grad=True):
    """
    Path norm and its gradient in the layout of params.

    Args:
        params: Params - Network parameters
        with_grad: bool - Skip the gradient when False

    Returns:
        tuple: (path norm float, gradient Params or None)
    """
    arch = params.arch
    t = params.tensors
    d = arch.d
    a1 = np.abs(t['w1'])
    a2 = np.abs(t['w2'])
    a3 = np.abs(t['w3'])

    if arch.kind is ArchKind.GLOBAL:
        u = a1.sum(axis=1)
        s = a2 @ u
        value = float(a3 @ s) / d
        if not with_grad:
            return value, None
        v = a2.T @ a3
        grads = {
            'w1': np.sign(t['w1']) * v[:, None] / d,
            'w2': np.sign(t['w2']) * np.outer(a3, u) / d,
            'w3': np.sign(t['w3']) * s / d,
        }
    elif arch.kind is ArchKind.LCN:
        s = np.einsum('dji,di->dj', a2, a1)
        value = float(np.einsum('dj,dj->', a3, s)) / d
        if not with_grad:
            return value, None
        v = np.einsum('dji,dj->di', a2, a3)
        grads = {
            'w1': np.sign(t['w1']) * v / d,
            'w2': np.sign(t['w2']) * np.einsum('dj,di->dji', a3, a1) / d,
            'w3': np.sign(t['w3']) * s / d,
        }
    else:
        # d identical blocks, each weighted 1/d
        s = a2 @ a1
        value = float(a3 @ s)
        if not with_grad:
            return value, None
        grads = {
            'w1': np.sign(t['w1']) * (a2.T @ a3),
            'w2': np.sign(t['w2']) * np.outer(a3, a1),
            'w3': np.sign(t['w3']) * s,
        }

    grads['b1'] = np.zeros_like(t['b1'])
    grads['b2'] = np.zeros_like(t['b2'])
    return value, Params(arch, grads)


def block_path_norm(w1, w2, w3):
    """
    Path norm of a single block (d = 1 network).

    Args:
        w1: np.ndarray - (alpha,) first-layer weights
        w2: np.ndarray - (alpha, alpha) second-layer weights
        w3: np.ndarray - (alpha,) output weights

    Returns:
        float
    """
    return float(np.abs(w3) @ (np.abs(w2) @ np.abs(w1)))
