"""
Adam with bias-corrected moments and inverse-time learning-rate decay.

    t    <- t + 1
    lr_t  = lr / (1 + decay * t)
    m    <- beta1 * m + (1 - beta1) * g
    v    <- beta2 * v + (1 - beta2) * g**2
    theta <- theta - lr_t * m_hat / (sqrt(v_hat) + eps_hat)

with m_hat = m / (1 - beta1**t) and v_hat = v / (1 - beta2**t).
"""

import numpy as np

from haystack.core.constants import (
    ADAM_BETA1, ADAM_BETA2, ADAM_EPS, DEFAULT_DECAY, DEFAULT_LR,
)
from haystack.network.params import Params, PARAM_KEYS
from haystack.exceptions import DimensionError, ParameterError


class AdamState:
    """
    Moment accumulators and step counter of one optimization run.

    Single owner: adam_step() updates m, v and t in place.
    """

    __slots__ = ('m', 'v', 't', 'lr', 'beta1', 'beta2', 'eps_hat', 'decay')

    def __init__(self, params, lr=DEFAULT_LR, decay=DEFAULT_DECAY,
                 beta1=ADAM_BETA1, beta2=ADAM_BETA2, eps_hat=ADAM_EPS):
        """
        Args:
            params: Params - Parameters the state will optimize (shapes only)
            lr: float - Base learning rate
            decay: float - Inverse-time decay constant (>= 0)
            beta1, beta2: float - Moment decay rates in [0, 1)
            eps_hat: float - Denominator guard
        """
        if lr <= 0 or decay < 0:
            raise ParameterError(f'Adam needs lr > 0 and decay >= 0, got lr={lr} decay={decay}')
        self.m = Params.zeros(params.arch)
        self.v = Params.zeros(params.arch)
        self.t = 0
        self.lr = lr
        self.beta1 = beta1
        self.beta2 = beta2
        self.eps_hat = eps_hat
        self.decay = decay

    def current_lr(self):
        """Learning rate the next step will use."""
        return self.lr / (1.0 + self.decay * (self.t + 1))


def adam_step(state, params, grad):
    """
    One Adam update.

    Args:
        state: AdamState - Optimizer state (mutated)
        params: Params - Current parameters (unchanged)
        grad: Params - Gradient with the same layout

    Returns:
        tuple: (state, updated Params)
    """
    if grad.arch != params.arch or state.m.arch != params.arch:
        raise DimensionError('gradient, state and params layouts differ')

    state.t += 1
    t = state.t
    lr_t = state.lr / (1.0 + state.decay * t)
    b1, b2 = state.beta1, state.beta2
    c1 = 1.0 - b1 ** t
    c2 = 1.0 - b2 ** t

    updated = {}
    for key in PARAM_KEYS:
        g = grad.tensors[key]
        m = state.m.tensors[key]
        v = state.v.tensors[key]
        m *= b1
        m += (1.0 - b1) * g
        v *= b2
        v += (1.0 - b2) * np.square(g)
        updated[key] = params.tensors[key] - lr_t * (m / c1) / (np.sqrt(v / c2) + state.eps_hat)

    return state, Params.wrap(params.arch, updated)
