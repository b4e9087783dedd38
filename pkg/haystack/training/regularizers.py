"""
Explicit regularizers: L1 and L2 on the weight matrices, and the path norm.

Biases are never penalized. Subgradients use sign(0) = 0. For LCN/LOCAL
networks the penalties act on the stored block parameters; the path norm
of the blocks equals that of the embedded dense network.
"""

from dataclasses import dataclass
from enum import Enum

import numpy as np

from haystack.core.constants import DEFAULT_LAMBDA
from haystack.network.params import Params, WEIGHT_KEYS
from haystack.network.norms import path_norm_and_grad
from haystack.exceptions import ParameterError


class RegKind(Enum):
    NONE = 'none'
    L1 = 'l1'
    L2 = 'l2'
    PATH = 'path'


@dataclass(frozen=True, slots=True)
class Regularizer:
    """
    Attributes:
        kind: RegKind - Penalty family
        lam: float - Penalty constant (0 for NONE)
    """

    kind: RegKind = RegKind.NONE
    lam: float = 0.0

    def __post_init__(self):
        if self.lam < 0:
            raise ParameterError(f'penalty constant must be >= 0, got {self.lam}')
        if self.kind is RegKind.NONE and self.lam != 0:
            raise ParameterError('NONE regularizer carries no penalty constant')

    @classmethod
    def parse(cls, tag, lam=None):
        """
        Build from a tag ('none', 'l1', 'l2', 'path').

        Args:
            tag: str - Regularizer tag
            lam: float - Penalty constant; the tuned default when None
        """
        try:
            kind = RegKind(str(tag).lower())
        except ValueError:
            raise ParameterError(f'unknown regularizer {tag!r} (expected none, l1, l2 or path)') from None
        if kind is RegKind.NONE:
            return cls()
        return cls(kind, DEFAULT_LAMBDA[kind.value] if lam is None else float(lam))

    @property
    def tag(self):
        return self.kind.value


def penalty_and_grad(params, reg):
    """
    Penalty value and its gradient.

    Args:
        params: Params - Network parameters
        reg: Regularizer - Penalty to evaluate

    Returns:
        tuple: (penalty float, gradient Params)
    """
    lam = reg.lam
    if reg.kind is RegKind.NONE:
        return 0.0, Params.zeros(params.arch)

    if reg.kind is RegKind.PATH:
        value, grad = path_norm_and_grad(params)
        return lam * value, grad.map(lambda g: lam * g)

    grads = {k: np.zeros_like(v) for k, v in params.items()}
    total = 0.0
    for key, w in params.weights():
        if reg.kind is RegKind.L1:
            total += float(np.abs(w).sum())
            grads[key] = lam * np.sign(w)
        else:
            total += float(np.square(w).sum())
            grads[key] = 2.0 * lam * w
    return lam * total, Params.wrap(params.arch, grads)


def penalty(params, reg):
    """Penalty value only."""
    return penalty_and_grad(params, reg)[0]
