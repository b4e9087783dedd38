"""
Network architectures and parameter containers.

Three layouts of the same two-hidden-layer ReLU network:

    GLOBAL  dense; W1 (d*a, d), b1 (d*a), W2 (d*a, d*a), b2 (d*a), W3 (d*a)
    LCN     d independent per-coordinate blocks, stacked on axis 0:
            w1 (d, a), b1 (d, a), w2 (d, a, a), b2 (d, a), w3 (d, a)
    LOCAL   one shared block: w1 (a), b1 (a), w2 (a, a), b2 (a), w3 (a)

where a is alpha, the channels per input coordinate. Block matrices map
layer-1 activations to layer-2 pre-activations as w2 @ h1. The output layer
carries no bias.
"""

from dataclasses import dataclass
from enum import Enum

import numpy as np

from haystack.core.constants import DEFAULT_ALPHA
from haystack.exceptions import DimensionError, ParameterError


PARAM_KEYS = ('w1', 'b1', 'w2', 'b2', 'w3')
WEIGHT_KEYS = ('w1', 'w2', 'w3')
BIAS_KEYS = ('b1', 'b2')


class ArchKind(Enum):
    GLOBAL = 'global'
    LCN = 'lcn'
    LOCAL = 'local'

    @classmethod
    def parse(cls, name):
        """Look up an architecture by tag; accepts the short names gn/lcn/ln."""
        if isinstance(name, cls):
            return name
        key = str(name).lower()
        key = {'gn': 'global', 'ln': 'local'}.get(key, key)
        try:
            return cls(key)
        except ValueError:
            raise ValueError(f'unknown architecture {name!r} (expected global, lcn or local)') from None


@dataclass(frozen=True, slots=True)
class Architecture:
    """
    Attributes:
        kind: ArchKind - Layout
        d: int - Input dimension
        alpha: int - Channels per input coordinate
    """

    kind: ArchKind
    d: int
    alpha: int = DEFAULT_ALPHA

    def __post_init__(self):
        if self.d < 1 or self.alpha < 1:
            raise ParameterError(f'architecture needs d >= 1 and alpha >= 1, got d={self.d} alpha={self.alpha}')

    @property
    def width(self):
        """Hidden width of the equivalent global network."""
        return self.d * self.alpha

    def as_global(self):
        """The dense architecture this one embeds into."""
        return Architecture(ArchKind.GLOBAL, self.d, self.alpha)

    def shapes(self):
        """
        Parameter shapes for this layout.

        Returns:
            dict: name -> shape tuple, in PARAM_KEYS order
        """
        d, a = self.d, self.alpha
        if self.kind is ArchKind.GLOBAL:
            w = d * a
            return {'w1': (w, d), 'b1': (w,), 'w2': (w, w), 'b2': (w,), 'w3': (w,)}
        if self.kind is ArchKind.LCN:
            return {'w1': (d, a), 'b1': (d, a), 'w2': (d, a, a), 'b2': (d, a), 'w3': (d, a)}
        return {'w1': (a,), 'b1': (a,), 'w2': (a, a), 'b2': (a,), 'w3': (a,)}


class Params:
    """
    Parameter set of one network (or a gradient / moment of the same shape).

    Arrays are float64 and owned by this object; operations that change
    values return new Params.
    """

    __slots__ = ('arch', 'tensors')

    def __init__(self, arch, tensors):
        """
        Args:
            arch: Architecture - Layout the tensors follow
            tensors: dict - name -> np.ndarray for every key in PARAM_KEYS
        """
        shapes = arch.shapes()
        checked = {}
        for key in PARAM_KEYS:
            if key not in tensors:
                raise DimensionError(f'missing parameter {key!r}')
            arr = np.array(tensors[key], dtype=np.float64)
            if arr.shape != shapes[key]:
                raise DimensionError(f'{key} has shape {arr.shape}, {arch.kind.value} layout needs {shapes[key]}')
            checked[key] = arr
        self.arch = arch
        self.tensors = checked

    @classmethod
    def wrap(cls, arch, tensors):
        """Adopt already-shaped float64 arrays without copying (hot paths)."""
        obj = cls.__new__(cls)
        obj.arch = arch
        obj.tensors = tensors
        return obj

    @classmethod
    def zeros(cls, arch):
        return cls(arch, {k: np.zeros(s) for k, s in arch.shapes().items()})

    def __getitem__(self, key):
        return self.tensors[key]

    def items(self):
        return ((k, self.tensors[k]) for k in PARAM_KEYS)

    def weights(self):
        """Weight arrays only (biases excluded)."""
        return ((k, self.tensors[k]) for k in WEIGHT_KEYS)

    def copy(self):
        return Params(self.arch, self.tensors)

    def map(self, fn):
        """New Params with fn applied to every array."""
        return Params(self.arch, {k: fn(v) for k, v in self.tensors.items()})

    def combine(self, other, fn):
        """New Params with fn(a, b) applied arraywise against other."""
        if other.arch != self.arch:
            raise DimensionError(f'cannot combine {self.arch} with {other.arch}')
        return Params(self.arch, {k: fn(v, other.tensors[k]) for k, v in self.tensors.items()})

    def size(self):
        """Total number of scalar parameters."""
        return sum(v.size for v in self.tensors.values())

    def is_finite(self):
        return all(np.all(np.isfinite(v)) for v in self.tensors.values())

    def max_abs_diff(self, other):
        """Largest entrywise |self - other|."""
        return max(float(np.max(np.abs(a - b), initial=0.0))
                   for a, b in zip(self.tensors.values(), other.tensors.values()))

    def equals(self, other):
        """Bit-exact equality of layout and every entry."""
        return (self.arch == other.arch
                and all(np.array_equal(self.tensors[k], other.tensors[k]) for k in PARAM_KEYS))

    def __repr__(self):
        return f'Params({self.arch.kind.value}, d={self.arch.d}, alpha={self.arch.alpha}, size={self.size()})'
