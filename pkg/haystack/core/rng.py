"""
Seeded random number generation.

All randomness in Haystack flows through Rng, a thin single-owner wrapper
around numpy's PCG64 bit generator. PCG64 output for a given seed is fixed
by numpy's stream-compatibility policy, so identical seeds reproduce
identical draws on every platform.

Independent streams (data generation, initialization, epoch shuffling,
perturbation, probing) are derived from a base seed plus integer keys
through numpy.random.SeedSequence, so one stream never shifts another.
"""

import numpy as np

from haystack.exceptions import ParameterError


# Stream keys for derive_seed()
STREAM_INIT = 0
STREAM_SHUFFLE = 1
STREAM_PERTURB = 2
STREAM_PROBE = 3


def derive_seed(seed, *keys):
    """
    Derive a 64-bit child seed from a base seed and integer keys.

    Args:
        seed: int - Base seed (non-negative)
        *keys: int - Stream identifiers

    Returns:
        int: Child seed in [0, 2**64)
    """
    entropy = [int(seed)] + [int(k) for k in keys]
    state = np.random.SeedSequence(entropy).generate_state(2, dtype=np.uint32)
    return int(state[0]) | (int(state[1]) << 32)


class Rng:
    """
    Seedable PRNG with a documented, fixed algorithm (PCG64).

    Not thread-safe: each thread or worker owns its own instance.
    """

    __slots__ = ('seed', '_gen')

    def __init__(self, seed):
        """
        Args:
            seed: int - 64-bit seed
        """
        if seed < 0:
            raise ParameterError(f'seed must be non-negative, got {seed}')
        self.seed = int(seed)
        self._gen = np.random.Generator(np.random.PCG64(self.seed))

    def child(self, *keys):
        """Return a fresh Rng on an independent stream derived from this seed."""
        return Rng(derive_seed(self.seed, *keys))

    def uniform(self, lo, hi, size):
        """
        Draw i.i.d. values in [lo, hi).

        Args:
            lo: float - Lower bound (inclusive)
            hi: float - Upper bound (exclusive), must exceed lo
            size: int or tuple - Output count or shape

        Returns:
            np.ndarray: float64 draws
        """
        if not lo < hi:
            raise ParameterError(f'uniform needs lo < hi, got lo={lo} hi={hi}')
        if isinstance(size, int) and size < 0:
            raise ParameterError(f'count must be non-negative, got {size}')
        u = self._gen.random(size)
        out = lo + (hi - lo) * u
        # lo + (hi - lo) * u can round up to hi for some (lo, hi)
        return np.where(out >= hi, np.nextafter(hi, lo), out)

    def permutation(self, n):
        """Return a random permutation of range(n)."""
        return self._gen.permutation(n)


def uniform(rng, lo, hi, count):
    """
    Draw count i.i.d. uniform values in [lo, hi), advancing rng.

    Args:
        rng: Rng - Generator to draw from
        lo: float - Lower bound
        hi: float - Upper bound
        count: int - Number of draws (>= 0)

    Returns:
        np.ndarray: Vector of length count
    """
    return rng.uniform(lo, hi, int(count))
