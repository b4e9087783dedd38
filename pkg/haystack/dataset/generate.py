"""
Dataset generation and splitting.

Rows are drawn uniformly on [-1, 1]^d from a fixed seed, targets are
evaluated on the raw draw, then each row is sorted ascending. Because the
targets are permutation invariant the stored (sorted row, target) pairs are
consistent. Splits are contiguous 64/16/20 ranges in generation order.
"""

from dataclasses import dataclass
from enum import Enum

import numpy as np

from haystack.core.constants import (
    INPUT_LOW, INPUT_HIGH, MIN_TOTAL_SAMPLES,
    SPLIT_TRAIN_PCT, SPLIT_VAL_PCT,
)
from haystack.core.rng import Rng
from haystack.dataset.targets import TargetKind, scaled_target
from haystack.exceptions import ParameterError


class Split(Enum):
    TRAIN = 'train'
    VAL = 'val'
    TEST = 'test'


@dataclass(frozen=True, slots=True)
class SplitDataset:
    """
    Sorted inputs with scaled targets, partitioned into train/val/test.

    Attributes:
        d: int - Input dimension
        X_train, X_val, X_test: np.ndarray - (rows, d) sorted inputs
        y_train, y_val, y_test: np.ndarray - Scaled targets
        target: TargetKind - Component family
        seed: int - Generation seed
    """

    d: int
    X_train: np.ndarray
    y_train: np.ndarray
    X_val: np.ndarray
    y_val: np.ndarray
    X_test: np.ndarray
    y_test: np.ndarray
    target: TargetKind
    seed: int

    @property
    def n_train(self):
        return self.X_train.shape[0]

    @property
    def n_val(self):
        return self.X_val.shape[0]

    @property
    def n_test(self):
        return self.X_test.shape[0]

    @property
    def n_total(self):
        return self.n_train + self.n_val + self.n_test

    def split(self, which):
        """
        Get one split.

        Args:
            which: Split - TRAIN, VAL or TEST

        Returns:
            tuple: (X, y)
        """
        if which is Split.TRAIN:
            return self.X_train, self.y_train
        if which is Split.VAL:
            return self.X_val, self.y_val
        return self.X_test, self.y_test

    def all_rows(self):
        """All rows in generation order as (X, y)."""
        X = np.concatenate([self.X_train, self.X_val, self.X_test])
        y = np.concatenate([self.y_train, self.y_val, self.y_test])
        return X, y


def split_sizes(n_total):
    """
    Row counts of the three splits.

    Args:
        n_total: int - Total rows

    Returns:
        tuple: (n_train, n_val, n_test)
    """
    n_train = n_total * SPLIT_TRAIN_PCT // 100
    n_val = n_total * SPLIT_VAL_PCT // 100
    return n_train, n_val, n_total - n_train - n_val


def split_rows(X, y, d, target, seed):
    """Partition generation-ordered rows into a SplitDataset."""
    n_train, n_val, n_test = split_sizes(X.shape[0])
    if min(n_train, n_val, n_test) < 1:
        raise ParameterError(
            f'n_total={X.shape[0]} leaves an empty split ({n_train}/{n_val}/{n_test})')
    a, b = n_train, n_train + n_val
    return SplitDataset(
        d=d,
        X_train=X[:a], y_train=y[:a],
        X_val=X[a:b], y_val=y[a:b],
        X_test=X[b:], y_test=y[b:],
        target=target,
        seed=seed,
    )


def generate(d, n_total, target, seed):
    """
    Generate a sorted, split dataset for a separable target.

    Args:
        d: int - Input dimension (>= 1)
        n_total: int - Total rows (>= 10)
        target: TargetKind - Component family
        seed: int - Data seed

    Returns:
        SplitDataset
    """
    if d < 1:
        raise ParameterError(f'dimension must be >= 1, got {d}')
    if n_total < MIN_TOTAL_SAMPLES:
        raise ParameterError(f'n_total must be >= {MIN_TOTAL_SAMPLES}, got {n_total}')

    rng = Rng(seed)
    raw = rng.uniform(INPUT_LOW, INPUT_HIGH, (n_total, d))
    y = scaled_target(raw, target)
    X = np.sort(raw, axis=1)
    return split_rows(X, y, d, target, seed)
