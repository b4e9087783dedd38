"""
Minibatch training loop with early stopping at the validation minimum.

Each epoch shuffles the training rows with a stream derived from the
config seed, runs Adam on MSE_scaled + penalty over consecutive batches,
then evaluates the full validation split. The returned parameters are the
snapshot at the first epoch attaining the minimum validation loss.

Epochs are numbered 1..T. With T = 0 the initial parameters are returned
unchanged and best_epoch is 0.
"""

import logging
import math
from dataclasses import dataclass, field
from enum import Enum

import numpy as np

from haystack.core.constants import (
    DEFAULT_BATCH_DIVISOR, DEFAULT_BATCH_SIZE, DEFAULT_DECAY, DEFAULT_EPOCHS,
    DEFAULT_LOG_EVERY, DEFAULT_LR,
)
from haystack.core.rng import Rng, derive_seed, STREAM_INIT, STREAM_SHUFFLE
from haystack.dataset.generate import Split
from haystack.dataset.loss import LossScale, mse, to_original
from haystack.network.model import init_glorot, loss_and_grad, predict
from haystack.network.norms import path_norm
from haystack.network.params import Params
from haystack.training.optimizer import AdamState, adam_step
from haystack.training.regularizers import RegKind, Regularizer, penalty, penalty_and_grad
from haystack.exceptions import DimensionError, ParameterError
from haystack.utils import VERBOSE

logger = logging.getLogger(__name__)


class BatchKind(Enum):
    RATIO = 'ratio'
    FIXED = 'fixed'


@dataclass(frozen=True, slots=True)
class BatchPolicy:
    """
    How the minibatch size is chosen.

    RATIO: (n_train + n_val) // value, so every epoch has about value * 0.8 steps.
    FIXED: value rows per batch regardless of sample size.
    """

    kind: BatchKind = BatchKind.RATIO
    value: int = DEFAULT_BATCH_DIVISOR

    def __post_init__(self):
        if self.value < 1:
            raise ParameterError(f'batch policy value must be >= 1, got {self.value}')

    @classmethod
    def ratio(cls, divisor=DEFAULT_BATCH_DIVISOR):
        return cls(BatchKind.RATIO, divisor)

    @classmethod
    def fixed(cls, size=DEFAULT_BATCH_SIZE):
        return cls(BatchKind.FIXED, size)

    @classmethod
    def parse(cls, tag):
        """Parse the CSV tag form ('ratio100', 'fixed80')."""
        for kind in BatchKind:
            if tag.startswith(kind.value):
                return cls(kind, int(tag[len(kind.value):]))
        raise ParameterError(f'unknown batch policy {tag!r}')

    @property
    def tag(self):
        return f'{self.kind.value}{self.value}'

    def batch_size(self, n_train, n_val):
        """Batch size for the given split sizes (floor, at least 1)."""
        if self.kind is BatchKind.RATIO:
            return max(1, (n_train + n_val) // self.value)
        return self.value


@dataclass(frozen=True, slots=True)
class TrainConfig:
    """
    Everything needed for a deterministic training run.

    Attributes:
        epochs: int - Epoch budget T (0 returns the initial params)
        batch_policy: BatchPolicy - Minibatch sizing
        regularizer: Regularizer - Explicit penalty
        lr: float - Adam base learning rate
        decay: float - Inverse-time decay constant
        seed: int - Optimizer seed (init and shuffling streams)
        record_history: bool - Keep per-epoch train/val losses
        record_path_norm: bool - Also keep per-epoch path norm
        log_every: int - Epochs between progress lines (0 disables)
    """

    epochs: int = DEFAULT_EPOCHS
    batch_policy: BatchPolicy = field(default_factory=BatchPolicy)
    regularizer: Regularizer = field(default_factory=Regularizer)
    lr: float = DEFAULT_LR
    decay: float = DEFAULT_DECAY
    seed: int = 0
    record_history: bool = True
    record_path_norm: bool = False
    log_every: int = DEFAULT_LOG_EVERY

    def __post_init__(self):
        if self.epochs < 0:
            raise ParameterError(f'epochs must be >= 0, got {self.epochs}')


@dataclass(frozen=True, slots=True)
class EpochRecord:
    """One row of the training history (losses on the Scaled MSE)."""

    epoch: int
    train_mse: float
    val_mse: float
    objective: float
    path_norm: float = math.nan


@dataclass(frozen=True, slots=True)
class TrainResult:
    """
    Attributes:
        best_params: Params - Validation-optimal snapshot
        best_epoch: int - First epoch attaining the validation minimum (0 if T = 0)
        history: list[EpochRecord] - One row per epoch when recorded
        final_path_norm: float - Path norm of best_params
        initial_train_mse: float - Scaled train loss before the first step
        initial_val_mse: float - Scaled validation loss before the first step
        final_params: Params - Parameters after the last epoch
    """

    best_params: Params
    best_epoch: int
    history: list
    final_path_norm: float
    initial_train_mse: float
    initial_val_mse: float
    final_params: Params

    @property
    def best_val_mse(self):
        if self.best_epoch == 0 or not self.history:
            return self.initial_val_mse
        return self.history[self.best_epoch - 1].val_mse


def objective(params, X, y, reg):
    """
    The per-step training objective MSE_scaled(batch) + penalty.

    Args:
        params: Params - Network parameters
        X: np.ndarray - Batch inputs
        y: np.ndarray - Batch targets
        reg: Regularizer - Explicit penalty

    Returns:
        float
    """
    return mse(predict(params, X), y, LossScale.SCALED, params.arch.d) + penalty(params, reg)


def train_step(state, params, X, y, reg):
    """
    One optimizer step on a batch.

    Args:
        state: AdamState - Optimizer state (mutated)
        params: Params - Current parameters
        X: np.ndarray - Batch inputs
        y: np.ndarray - Batch targets
        reg: Regularizer - Explicit penalty

    Returns:
        tuple: (objective at params before the step, updated Params)
    """
    loss, grad = loss_and_grad(params, X, y)
    pen, pen_grad = penalty_and_grad(params, reg)
    total = grad if reg.kind is RegKind.NONE else grad.combine(pen_grad, np.add)
    _, params = adam_step(state, params, total)
    return loss + pen, params


def evaluate(params, dataset, split):
    """
    MSE of params on one split in both scales.

    Args:
        params: Params - Network parameters
        dataset: SplitDataset - Data
        split: Split - TRAIN, VAL or TEST

    Returns:
        tuple: (mse_scaled, mse_original)
    """
    X, y = dataset.split(split)
    scaled = mse(predict(params, X), y, LossScale.SCALED, dataset.d)
    return scaled, to_original(scaled, dataset.d)


def _scaled_loss(params, X, y):
    return mse(predict(params, X), y, LossScale.SCALED, params.arch.d)


def train(dataset, arch, config, init=None):
    """
    Train a network with minibatch Adam and validation early stopping.

    Args:
        dataset: SplitDataset - Data; dimension must match arch
        arch: Architecture - Layout to train
        config: TrainConfig - Run settings
        init: Params - Starting point (fresh Glorot init from config.seed when None)

    Returns:
        TrainResult
    """
    if dataset.d != arch.d:
        raise DimensionError(f'dataset dimension {dataset.d} does not match architecture d={arch.d}')
    if dataset.n_train < 1 or dataset.n_val < 1:
        raise ParameterError('training and validation splits must be non-empty')

    if init is None:
        params = init_glorot(arch, Rng(derive_seed(config.seed, STREAM_INIT)))
    else:
        if init.arch != arch:
            raise DimensionError(f'initial params are {init.arch}, expected {arch}')
        if not init.is_finite():
            raise ParameterError('initial params contain NaN or Inf')
        params = init.copy()

    X_train, y_train = dataset.split(Split.TRAIN)
    X_val, y_val = dataset.split(Split.VAL)
    n_train = dataset.n_train
    batch = config.batch_policy.batch_size(n_train, dataset.n_val)
    reg = config.regularizer

    initial_train = _scaled_loss(params, X_train, y_train)
    initial_val = _scaled_loss(params, X_val, y_val)

    shuffle_rng = Rng(derive_seed(config.seed, STREAM_SHUFFLE))
    state = AdamState(params, lr=config.lr, decay=config.decay)

    best_params = params
    best_epoch = 0
    best_val = math.inf
    history = []

    logger.log(VERBOSE, '[Train] %s d=%d alpha=%d n_train=%d batch=%d reg=%s epochs=%d',
               arch.kind.value, arch.d, arch.alpha, n_train, batch, reg.tag, config.epochs)

    for epoch in range(1, config.epochs + 1):
        order = shuffle_rng.permutation(n_train)
        last_objective = math.nan
        for start in range(0, n_train, batch):
            idx = order[start:start + batch]
            last_objective, params = train_step(state, params, X_train[idx], y_train[idx], reg)

        val = _scaled_loss(params, X_val, y_val)
        if val < best_val:
            best_val = val
            best_epoch = epoch
            best_params = params

        if config.record_history:
            history.append(EpochRecord(
                epoch=epoch,
                train_mse=_scaled_loss(params, X_train, y_train),
                val_mse=val,
                objective=last_objective,
                path_norm=path_norm(params) if config.record_path_norm else math.nan,
            ))

        if config.log_every and epoch % config.log_every == 0:
            logger.log(VERBOSE, '[Train] epoch %d/%d val=%.6g best=%.6g@%d',
                       epoch, config.epochs, val, best_val, best_epoch)

    if best_epoch == 0 and config.epochs > 0:
        # Validation loss never finite; fall back to the last iterate
        logger.warning('[Train] validation loss never improved on inf, keeping last epoch')
        best_params = params
        best_epoch = config.epochs

    return TrainResult(
        best_params=best_params,
        best_epoch=best_epoch,
        history=history,
        final_path_norm=path_norm(best_params),
        initial_train_mse=initial_train,
        initial_val_mse=initial_val,
        final_params=params,
    )
