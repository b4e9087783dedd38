"""
Haystack Training Module

Adam with inverse-time decay, L1/L2/path-norm penalties, the minibatch loop
with validation early stopping, and split evaluation in both loss scales.
"""

from .optimizer import AdamState, adam_step
from .regularizers import RegKind, Regularizer, penalty, penalty_and_grad
from .trainer import (
    BatchKind, BatchPolicy, TrainConfig, EpochRecord, TrainResult,
    objective, train_step, evaluate, train,
)

__all__ = [
    'AdamState', 'adam_step',
    'RegKind', 'Regularizer', 'penalty', 'penalty_and_grad',
    'BatchKind', 'BatchPolicy', 'TrainConfig', 'EpochRecord', 'TrainResult',
    'objective', 'train_step', 'evaluate', 'train',
]
