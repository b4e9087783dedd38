"""
Haystack Harness Module

Experiment grids, the sweep runner with its worker pool, and the
weight-transfer experiment.
"""

from .experiment import SweepCell, ExperimentSpec
from .pool import WorkerPool
from .sweep import run_cell, run_sweep
from .transfer import SERIES_NAMES, TransferResult, transfer_experiment

__all__ = [
    'SweepCell', 'ExperimentSpec',
    'WorkerPool',
    'run_cell', 'run_sweep',
    'SERIES_NAMES', 'TransferResult', 'transfer_experiment',
]
