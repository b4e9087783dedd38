"""
Persistence module for Haystack.

Binary weight snapshots with CRC32 validation, CSV codecs for run records,
training histories and datasets, and sparsity-map export.

Typical Usage:
    from haystack.persistence import save_params, load_params

    save_params(result.best_params, 'local_d8.hswt')
    params = load_params('local_d8.hswt')
"""

from .weights import encode_params, decode_params, save_params, load_params
from .records import (
    RUN_COLUMNS, HISTORY_COLUMNS, RunRecord,
    write_records, read_records, write_history, write_trajectories,
    write_dataset, read_dataset,
)
from .images import write_map, write_map_csv, write_pgm

__all__ = [
    'encode_params', 'decode_params', 'save_params', 'load_params',
    'RUN_COLUMNS', 'HISTORY_COLUMNS', 'RunRecord',
    'write_records', 'read_records', 'write_history', 'write_trajectories',
    'write_dataset', 'read_dataset',
    'write_map', 'write_map_csv', 'write_pgm',
]
