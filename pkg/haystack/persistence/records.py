"""
CSV codecs for run records, training histories and datasets.

All floats are written with 17 significant digits so parsing an emitted
file reproduces the original values exactly.
"""

import csv
import math
from dataclasses import dataclass, fields

import numpy as np

from haystack.core.linalg import as_matrix
from haystack.dataset.generate import split_rows
from haystack.exceptions import DimensionError, ParameterError
from haystack.utils import format_float


RUN_COLUMNS = (
    'arch', 'target', 'd', 'n_total', 'seed', 'reg', 'lambda', 'batch_policy',
    'best_epoch',
    'train_mse_scaled', 'val_mse_scaled', 'test_mse_scaled',
    'train_mse_orig', 'val_mse_orig', 'test_mse_orig',
    'path_norm', 'wall_time_s',
)

HISTORY_COLUMNS = ('epoch', 'train_mse_scaled', 'val_mse_scaled', 'path_norm')


@dataclass(frozen=True, slots=True)
class RunRecord:
    """
    One training run: settings plus final losses in both scales.

    Tag columns (arch, target, reg, batch_policy) hold the CLI/config tags.
    """

    arch: str
    target: str
    d: int
    n_total: int
    seed: int
    reg: str
    lam: float
    batch_policy: str
    best_epoch: int
    train_mse_scaled: float
    val_mse_scaled: float
    test_mse_scaled: float
    train_mse_orig: float
    val_mse_orig: float
    test_mse_orig: float
    path_norm: float
    wall_time_s: float

    @property
    def sort_key(self):
        return (self.arch, self.d, self.n_total, self.seed)

    def to_row(self):
        """Values as CSV strings in RUN_COLUMNS order."""
        row = []
        for f in fields(self):
            value = getattr(self, f.name)
            if f.type is float:
                row.append(format_float(value))
            else:
                row.append(str(value))
        return row

    @classmethod
    def from_row(cls, row):
        """Parse a CSV row (dict keyed by RUN_COLUMNS)."""
        kwargs = {}
        for f in fields(cls):
            column = 'lambda' if f.name == 'lam' else f.name
            raw = row[column]
            kwargs[f.name] = f.type(raw)
        return cls(**kwargs)


def write_records(filepath, records, append=False):
    """
    Write run records as CSV.

    Args:
        filepath: str - Destination
        records: iterable of RunRecord
        append: bool - Append rows to an existing file (header written only
            when the file is new or empty)
    """
    mode = 'a' if append else 'w'
    with open(filepath, mode, newline='') as f:
        writer = csv.writer(f, lineterminator='\n')
        if not append or f.tell() == 0:
            writer.writerow(RUN_COLUMNS)
        for record in records:
            writer.writerow(record.to_row())


def read_records(filepath):
    """
    Read run records from CSV.

    Returns:
        list[RunRecord]
    """
    with open(filepath, newline='') as f:
        reader = csv.DictReader(f)
        missing = set(RUN_COLUMNS) - set(reader.fieldnames or ())
        if missing:
            raise ParameterError(f'{filepath} lacks columns: {", ".join(sorted(missing))}')
        return [RunRecord.from_row(row) for row in reader]


def write_history(filepath, result):
    """
    Write a training history as CSV.

    The path_norm column holds per-epoch values when they were recorded,
    otherwise only the last row carries the final path norm.

    Args:
        filepath: str - Destination
        result: TrainResult - Run with record_history enabled
    """
    with open(filepath, 'w', newline='') as f:
        writer = csv.writer(f, lineterminator='\n')
        writer.writerow(HISTORY_COLUMNS)
        last = len(result.history) - 1
        for i, rec in enumerate(result.history):
            if not math.isnan(rec.path_norm):
                pn = format_float(rec.path_norm)
            elif i == last:
                pn = format_float(result.final_path_norm)
            else:
                pn = ''
            writer.writerow([rec.epoch, format_float(rec.train_mse), format_float(rec.val_mse), pn])


def write_trajectories(filepath, series):
    """
    Write several named histories into one CSV with a 'series' column.

    Args:
        filepath: str - Destination
        series: list of (name, first_epoch, history) - first_epoch offsets the
            epoch column so resumed phases continue the numbering
    """
    with open(filepath, 'w', newline='') as f:
        writer = csv.writer(f, lineterminator='\n')
        writer.writerow(('series',) + HISTORY_COLUMNS)
        for name, offset, history in series:
            for rec in history:
                pn = '' if math.isnan(rec.path_norm) else format_float(rec.path_norm)
                writer.writerow([name, rec.epoch + offset, format_float(rec.train_mse),
                                 format_float(rec.val_mse), pn])


def write_dataset(filepath, dataset):
    """
    Export a dataset in generation order: header x0..x{d-1},y.

    Args:
        filepath: str - Destination
        dataset: SplitDataset
    """
    X, y = dataset.all_rows()
    with open(filepath, 'w', newline='') as f:
        writer = csv.writer(f, lineterminator='\n')
        writer.writerow([f'x{j}' for j in range(dataset.d)] + ['y'])
        for row, target in zip(X, y):
            writer.writerow([format_float(v) for v in row] + [format_float(target)])


def read_dataset(filepath, target, seed):
    """
    Import a dataset written by write_dataset() and re-split it.

    Args:
        filepath: str - Source
        target: TargetKind - Target family the rows were generated for
        seed: int - Generation seed to record

    Returns:
        SplitDataset
    """
    with open(filepath, newline='') as f:
        reader = csv.reader(f)
        header = next(reader)
        d = len(header) - 1
        if d < 1 or header[-1] != 'y':
            raise DimensionError(f'{filepath}: expected header x0..x{{d-1}},y')
        parsed = [[float(v) for v in row] for row in reader]
    if not parsed or any(len(row) != d + 1 for row in parsed):
        raise DimensionError(f'{filepath}: ragged or empty rows')
    rows = as_matrix(parsed)
    return split_rows(np.ascontiguousarray(rows[:, :d]), rows[:, d].copy(), d, target, seed)
