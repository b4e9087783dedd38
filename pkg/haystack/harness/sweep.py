"""
Sweep runner.

Every (arch, d, n_total, seed) cell generates its dataset, trains, and
evaluates the validation-optimal snapshot on all three splits. Rows are
appended to the CSV as cells finish so an interrupted sweep keeps what it
has; with several workers the file is rewritten sorted by
(arch, d, n_total, seed) at the end. A single-worker sweep is
byte-reproducible apart from the wall-time column.
"""

import logging
import os
import time

from haystack.dataset.generate import Split, generate
from haystack.persistence.records import RunRecord, write_history, write_records
from haystack.training.trainer import evaluate, train
from haystack.harness.pool import WorkerPool
from haystack.exceptions import HaystackError, SweepCellError

logger = logging.getLogger(__name__)


def run_cell(cell):
    """
    Train and evaluate one sweep cell.

    Args:
        cell: SweepCell

    Returns:
        RunRecord
    """
    started = time.perf_counter()
    try:
        dataset = generate(cell.arch.d, cell.n_total, cell.target, cell.data_seed)
        result = train(dataset, cell.arch, cell.train)
        train_s, train_o = evaluate(result.best_params, dataset, Split.TRAIN)
        val_s, val_o = evaluate(result.best_params, dataset, Split.VAL)
        test_s, test_o = evaluate(result.best_params, dataset, Split.TEST)
        if cell.history_path is not None:
            write_history(cell.history_path, result)
    except (HaystackError, OSError, ArithmeticError, ValueError) as e:
        raise SweepCellError(cell.identity, str(e)) from e

    reg = cell.train.regularizer
    return RunRecord(
        arch=cell.arch.kind.value,
        target=cell.target.value,
        d=cell.arch.d,
        n_total=cell.n_total,
        seed=cell.seed,
        reg=reg.tag,
        lam=reg.lam,
        batch_policy=cell.train.batch_policy.tag,
        best_epoch=result.best_epoch,
        train_mse_scaled=train_s,
        val_mse_scaled=val_s,
        test_mse_scaled=test_s,
        train_mse_orig=train_o,
        val_mse_orig=val_o,
        test_mse_orig=test_o,
        path_norm=result.final_path_norm,
        wall_time_s=time.perf_counter() - started,
    )


def run_sweep(spec):
    """
    Run every cell of an experiment grid and write the result CSV.

    Args:
        spec: ExperimentSpec

    Returns:
        list[RunRecord] sorted by (arch, d, n_total, seed)
    """
    cells = spec.cells()
    identities = {(c.arch.kind.value, c.arch.d, c.n_total, c.seed): c for c in cells}
    logger.info('[Sweep] %d cells, %d worker(s), writing %s', len(cells), spec.workers, spec.output)

    # Start from an empty file holding only the header
    try:
        write_records(spec.output, [])
    except OSError as e:
        raise SweepCellError(cells[0].identity, f'cannot create {spec.output}: {e.strerror}') from None

    records = []
    with WorkerPool(spec.workers) as pool:
        for record in pool.run(run_cell, cells):
            try:
                write_records(spec.output, [record], append=True)
            except OSError as e:
                raise SweepCellError(identities[record.sort_key].identity,
                                     f'cannot append to {spec.output}: {e.strerror}') from None
            records.append(record)
            logger.info('[Sweep] %d/%d %s d=%d n_total=%d seed=%d best_epoch=%d test_orig=%.6g (%.1fs)',
                        len(records), len(cells), record.arch, record.d, record.n_total, record.seed,
                        record.best_epoch, record.test_mse_orig, record.wall_time_s)

    records.sort(key=lambda r: r.sort_key)
    if pool.parallel:
        tmp = spec.output + '.tmp'
        write_records(tmp, records)
        os.replace(tmp, spec.output)
        logger.debug('[Sweep] Rewrote %s in cell order', spec.output)
    return records
