"""
Scaled-down reproductions of the headline experiments.

Each test trains real networks for minutes; run with `pytest -m slow`.
Tolerances are wide since the grids are far smaller than the originals.
"""

import statistics

import pytest

from haystack.analysis import XAxis, fit_scaling, residual_correlation, residual_summary
from haystack.core.constants import TRANSFER_DECAY
from haystack.core.rng import Rng
from haystack.dataset import Split, TargetKind, generate
from haystack.harness import ExperimentSpec, run_sweep, transfer_experiment
from haystack.network import ArchKind, Architecture
from haystack.training import BatchPolicy, RegKind, Regularizer, TrainConfig, evaluate, train

pytestmark = pytest.mark.slow

D_GRID = (4, 8, 16, 32)


def _sweep(path, **settings):
    spec = ExperimentSpec(output=str(path), alpha=20, seeds_per_cell=4, **settings)
    return run_sweep(spec)


@pytest.fixture(scope='module')
def dimension_sweeps(tmp_path_factory):
    root = tmp_path_factory.mktemp('dims')
    base = dict(archs=(ArchKind.GLOBAL,), d_list=D_GRID, n_total_list=(20000,))
    implicit = _sweep(root / 'none.csv', train=TrainConfig(epochs=300, record_history=False), **base)
    explicit = _sweep(root / 'path.csv', train=TrainConfig(
        epochs=300, record_history=False, regularizer=Regularizer(RegKind.PATH, 1e-5)), **base)
    return implicit, explicit


def test_local_network_beats_global(tmp_path):
    # Without decay the global network sits at the lr 0.01 noise floor, where train
    # and validation loss track each other for the whole epoch budget
    config = TrainConfig(epochs=300, decay=TRANSFER_DECAY, record_history=False)
    records = _sweep(tmp_path / 'gap.csv', archs=(ArchKind.GLOBAL, ArchKind.LOCAL), d_list=(16,),
                     n_total_list=(20000,), train=config)

    def median(arch, fn):
        return statistics.median(fn(r) for r in records if r.arch == arch)

    gn_test = median('global', lambda r: r.test_mse_orig)
    ln_test = median('local', lambda r: r.test_mse_orig)
    assert ln_test <= gn_test / 10
    assert median('global', lambda r: r.test_mse_orig / r.train_mse_orig) >= 3
    assert median('local', lambda r: r.test_mse_orig / r.train_mse_orig) <= 1.5


def test_implicit_dimension_slope(dimension_sweeps):
    implicit, _ = dimension_sweeps
    fit = fit_scaling(implicit, XAxis.DIMENSION, 'test_mse_orig')
    assert 2.5 <= fit.slope <= 4.5


def test_path_norm_growth_with_and_without_penalty(dimension_sweeps):
    implicit, explicit = dimension_sweeps
    assert fit_scaling(implicit, XAxis.DIMENSION, 'path_norm').slope >= 0.5
    assert fit_scaling(explicit, XAxis.DIMENSION, 'path_norm').slope <= 0.3


def test_sample_count_slope(tmp_path):
    records = _sweep(tmp_path / 'samples.csv', archs=(ArchKind.GLOBAL,), d_list=(16,),
                     n_total_list=(1000, 3000, 10000, 30000),
                     train=TrainConfig(epochs=300, record_history=False, batch_policy=BatchPolicy.ratio()))
    fit = fit_scaling(records, XAxis.SAMPLES, 'test_mse_orig', min_gap_ratio=2.0)
    assert 0.5 <= -fit.slope <= 1.1


def test_transfer_loaded_beats_scratch():
    config = TrainConfig(epochs=300, decay=TRANSFER_DECAY, seed=0)
    result = transfer_experiment(8, 1000, config, alpha=20)
    assert result.handoff_gap <= 1e-10
    assert len(result.global_loaded.history) == 300
    assert result.test_mse_orig['global_loaded'] <= result.test_mse_orig['global_scratch']


def test_trained_local_residuals_are_uncorrelated():
    data = generate(8, 20000, TargetKind.SQUARE, seed=0)
    arch = Architecture(ArchKind.LOCAL, 8, 20)
    result = train(data, arch, TrainConfig(epochs=300, decay=TRANSFER_DECAY, record_history=False))
    train_mse, _ = evaluate(result.best_params, data, Split.TRAIN)
    assert train_mse <= 1e-5

    summary = residual_summary(residual_correlation(result.best_params, 100000, Rng(1)))
    assert summary['max_abs_offdiagonal'] <= 5 * summary['mean_diagonal']
