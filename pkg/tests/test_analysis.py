"""
Tests for haystack/analysis: scaling fits, sparsity maps and residual
second moments.
"""

import math

import numpy as np
import pytest

from haystack.analysis import (
    Aggregate, XAxis, aggregate_points, block_outputs, fit_scaling, residual_correlation,
    residual_summary, sparsity_map, to_levels,
)
from haystack.core.rng import Rng
from haystack.network import ArchKind, Architecture, Params, init_glorot, predict
from haystack.persistence import RunRecord
from haystack.exceptions import InsufficientDataError, ParameterError


def make_record(d=4, n_total=1000, seed=0, test=1.0, train=None, arch='global', reg='none'):
    train = test if train is None else train
    return RunRecord(
        arch=arch, target='square', d=d, n_total=n_total, seed=seed, reg=reg, lam=0.0,
        batch_policy='ratio100', best_epoch=1,
        train_mse_scaled=train, val_mse_scaled=test, test_mse_scaled=test,
        train_mse_orig=d * d * train, val_mse_orig=d * d * test, test_mse_orig=d * d * test,
        path_norm=1.0, wall_time_s=0.0,
    )


def test_fit_exact_power_law_dimension():
    records = [make_record(d=d, seed=s, test=7.0 * d ** 3) for d in (4, 8, 16, 32) for s in range(4)]
    fit = fit_scaling(records, XAxis.DIMENSION, 'test_mse_scaled')
    assert fit.slope == pytest.approx(3.0, abs=1e-12)
    assert fit.intercept == pytest.approx(math.log(7.0), abs=1e-12)
    assert [p.count for p in fit.points] == [4, 4, 4, 4]


def test_fit_exact_power_law_samples():
    records = [make_record(n_total=n, test=0.5 / n) for n in (1000, 3000, 10000)]
    fit = fit_scaling(records, XAxis.SAMPLES, 'test_mse_scaled')
    assert fit.slope == pytest.approx(-1.0, abs=1e-12)


def test_geometric_aggregation_preserves_power_law():
    single = [make_record(d=d, test=d ** 2.0) for d in (4, 8, 16)]
    paired = ([make_record(d=d, seed=0, test=3.0 * d ** 2.0) for d in (4, 8, 16)]
              + [make_record(d=d, seed=1, test=0.25 * d ** 2.0) for d in (4, 8, 16)])
    a = fit_scaling(single, XAxis.DIMENSION, 'test_mse_scaled')
    b = fit_scaling(paired, XAxis.DIMENSION, 'test_mse_scaled')
    assert b.slope == pytest.approx(a.slope, abs=1e-12)


def test_uniform_loss_scaling_shifts_only_intercept():
    records = [make_record(d=d, seed=s, test=(1 + s) * d ** 1.5 + d) for d in (4, 8, 16) for s in range(2)]
    scaled = [make_record(d=r.d, seed=r.seed, test=10.0 * r.test_mse_scaled) for r in records]
    a = fit_scaling(records, XAxis.DIMENSION, 'test_mse_scaled')
    b = fit_scaling(scaled, XAxis.DIMENSION, 'test_mse_scaled')
    assert b.slope == pytest.approx(a.slope, abs=1e-12)
    assert b.intercept - a.intercept == pytest.approx(math.log(10.0), abs=1e-12)


def test_arithmetic_aggregate_reported():
    records = [make_record(d=4, seed=0, test=1.0), make_record(d=4, seed=1, test=4.0),
               make_record(d=8, seed=0, test=2.0)]
    points = aggregate_points(records, XAxis.DIMENSION, 'test_mse_scaled')
    assert points[0].geometric_mean == pytest.approx(2.0)
    assert points[0].arithmetic_mean == 2.5
    fit = fit_scaling(records, XAxis.DIMENSION, 'test_mse_scaled', aggregate=Aggregate.ARITHMETIC)
    assert fit.slope == pytest.approx(math.log(2.0 / 2.5) / math.log(2.0))


def test_gap_filter_and_where():
    records = [
        make_record(n_total=1000, test=1.0, train=0.1),
        make_record(n_total=3000, test=0.4, train=0.1),
        make_record(n_total=10000, test=0.15, train=0.1),
        make_record(n_total=1000, test=9.0, arch='local'),
    ]
    fit = fit_scaling(records, XAxis.SAMPLES, 'test_mse_scaled', where=lambda r: r.arch == 'global',
                      min_gap_ratio=2.0)
    assert [p.x for p in fit.points] == [1000.0, 3000.0]
    assert fit.points[0].gap_ratio == pytest.approx(10.0)


def test_fit_errors():
    with pytest.raises(InsufficientDataError):
        fit_scaling([make_record(d=4), make_record(d=4, seed=1)], XAxis.DIMENSION, 'test_mse_scaled')
    with pytest.raises(ParameterError):
        fit_scaling([make_record(d=4, test=0.0), make_record(d=8)], XAxis.DIMENSION, 'test_mse_scaled')


def test_sparsity_map_examples():
    assert not np.any(sparsity_map(np.zeros((20, 3))))

    W1 = np.zeros((20, 2))
    W1[3, 0] = 5.0
    smap = sparsity_map(W1, pool=10)
    np.testing.assert_array_equal(smap, [[5.0, 0.0], [0.0, 0.0]])


def test_sparsity_map_partial_last_group_and_bounds():
    W1 = Rng(1).uniform(-2.0, 2.0, (23, 4))
    smap = sparsity_map(W1, pool=10)
    assert smap.shape == (3, 4)
    np.testing.assert_array_equal(smap[2], np.abs(W1[20:]).max(axis=0))
    assert np.all(smap >= 0) and smap.max() <= np.abs(W1).max()
    with pytest.raises(ParameterError):
        sparsity_map(W1, pool=0)


def test_to_levels():
    levels = to_levels(np.array([[0.0, 0.5], [1.0, 0.25]]))
    np.testing.assert_array_equal(levels, [[0, 128], [255, 64]])
    assert not np.any(to_levels(np.zeros((2, 2))))


def test_residuals_of_zero_block():
    """z_i = x_i**2, so off-diagonals approach 1/9 and the diagonal 1/5."""
    params = Params.zeros(Architecture(ArchKind.LOCAL, 4, 3))
    C = residual_correlation(params, 100000, Rng(3))
    off = C[~np.eye(4, dtype=bool)]
    assert np.all(np.abs(off - 1.0 / 9.0) < 5e-3)
    assert np.all(np.abs(np.diag(C) - 0.2) < 5e-3)
    np.testing.assert_allclose(C, C.T, rtol=0, atol=1e-12)


def test_residual_diagonal_nonnegative_and_summary():
    params = init_glorot(Architecture(ArchKind.LOCAL, 3, 4), Rng(5))
    C = residual_correlation(params, 500, Rng(6))
    assert np.all(np.diag(C) >= 0)
    summary = residual_summary(C)
    assert set(summary) == {'mean_diagonal', 'max_abs_offdiagonal', 'ratio'}
    assert summary['ratio'] == pytest.approx(summary['max_abs_offdiagonal'] / summary['mean_diagonal'])


def test_block_outputs_average_to_network_output():
    params = init_glorot(Architecture(ArchKind.LOCAL, 5, 3), Rng(8))
    X = Rng(9).uniform(-1.0, 1.0, (7, 5))
    np.testing.assert_allclose(block_outputs(params, X).mean(axis=1), predict(params, X), atol=1e-15)


def test_residuals_require_local_network():
    with pytest.raises(ParameterError):
        residual_correlation(Params.zeros(Architecture(ArchKind.GLOBAL, 2, 2)), 10, Rng(0))
