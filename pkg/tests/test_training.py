"""
Tests for haystack/training: Adam, penalties, batch policies and the
early-stopping training loop.
"""

import math

import numpy as np
import pytest

from haystack.core.rng import Rng, STREAM_INIT, derive_seed
from haystack.dataset import Split, TargetKind, generate
from haystack.network import ArchKind, Architecture, Params, embed, init_glorot, path_norm
from haystack.training import (
    AdamState, BatchPolicy, RegKind, Regularizer, TrainConfig, adam_step, evaluate,
    objective, penalty, penalty_and_grad, train, train_step,
)
from haystack.exceptions import DimensionError, ParameterError


SCALAR_ARCH = Architecture(ArchKind.LOCAL, 1, 1)


def _scalar(w1=0.0, b1=0.0, w2=0.0, b2=0.0, w3=0.0):
    values = {'w1': w1, 'b1': b1, 'w2': w2, 'b2': b2, 'w3': w3}
    return Params(SCALAR_ARCH, {k: np.full(s, values[k]) for k, s in SCALAR_ARCH.shapes().items()})


def test_adam_zero_gradient_is_noop():
    params = _scalar(w1=0.3, w3=-0.2)
    state = AdamState(params)
    _, updated = adam_step(state, params, Params.zeros(SCALAR_ARCH))
    assert updated.equals(params)
    assert state.t == 1


@pytest.mark.parametrize('g, expected', [(1.0, -0.01 / (1 + 1e-8)), (-2.0, 0.01 * 2 / (2 + 1e-8))])
def test_adam_first_step(g, expected):
    params = _scalar()
    state = AdamState(params, lr=0.01, decay=0.0)
    _, updated = adam_step(state, params, _scalar(w1=g))
    assert updated['w1'][0] == pytest.approx(expected, rel=1e-12)
    assert updated['w3'][0] == 0.0


def test_adam_inverse_time_decay():
    params = _scalar()
    state = AdamState(params, lr=0.01, decay=0.5)
    assert state.current_lr() == pytest.approx(0.01 / 1.5)
    adam_step(state, params, _scalar(w1=1.0))
    assert state.current_lr() == pytest.approx(0.01 / 2.0)


def test_adam_rejects_bad_settings():
    with pytest.raises(ParameterError):
        AdamState(_scalar(), lr=0.0)
    state = AdamState(_scalar())
    with pytest.raises(DimensionError):
        adam_step(state, _scalar(), Params.zeros(Architecture(ArchKind.LOCAL, 1, 2)))


def test_penalty_examples():
    params = _scalar(w1=1.0, w2=-2.0, w3=3.0, b1=7.0)
    assert penalty(params, Regularizer(RegKind.L1, 0.1)) == pytest.approx(0.6)
    assert penalty(params, Regularizer(RegKind.L2, 0.1)) == pytest.approx(1.4)

    value, grad = penalty_and_grad(params, Regularizer())
    assert value == 0.0
    assert all(not np.any(g) for _, g in grad.items())

    _, grad = penalty_and_grad(params, Regularizer(RegKind.L1, 0.1))
    assert grad['w2'][0, 0] == -0.1
    assert grad['b1'][0] == 0.0


def test_l1_subgradient_of_zero_is_zero():
    _, grad = penalty_and_grad(_scalar(w1=0.0, w2=1.0), Regularizer(RegKind.L1, 1.0))
    assert grad['w1'][0] == 0.0


def test_path_penalty_gradient_hand_example():
    params = Params(Architecture(ArchKind.GLOBAL, 1, 1), {
        'w1': [[2.0]], 'b1': [0.0], 'w2': [[3.0]], 'b2': [0.0], 'w3': [0.5],
    })
    value, grad = penalty_and_grad(params, Regularizer(RegKind.PATH, 1.0))
    assert value == 3.0
    assert grad['w1'][0, 0] == 1.5


def test_regularizer_parse_defaults():
    assert Regularizer.parse('none') == Regularizer()
    assert Regularizer.parse('path').lam == 1e-5
    assert Regularizer.parse('l1').lam == 1e-8
    assert Regularizer.parse('L2', 0.5) == Regularizer(RegKind.L2, 0.5)
    with pytest.raises(ParameterError):
        Regularizer.parse('dropout')
    with pytest.raises(ParameterError):
        Regularizer(RegKind.L1, -1.0)


def test_batch_policy():
    assert BatchPolicy.ratio(100).batch_size(640, 160) == 8
    assert BatchPolicy.ratio(1000).batch_size(64, 16) == 1
    assert BatchPolicy.fixed(80).batch_size(640, 160) == 80
    assert BatchPolicy.parse('fixed80') == BatchPolicy.fixed(80)
    assert BatchPolicy.ratio(100).tag == 'ratio100'
    with pytest.raises(ParameterError):
        BatchPolicy.parse('adaptive3')


def test_train_step_reports_objective_before_update():
    data = generate(3, 100, TargetKind.SQUARE, seed=1)
    arch = Architecture(ArchKind.GLOBAL, 3, 4)
    params = init_glorot(arch, Rng(2))
    reg = Regularizer(RegKind.PATH, 1e-3)
    X, y = data.X_train[:16], data.y_train[:16]
    before = objective(params, X, y, reg)
    reported, updated = train_step(AdamState(params), params, X, y, reg)
    assert reported == pytest.approx(before, rel=1e-12)
    assert not updated.equals(params)


def test_zero_epochs_returns_init():
    data = generate(4, 100, TargetKind.SQUARE, seed=3)
    local = init_glorot(Architecture(ArchKind.LOCAL, 4, 5), Rng(4))
    init = embed(local)
    result = train(data, init.arch, TrainConfig(epochs=0), init=init)
    assert result.best_params.equals(init)
    assert result.best_epoch == 0
    assert result.history == []
    assert result.best_val_mse == result.initial_val_mse


def test_fresh_init_uses_init_stream():
    data = generate(2, 50, TargetKind.SQUARE, seed=0)
    arch = Architecture(ArchKind.LCN, 2, 3)
    result = train(data, arch, TrainConfig(epochs=0, seed=9))
    assert result.best_params.equals(init_glorot(arch, Rng(derive_seed(9, STREAM_INIT))))


def test_early_stopping_picks_first_validation_minimum():
    data = generate(3, 200, TargetKind.SQUARE, seed=5)
    result = train(data, Architecture(ArchKind.GLOBAL, 3, 4), TrainConfig(epochs=25, seed=1))
    assert len(result.history) == 25
    assert [r.epoch for r in result.history] == list(range(1, 26))
    vals = [r.val_mse for r in result.history]
    assert result.best_epoch == int(np.argmin(vals)) + 1
    assert result.best_val_mse == min(vals)
    val, _ = evaluate(result.best_params, data, Split.VAL)
    assert val == result.best_val_mse
    assert result.final_path_norm == path_norm(result.best_params)


def test_training_is_deterministic():
    data = generate(3, 150, TargetKind.QUARTIC, seed=2)
    arch = Architecture(ArchKind.LOCAL, 3, 4)
    config = TrainConfig(epochs=5, seed=7, regularizer=Regularizer(RegKind.L2, 1e-4))
    a = train(data, arch, config)
    b = train(data, arch, config)
    assert a.best_params.equals(b.best_params)
    assert a.best_epoch == b.best_epoch
    assert [r.val_mse for r in a.history] == [r.val_mse for r in b.history]


def test_path_norm_recorded_per_epoch():
    data = generate(2, 100, TargetKind.SQUARE, seed=1)
    config = TrainConfig(epochs=3, record_path_norm=True)
    result = train(data, Architecture(ArchKind.GLOBAL, 2, 3), config)
    assert all(not math.isnan(r.path_norm) for r in result.history)


def test_evaluate_scales():
    data = generate(5, 100, TargetKind.SQUARE, seed=4)
    params = init_glorot(Architecture(ArchKind.GLOBAL, 5, 2), Rng(1))
    scaled, original = evaluate(params, data, Split.TEST)
    assert original == 25 * scaled
    assert evaluate(params, data, Split.TEST) == (scaled, original)


def test_train_rejects_dimension_mismatch():
    data = generate(3, 100, TargetKind.SQUARE, seed=0)
    with pytest.raises(DimensionError):
        train(data, Architecture(ArchKind.GLOBAL, 4, 2), TrainConfig(epochs=1))
    with pytest.raises(ParameterError):
        TrainConfig(epochs=-1)


def test_local_network_learns_square_target():
    data = generate(2, 2000, TargetKind.SQUARE, seed=0)
    result = train(data, Architecture(ArchKind.LOCAL, 2, 20), TrainConfig(epochs=200, seed=0))
    final, _ = evaluate(result.best_params, data, Split.TRAIN)
    assert final * 10 <= result.initial_train_mse


@pytest.mark.parametrize('g', [1e-3, 1.0, -5.0, 250.0])
def test_adam_step_bounded_by_learning_rate(g):
    params = _scalar()
    state = AdamState(params, lr=0.01, decay=0.0)
    grad = _scalar(w1=g)
    for _ in range(300):
        _, updated = adam_step(state, params, grad)
        assert abs(updated['w1'][0] - params['w1'][0]) <= 0.01 * (1 + 1e-6)
        params = updated


def test_train_rejects_non_finite_init():
    data = generate(2, 100, TargetKind.SQUARE, seed=0)
    arch = Architecture(ArchKind.LOCAL, 2, 3)
    init = init_glorot(arch, Rng(0))
    broken = Params(arch, dict(init.tensors, w3=np.full(3, np.inf)))
    with pytest.raises(ParameterError):
        train(data, arch, TrainConfig(epochs=1), init=broken)
