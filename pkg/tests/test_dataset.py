"""
Tests for haystack/dataset: targets, generation, splitting and loss scales.
"""

import numpy as np
import pytest

from haystack.core.rng import Rng
from haystack.dataset import (
    LossScale, Split, TargetKind, generate, mse, scaled_target, split_sizes, to_original,
)
from haystack.exceptions import DimensionError, ParameterError


def test_scaled_target_examples():
    assert scaled_target(np.ones(5), TargetKind.SQUARE) == 1.0
    assert scaled_target([1.0, -1.0], TargetKind.QUARTIC) == 1.0
    assert scaled_target([0.5, -0.5, 0.0], TargetKind.SQUARE) == pytest.approx(1.0 / 6.0, abs=1e-15)
    assert scaled_target(np.zeros(4), TargetKind.COSINE) == 1.0
    assert scaled_target(np.zeros(4), TargetKind.QUARTIC) == 0.0


def test_scaled_target_rows():
    X = np.array([[1.0, -1.0, 1.0], [0.0, 0.0, 0.0]])
    np.testing.assert_array_equal(scaled_target(X, TargetKind.SQUARE), [1.0, 0.0])


def test_target_parse():
    assert TargetKind.parse('Square') is TargetKind.SQUARE
    with pytest.raises(ValueError):
        TargetKind.parse('cubic')


def test_split_sizes():
    assert split_sizes(1000) == (640, 160, 200)
    assert split_sizes(10) == (6, 1, 3)
    assert sum(split_sizes(12345)) == 12345


def test_generate_rows_sorted_and_in_range():
    data = generate(6, 500, TargetKind.SQUARE, seed=3)
    assert (data.n_train, data.n_val, data.n_test) == (320, 80, 100)
    X, y = data.all_rows()
    assert np.all(np.diff(X, axis=1) >= 0)
    assert np.all(X >= -1.0) and np.all(X < 1.0)
    assert np.all(y >= 0.0) and np.all(y <= 1.0)


def test_generate_row_target_reevaluation():
    """Stored y matches direct evaluation of (1/d) sum x_i**2."""
    data = generate(4, 100, TargetKind.SQUARE, seed=11)
    x0 = data.X_train[0]
    assert abs(data.y_train[0] - np.sum(x0 * x0) / 4) <= 1e-12


def test_generate_is_deterministic():
    a = generate(3, 50, TargetKind.COSINE, seed=9)
    b = generate(3, 50, TargetKind.COSINE, seed=9)
    c = generate(3, 50, TargetKind.COSINE, seed=10)
    for split in Split:
        np.testing.assert_array_equal(a.split(split)[0], b.split(split)[0])
        np.testing.assert_array_equal(a.split(split)[1], b.split(split)[1])
    assert not np.array_equal(a.X_train, c.X_train)


def test_generate_rejects_small_inputs():
    with pytest.raises(ParameterError):
        generate(0, 100, TargetKind.SQUARE, seed=0)
    with pytest.raises(ParameterError):
        generate(2, 5, TargetKind.SQUARE, seed=0)


def test_mse_examples():
    y = np.array([0.3, -0.2, 0.5])
    assert mse(y, y, LossScale.SCALED, 3) == 0.0
    assert mse(y + 0.5, y, LossScale.SCALED, 3) == pytest.approx(0.25)
    assert mse(y + 0.5, y, LossScale.ORIGINAL, 3) == pytest.approx(9 * 0.25)
    assert mse([1.0, 2.0], [0.0, 0.0], LossScale.SCALED, 3) == 2.5
    assert mse([1.0, 2.0], [0.0, 0.0], LossScale.ORIGINAL, 3) == 22.5
    assert to_original(2.5, 3) == 22.5


def test_mse_errors():
    with pytest.raises(DimensionError):
        mse([1.0, 2.0], [1.0], LossScale.SCALED, 1)
    with pytest.raises(ParameterError):
        mse([], [], LossScale.SCALED, 1)


@pytest.mark.parametrize('target', list(TargetKind))
def test_permuted_raw_row_stores_same_row_and_target(target):
    rng = Rng(31)
    raw = rng.uniform(-1.0, 1.0, (200, 9))
    y = scaled_target(raw, target)
    for _ in range(5):
        permuted = raw[:, rng.permutation(9)]
        np.testing.assert_array_equal(np.sort(permuted, axis=1), np.sort(raw, axis=1))
        np.testing.assert_array_equal(scaled_target(permuted, target), y)
