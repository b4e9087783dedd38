"""
Tests for haystack/analysis/bounds.py.

Exact values on hand-computed inputs plus randomized property suites
over 1000 input tuples each.
"""

import math
import warnings

import numpy as np
import pytest

from haystack.analysis.bounds import (
    BoundInputs, aposteriori_gap, apriori_loss, apriori_pathnorm, evaluate_all, gamma_rate,
    lambda_threshold, leading_gap, local_error_estimate, required_width, sample_complexity,
)
from haystack.exceptions import BoundRegimeWarning, ParameterError


def _tuples(seed, count=1000):
    """Random (P, d, n, delta) tuples."""
    rng = np.random.default_rng(seed)
    for _ in range(count):
        yield (float(rng.uniform(0.0, 50.0)), int(rng.integers(2, 200)),
               int(rng.integers(1, 10**6)), float(rng.uniform(1e-4, 0.99)))


def test_aposteriori_example():
    assert aposteriori_gap(0.0, 3, 100, 0.5) == pytest.approx(0.18807, abs=5e-6)


def test_aposteriori_quarter_n_halving_exact():
    for P, d, n, delta in _tuples(0):
        full = aposteriori_gap(P, d, n, delta)
        assert abs(aposteriori_gap(P, d, 4 * n, delta) - full / 2) <= 1e-15 * full


def test_aposteriori_monotonicity():
    violations = 0
    for P, d, n, delta in _tuples(1):
        base = aposteriori_gap(P, d, n, delta)
        violations += aposteriori_gap(P + 0.5, d, n, delta) <= base
        violations += aposteriori_gap(P, d + 1, n, delta) < base
        violations += aposteriori_gap(P, d, n + 1, delta) > base
        violations += aposteriori_gap(P, d, n, delta * 0.5) < base
    assert violations == 0


def test_apriori_example():
    value = apriori_loss(1.0, 100, 10000, 0.01, 0.1)
    assert value == pytest.approx(0.01 + 0.02 + (1 + math.sqrt(math.log(1e5))) / 100, rel=1e-14)
    assert value == pytest.approx(0.07393, abs=5e-6)


def test_apriori_infinite_width_limits():
    B, n, lam, delta = 1.0, 10000, 0.01, 0.1
    limit = lam * (B + 1) + (B + math.sqrt(math.log(n / delta))) / math.sqrt(n)
    assert apriori_loss(B, math.inf, n, lam, delta) == pytest.approx(limit, rel=1e-15)
    assert apriori_pathnorm(B, math.inf, lam, delta) == pytest.approx(B + math.sqrt(math.log(1 / delta)))


def test_apriori_monotonicity():
    """Nonincreasing in m and in n (B >= 0.5, n >= 10, delta <= 0.5)."""
    rng = np.random.default_rng(2)
    violations = 0
    for _ in range(1000):
        B = float(rng.uniform(0.5, 5.0))
        m = float(rng.uniform(1.0, 1e4))
        n = int(rng.integers(10, 10**6))
        lam = float(rng.uniform(1e-3, 1.0))
        delta = float(rng.uniform(1e-4, 0.5))
        base = apriori_loss(B, m, n, lam, delta)
        violations += apriori_loss(B, m * 2, n, lam, delta) > base
        violations += apriori_loss(B, m, n + 1, lam, delta) > base
    assert violations == 0


def test_apriori_regime_warning():
    with pytest.warns(BoundRegimeWarning):
        apriori_loss(1.0, 10, 100, 1e-3, 0.1, d=10)
    with warnings.catch_warnings():
        warnings.simplefilter('error')
        apriori_loss(1.0, 10, 100, lambda_threshold(10, 100) * 1.01, 0.1, d=10)


def test_domain_errors():
    with pytest.raises(ParameterError):
        aposteriori_gap(1.0, 1, 100, 0.1)
    with pytest.raises(ParameterError):
        aposteriori_gap(1.0, 3, 100, 1.0)
    with pytest.raises(ParameterError):
        aposteriori_gap(-1.0, 3, 100, 0.1)
    with pytest.raises(ParameterError):
        apriori_loss(1.0, 10, 100, 0.0, 0.1)
    with pytest.raises(ParameterError):
        apriori_pathnorm(1.0, 0.5, 0.1, 0.1)
    with pytest.raises(ParameterError):
        gamma_rate(1.0, 0.0)


def test_gamma_rate_values():
    assert gamma_rate(2, 0.5) == 4
    assert gamma_rate(3.6, 0.8) == pytest.approx(4.5, rel=1e-15)
    assert gamma_rate(2.5, 1.0) == 2.5


def test_supplementary_expressions():
    assert leading_gap(2.0, math.e, 4) == pytest.approx(1.0)
    assert lambda_threshold(1, 2) == pytest.approx(4 * math.sqrt(math.log(2)))
    assert sample_complexity(10, 0.1) == pytest.approx(1e6)
    assert required_width(10, 0.5) == 200.0
    assert local_error_estimate(0.4, 2) == 0.1


def test_evaluate_all_keys():
    report = evaluate_all(BoundInputs(path_norm=1.0, d=4, n=1000, m=100, lam=1.0, delta=0.1))
    assert list(report) == ['aposteriori_gap', 'leading_gap', 'lambda_threshold',
                            'apriori_loss', 'apriori_pathnorm']
    assert all(v > 0 for v in report.values())


def test_default_inputs_sit_inside_the_regime():
    inputs = BoundInputs()
    assert inputs.lam >= lambda_threshold(inputs.d, inputs.n)
    with warnings.catch_warnings():
        warnings.simplefilter('error', BoundRegimeWarning)
        evaluate_all(inputs)
