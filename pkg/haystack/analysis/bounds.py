"""
Closed-form generalization-bound evaluators.

Every expression is evaluated with its suppressed universal constant set
to 1, so values are meaningful up to a universal constant only. The Barron
norm of the target is an input (default 1.0, the O(1) estimate for the
scaled separable targets); it is never computed here.
"""

import math
import warnings
from dataclasses import dataclass

from haystack.core.constants import DEFAULT_BARRON
from haystack.exceptions import BoundRegimeWarning, ParameterError


UP_TO_CONSTANT = 'up to a universal constant'


@dataclass(frozen=True, slots=True)
class BoundInputs:
    """
    Attributes:
        path_norm: float - Path norm of the trained parameters (>= 0)
        barron: float - Barron-norm estimate of the target (>= 0)
        d: int - Input dimension (>= 2)
        n: int - Training sample count (>= 1)
        m: float - Network width (>= 1, may be inf)
        lam: float - Penalty constant (> 0 for the a priori bounds)
        delta: float - Failure probability in (0, 1)
    """

    path_norm: float = 0.0
    barron: float = DEFAULT_BARRON
    d: int = 16
    n: int = 100000
    m: float = 800.0
    lam: float = 0.05
    delta: float = 0.1


def _check_common(d=None, n=None, delta=None, P=None, B=None):
    if d is not None and d < 2:
        raise ParameterError(f'bounds need d >= 2 so that ln d > 0, got d={d}')
    if n is not None and n < 1:
        raise ParameterError(f'sample count must be >= 1, got n={n}')
    if delta is not None and not 0.0 < delta < 1.0:
        raise ParameterError(f'delta must lie in (0, 1), got {delta}')
    if P is not None and P < 0:
        raise ParameterError(f'path norm must be >= 0, got {P}')
    if B is not None and B < 0:
        raise ParameterError(f'Barron norm must be >= 0, got {B}')


def aposteriori_gap(P, d, n, delta):
    """
    A posteriori generalization gap bound.

        sqrt(ln d / n) * (P + 1) + sqrt(ln((P + 1)**2 / delta) / n)

    Computed as (sqrt(ln d) * (P + 1) + sqrt(ln(...))) / sqrt(n), so that
    quadrupling n halves the value exactly.

    Args:
        P: float - Path norm
        d: int - Input dimension
        n: int - Sample count
        delta: float - Failure probability

    Returns:
        float
    """
    _check_common(d=d, n=n, delta=delta, P=P)
    p1 = P + 1.0
    numerator = math.sqrt(math.log(d)) * p1 + math.sqrt(math.log(p1 * p1 / delta))
    return numerator / math.sqrt(n)


def lambda_threshold(d, n):
    """Smallest penalty constant the a priori bound admits: 4 sqrt(2 ln(2d) / n)."""
    if d < 1 or n < 1:
        raise ParameterError(f'lambda threshold needs d >= 1 and n >= 1, got d={d} n={n}')
    return 4.0 * math.sqrt(2.0 * math.log(2.0 * d) / n)


def _check_lambda(lam, d, n):
    if lam <= 0:
        raise ParameterError(f'penalty constant must be > 0, got {lam}')
    if d is not None and n is not None:
        threshold = lambda_threshold(d, n)
        if lam < threshold:
            warnings.warn(
                f'lambda={lam:g} is below the a priori regime threshold {threshold:g} '
                f'(d={d}, n={n}); the bound is evaluated anyway',
                BoundRegimeWarning, stacklevel=3)


def apriori_loss(B, m, n, lam, delta, d=None):
    """
    A priori population-loss bound of the path-norm regularized estimator.

        B**2 / m + lam * (B + 1) + (B + sqrt(ln(n / delta))) / sqrt(n)

    Args:
        B: float - Barron-norm estimate
        m: float - Width (>= 1; math.inf gives the infinite-width limit)
        n: int - Sample count
        lam: float - Penalty constant (> 0)
        delta: float - Failure probability
        d: int - Optional dimension; enables the lambda >= lambda_n check

    Returns:
        float
    """
    _check_common(n=n, delta=delta, B=B)
    if m < 1:
        raise ParameterError(f'width must be >= 1, got m={m}')
    _check_lambda(lam, d, n)
    return B * B / m + lam * (B + 1.0) + (B + math.sqrt(math.log(n / delta))) / math.sqrt(n)


def apriori_pathnorm(B, m, lam, delta, d=None, n=None):
    """
    A priori bound on the path norm of the regularized estimator.

        B**2 / (lam * m) + B + sqrt(ln(1 / delta))

    Args:
        B: float - Barron-norm estimate
        m: float - Width (>= 1)
        lam: float - Penalty constant (> 0)
        delta: float - Failure probability
        d, n: int - Optional; enable the lambda >= lambda_n check

    Returns:
        float
    """
    _check_common(delta=delta, B=B)
    if m < 1:
        raise ParameterError(f'width must be >= 1, got m={m}')
    _check_lambda(lam, d, n)
    return B * B / (lam * m) + B + math.sqrt(math.log(1.0 / delta))


def leading_gap(P, d, n):
    """Leading term of the generalization gap, P * sqrt(ln d / n)."""
    _check_common(d=d, n=n, P=P)
    return P * math.sqrt(math.log(d) / n)


def sample_complexity(d, eps):
    """Samples needed for Original-scale error eps, up to log factors: d**4 / eps**2."""
    if d < 1 or eps <= 0:
        raise ParameterError(f'sample complexity needs d >= 1 and eps > 0, got d={d} eps={eps}')
    return float(d) ** 4 / (eps * eps)


def required_width(d, eps):
    """Width the a priori bound asks for at Original-scale error eps: d**2 / eps."""
    if d < 1 or eps <= 0:
        raise ParameterError(f'required width needs d >= 1 and eps > 0, got d={d} eps={eps}')
    return float(d) ** 2 / eps


def local_error_estimate(mean_sq_residual, d):
    """
    Local-network generalization error when per-coordinate residuals are
    mean zero and independent: E[z**2] / (2d).
    """
    if d < 1 or mean_sq_residual < 0:
        raise ParameterError('local error estimate needs d >= 1 and a non-negative second moment')
    return mean_sq_residual / (2.0 * d)


def gamma_rate(beta1, beta2):
    """
    Sample-complexity rate gamma = beta1 / beta2 from a loss-vs-d slope
    beta1 and the magnitude beta2 of a loss-vs-n slope.

    Args:
        beta1: float - Dimension slope
        beta2: float - Sample slope magnitude (> 0)

    Returns:
        float
    """
    if beta2 <= 0:
        raise ParameterError(f'beta2 must be > 0, got {beta2}')
    return beta1 / beta2


def evaluate_all(inputs):
    """
    Evaluate every bound expression for one input set.

    Args:
        inputs: BoundInputs

    Returns:
        dict: name -> value, in report order
    """
    i = inputs
    return {
        'aposteriori_gap': aposteriori_gap(i.path_norm, i.d, i.n, i.delta),
        'leading_gap': leading_gap(i.path_norm, i.d, i.n),
        'lambda_threshold': lambda_threshold(i.d, i.n),
        'apriori_loss': apriori_loss(i.barron, i.m, i.n, i.lam, i.delta, d=i.d),
        'apriori_pathnorm': apriori_pathnorm(i.barron, i.m, i.lam, i.delta, d=i.d, n=i.n),
    }
