"""
Power-law fits of losses against dimension or sample count.

Records are grouped by the x column; each group (the seeds of one cell)
is aggregated by the mean of ln(loss), i.e. the geometric mean, which
keeps exact power laws exact. The arithmetic mean is reported alongside and
can be selected instead. An OLS line through (ln x, aggregate) gives the
slope and intercept.
"""

import math
from dataclasses import dataclass
from enum import Enum

import numpy as np

from haystack.core.linalg import ols_fit
from haystack.exceptions import InsufficientDataError, ParameterError


class XAxis(Enum):
    DIMENSION = 'dim'
    SAMPLES = 'samples'

    @property
    def column(self):
        return 'd' if self is XAxis.DIMENSION else 'n_total'


class Aggregate(Enum):
    GEOMETRIC = 'geometric'
    ARITHMETIC = 'arithmetic'


@dataclass(frozen=True, slots=True)
class ScalingPoint:
    """One x value after seed aggregation."""

    x: float
    count: int
    mean_log: float
    geometric_mean: float
    arithmetic_mean: float
    gap_ratio: float


@dataclass(frozen=True, slots=True)
class ScalingFit:
    slope: float
    intercept: float
    points: tuple
    aggregate: Aggregate


def _gap_ratio(group):
    """Geometric-mean test/train ratio (Scaled losses) of a record group."""
    logs = []
    for r in group:
        if r.train_mse_scaled <= 0 or r.test_mse_scaled <= 0:
            return math.inf
        logs.append(math.log(r.test_mse_scaled) - math.log(r.train_mse_scaled))
    return math.exp(sum(logs) / len(logs))


def aggregate_points(records, x_axis, y_col, where=None):
    """
    Group records by x and aggregate the y column over seeds.

    Args:
        records: iterable of RunRecord
        x_axis: XAxis - Grouping column
        y_col: str - Loss (or path norm) column name
        where: callable - Optional record predicate

    Returns:
        list[ScalingPoint] sorted by x
    """
    groups = {}
    for record in records:
        if where is not None and not where(record):
            continue
        groups.setdefault(getattr(record, x_axis.column), []).append(record)

    points = []
    for x in sorted(groups):
        group = groups[x]
        values = np.array([float(getattr(r, y_col)) for r in group])
        if np.any(values <= 0) or not np.all(np.isfinite(values)):
            raise ParameterError(f'{y_col} must be positive and finite to fit in log space (x={x})')
        mean_log = float(np.mean(np.log(values)))
        points.append(ScalingPoint(
            x=float(x),
            count=len(group),
            mean_log=mean_log,
            geometric_mean=math.exp(mean_log),
            arithmetic_mean=float(np.mean(values)),
            gap_ratio=_gap_ratio(group),
        ))
    return points


def fit_scaling(records, x_axis, y_col, where=None, min_gap_ratio=None,
                aggregate=Aggregate.GEOMETRIC):
    """
    Fit ln(loss) = slope * ln(x) + intercept.

    Args:
        records: iterable of RunRecord
        x_axis: XAxis - DIMENSION or SAMPLES
        y_col: str - Column to fit (e.g. 'test_mse_orig', 'path_norm')
        where: callable - Optional record predicate (arch, reg, ... filters)
        min_gap_ratio: float - Keep only x values whose test/train ratio is
            at least this (the visible-gap segment); None keeps all
        aggregate: Aggregate - Seed aggregation used for the fit

    Returns:
        ScalingFit
    """
    points = aggregate_points(records, x_axis, y_col, where)
    if min_gap_ratio is not None:
        points = [p for p in points if p.gap_ratio >= min_gap_ratio]
    if len(points) < 2:
        raise InsufficientDataError(f'need at least 2 distinct {x_axis.column} values, have {len(points)}')

    xs = [math.log(p.x) for p in points]
    if aggregate is Aggregate.GEOMETRIC:
        ys = [p.mean_log for p in points]
    else:
        ys = [math.log(p.arithmetic_mean) for p in points]
    slope, intercept = ols_fit(xs, ys)
    return ScalingFit(slope=slope, intercept=intercept, points=tuple(points), aggregate=aggregate)
