from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from ..hamiltonian import label_to_bits
from ..wake import GridGeometry


@dataclass
class HeatmapResult:
    mean_placement: np.ndarray
    num_layouts: int


def mean_placement(layouts, geometry: GridGeometry) -> HeatmapResult:
    """Average turbine occupancy of each grid cell over ``layouts``.

    Layouts may be 0/1 sequences or label strings; row ``r`` of the result is
    grid row ``r + 1``.
    """
    if len(layouts) == 0:
        raise ValueError("need at least one layout")
    q = geometry.q
    X = np.array([label_to_bits(x, q) if isinstance(x, str) else np.asarray(x, dtype=int) for x in layouts])
    if X.ndim != 2 or X.shape[1] != q:
        raise ValueError(f"every layout must have {q} sites")
    return HeatmapResult(X.mean(axis=0).reshape(geometry.l_grid, geometry.l_grid), len(X))


@dataclass
class PercentResult:
    percent: float
    mean_power: float
    successes: int
    failures: int


def percent_of_optimal(records_or_powers, optimal_power: float) -> PercentResult:
    """Mean selected power of the successful runs as a percentage of the optimum.

    Accepts run records (failed selections are counted, not averaged) or a
    plain sequence of powers. With no successful run the percentage is NaN.
    """
    if optimal_power <= 0:
        raise ValueError("optimal power must be positive")
    powers, failures = [], 0
    for r in records_or_powers:
        p = getattr(r, "power_kW", r)
        if p is None:
            failures += 1
        else:
            powers.append(float(p))
    if not powers:
        return PercentResult(math.nan, math.nan, 0, failures)
    mean = math.fsum(powers) / len(powers)
    return PercentResult(100.0 * mean / optimal_power, mean, len(powers), failures)


def box_stats(values) -> dict:
    """Median, quartiles, 1.5 IQR whiskers and outliers (linear-interpolated quartiles)."""
    v = np.sort(np.asarray(values, dtype=float))
    if v.size == 0:
        raise ValueError("no values")
    q1, med, q3 = np.percentile(v, [25, 50, 75])
    iqr = q3 - q1
    lo, hi = q1 - 1.5 * iqr, q3 + 1.5 * iqr
    inside = v[(v >= lo) & (v <= hi)]
    return {
        "n": int(v.size),
        "mean": float(v.mean()),
        "std": float(v.std(ddof=1)) if v.size > 1 else 0.0,
        "min": float(v[0]),
        "q1": float(q1),
        "median": float(med),
        "q3": float(q3),
        "max": float(v[-1]),
        "whisker_low": float(inside.min()),
        "whisker_high": float(inside.max()),
        "outliers": [float(x) for x in v[(v < lo) | (v > hi)]],
    }


@dataclass
class ScalingFit:
    """Least-squares line ``log t = slope * log V + intercept`` in base ``base``."""

    points: list[tuple[float, float]]
    slope: float
    intercept: float
    base: float = 10.0

    def predict(self, volume) -> np.ndarray:
        return self.base ** (self.intercept + self.slope * np.log(volume) / math.log(self.base))

    def to_dict(self) -> dict:
        return {
            "slope": self.slope,
            "intercept": self.intercept,
            "log_base": self.base,
            "points": [list(p) for p in self.points],
        }


def fit_scaling(timings, base: float = 10.0) -> ScalingFit:
    """Fit ``time ~ V**slope`` to ``(V, seconds)`` pairs on log-log axes.

    The slope does not depend on ``base``; the intercept does. Base 10 is the
    default so intercepts read as decades.
    """
    data = np.asarray(timings, dtype=float)
    if data.ndim != 2 or data.shape[0] < 2 or data.shape[1] != 2:
        raise ValueError("need at least two (V, seconds) pairs")
    if np.any(data <= 0):
        raise ValueError("volumes and times must be positive")
    if np.unique(data[:, 0]).size < 2:
        raise ValueError("need at least two distinct volumes")
    lx, ly = np.log(data[:, 0]) / math.log(base), np.log(data[:, 1]) / math.log(base)
    A = np.column_stack([lx, np.ones_like(lx)])
    (slope, intercept), *_ = np.linalg.lstsq(A, ly, rcond=None)
    return ScalingFit([(float(a), float(b)) for a, b in zip(lx, ly)], float(slope), float(intercept), base)


def scaling_intersection(a: ScalingFit, b: ScalingFit) -> float:
    """Volume at which two power-law fits predict equal time."""
    if a.base != b.base:
        raise ValueError("fits use different log bases")
    if a.slope == b.slope:
        raise ValueError("parallel fits never cross")
    return a.base ** ((b.intercept - a.intercept) / (a.slope - b.slope))
