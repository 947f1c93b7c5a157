"""Shared numerical primitives: quantiles, normal CDF/PDF, OLS, KS distance."""

from __future__ import annotations

import math

import numpy as np

_INV_SQRT2 = 1.0 / math.sqrt(2.0)
_INV_SQRT2PI = 1.0 / math.sqrt(2.0 * math.pi)

_erfc_vec = np.vectorize(math.erfc, otypes=[float])


def percentile(values, level: float) -> float:
    """Linear-interpolation quantile at ``level`` in (0, 100).

    With sorted values v_1..v_n the estimate sits at fractional position
    ``(level/100) * (n - 1)`` (0-based) and interpolates linearly between the
    bracketing order statistics. This convention is fixed project-wide so
    emitted tables are stable.
    """
    arr = np.asarray(values, dtype=float)
    if arr.size == 0:
        raise ValueError("percentile of an empty sample is undefined")
    if not 0.0 < level < 100.0:
        raise ValueError(f"level must be in (0, 100), got {level}")
    return float(np.percentile(arr, level))


def normal_cdf(z):
    """Standard normal CDF via the complementary error function.

    Absolute error is at the level of double-precision rounding (well below
    1e-12 for |z| <= 8); the library erfc handles the extreme tails with its
    own asymptotics. Accepts a scalar or an ndarray.
    """
    if isinstance(z, np.ndarray):
        return 0.5 * _erfc_vec(-z * _INV_SQRT2)
    return 0.5 * math.erfc(-z * _INV_SQRT2)


def normal_pdf(x: float, mean: float = 0.0, std: float = 1.0) -> float:
    """Gaussian density with the given mean and standard deviation."""
    if std <= 0.0:
        raise ValueError(f"std must be > 0, got {std}")
    u = (x - mean) / std
    return _INV_SQRT2PI / std * math.exp(-0.5 * u * u)


def ols_line(x, y) -> tuple[float, float]:
    """Ordinary least squares of y on x; returns (intercept, slope)."""
    xa = np.asarray(x, dtype=float)
    ya = np.asarray(y, dtype=float)
    if xa.shape != ya.shape or xa.ndim != 1:
        raise ValueError("x and y must be 1-d arrays of equal length")
    if xa.size < 2:
        raise ValueError("need at least 2 points")
    xm = xa.mean()
    ym = ya.mean()
    dx = xa - xm
    sxx = float(np.dot(dx, dx))
    if sxx == 0.0:
        raise ValueError("x values are degenerate (no spread)")
    slope = float(np.dot(dx, ya - ym)) / sxx
    return ym - slope * xm, slope


def ks_statistic(values, cdf) -> float:
    """Sup-norm distance between the sample's empirical CDF and ``cdf``.

    ``cdf`` must accept an ndarray of sample values.
    """
    arr = np.sort(np.asarray(values, dtype=float))
    n = arr.size
    if n == 0:
        raise ValueError("KS statistic of an empty sample is undefined")
    f = np.asarray(cdf(arr), dtype=float)
    steps = np.arange(n + 1) / n
    d_plus = np.max(steps[1:] - f)
    d_minus = np.max(f - steps[:-1])
    return float(max(d_plus, d_minus))
