"""Partial ensemble averages and the observables built on them.

A partial ensemble average (PEA) is the arithmetic mean of N trajectories at
each grid time. This module constructs PEAs, the growth-rate estimator
``ln(<x(t)>_N) / t``, the deviation of a PEA from the ensemble-average curve
``x0 * exp(mu t)``, and the crossing-time detectors used by the experiment
pipelines.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .params import GbmParams, TimeGrid
from .sampling import Trajectory


@dataclass(frozen=True)
class EnsembleRun:
    """N trajectories on a shared grid, stored as a (N, n+1) matrix."""

    params: GbmParams
    grid: TimeGrid
    values: np.ndarray

    def __post_init__(self) -> None:
        if self.values.ndim != 2 or self.values.shape[1] != self.grid.n_points:
            raise ValueError(
                f"values must be (N, {self.grid.n_points}), got {self.values.shape}"
            )
        if self.values.shape[0] < 1:
            raise ValueError("ensemble must contain at least one trajectory")

    @property
    def n(self) -> int:
        return self.values.shape[0]

    @classmethod
    def from_trajectories(cls, params: GbmParams, trajectories) -> "EnsembleRun":
        trajectories = list(trajectories)
        if not trajectories:
            raise ValueError("ensemble must contain at least one trajectory")
        grid = trajectories[0].grid
        for traj in trajectories[1:]:
            if traj.grid != grid:
                raise ValueError("all trajectories must share the same grid")
        return cls(params=params, grid=grid, values=np.stack([t.values for t in trajectories]))


@dataclass(frozen=True)
class PeaSeries:
    """One partial-ensemble-average trajectory <x(t)>_N over a grid."""

    grid: TimeGrid
    values: np.ndarray


@dataclass(frozen=True)
class GrowthRateSeries:
    """Growth-rate estimator values on the grid times t > 0."""

    grid: TimeGrid
    values: np.ndarray

    def times(self) -> np.ndarray:
        return self.grid.times()[1:]


@dataclass(frozen=True)
class DeviationSeries:
    """Pointwise deviation of a PEA from x0 * exp(mu t), including t = 0."""

    grid: TimeGrid
    values: np.ndarray


@dataclass(frozen=True)
class DeviationRecord:
    """First time a PEA departs from the ensemble average by a threshold.

    ``tau`` comes from the median trajectory; ``band_low`` and ``band_high``
    from the bracketing replicate percentiles. Missing crossings are None.
    """

    n: int
    threshold: float
    tau: float | None
    band_low: float | None
    band_high: float | None

    def __post_init__(self) -> None:
        if self.threshold <= 0.0:
            raise ValueError(f"threshold must be > 0, got {self.threshold}")
        if self.tau is not None and self.band_low is not None and self.band_high is not None:
            if not self.band_low <= self.tau <= self.band_high:
                raise ValueError(
                    f"crossing band [{self.band_low}, {self.band_high}] does not bracket tau={self.tau}"
                )


def pea(run: EnsembleRun) -> PeaSeries:
    """Pointwise arithmetic mean of the run's trajectories."""
    return PeaSeries(grid=run.grid, values=run.values.mean(axis=0))


def growth_rate(series: PeaSeries) -> GrowthRateSeries:
    """Estimator g(t) = ln(value(t)) / t on the grid times t > 0.

    Raises:
        ValueError: If any value at t > 0 is not positive (possible for
            Euler-scheme inputs), naming the offending grid point.
    """
    t = series.grid.times()[1:]
    v = series.values[1:]
    bad = np.nonzero(v <= 0.0)[0]
    if bad.size:
        k = int(bad[0])
        raise ValueError(
            f"PEA value {v[k]:g} at t={t[k]:g} (grid point {k + 1}) is not positive; "
            "growth rate is undefined"
        )
    return GrowthRateSeries(grid=series.grid, values=np.log(v) / t)


def deviation_series(series: PeaSeries, params: GbmParams) -> DeviationSeries:
    """eps(t) = <x(t)>_N - x0 * exp(mu t), pointwise; eps(0) = 0."""
    reference = params.x0 * np.exp(params.mu * series.grid.times())
    return DeviationSeries(grid=series.grid, values=series.values - reference)


def first_deviation_time(eps: DeviationSeries, threshold: float) -> float | None:
    """Smallest t with |eps(t)| >= threshold, linearly interpolated.

    The crossing is refined between the bracketing grid points on |eps|.
    Returns None when the threshold is never reached within the grid.
    """
    if threshold <= 0.0:
        raise ValueError(f"threshold must be > 0, got {threshold}")
    mag = np.abs(eps.values)
    hits = np.nonzero(mag >= threshold)[0]
    hits = hits[hits > 0]
    if hits.size == 0:
        return None
    k = int(hits[0])
    t = eps.grid.times()
    lo, hi = mag[k - 1], mag[k]
    if hi == lo:
        return float(t[k])
    frac = (threshold - lo) / (hi - lo)
    return float(t[k - 1] + (t[k] - t[k - 1]) * frac)


def unity_crossings(series: PeaSeries) -> list[float]:
    """Times t > 0 where the PEA crosses its initial value.

    Sign changes of ``value - x0`` are located by linear interpolation;
    exact equality at a grid point counts as one crossing at that point.
    """
    x0 = series.values[0]
    d = series.values - x0
    t = series.grid.times()
    crossings: list[float] = []
    last_sign = 0 if d[0] == 0.0 else (1 if d[0] > 0.0 else -1)
    for k in range(1, d.size):
        if d[k] == 0.0:
            crossings.append(float(t[k]))
            last_sign = 0
            continue
        sign = 1 if d[k] > 0.0 else -1
        if last_sign != 0 and sign != last_sign:
            frac = -d[k - 1] / (d[k] - d[k - 1])
            crossings.append(float(t[k - 1] + (t[k] - t[k - 1]) * frac))
        last_sign = sign
    return crossings
