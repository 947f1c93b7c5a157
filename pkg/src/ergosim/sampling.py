"""Wiener-path sampling and GBM trajectory construction.

Two trajectory schemes are provided: the distribution-exact sampler built on
the closed-form solution ``x(t) = x0 * exp((mu - sigma^2/2) t + sigma W(t))``
and an Euler scheme ``x_{k+1} = x_k (1 + mu dt + sigma dW_k)`` for
cross-checking. Both consume a shared :class:`WienerPath`, so the schemes can
be compared path by path.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass, field

import numpy as np

from .params import GbmParams, TimeGrid


@dataclass(frozen=True)
class WienerPath:
    """One realization of W(t) on a grid, with W(0) = 0."""

    grid: TimeGrid
    values: np.ndarray

    def __post_init__(self) -> None:
        if self.values.shape != (self.grid.n_points,):
            raise ValueError(
                f"path has {self.values.shape[0]} values for a grid of {self.grid.n_points} points"
            )
        if self.values[0] != 0.0:
            raise ValueError(f"W(0) must be 0, got {self.values[0]}")


@dataclass(frozen=True)
class Trajectory:
    """One realization of x(t) on a grid.

    ``hit_nonpositive`` is set by the Euler scheme when the iteration
    produced a value <= 0; the exact sampler never sets it.
    """

    grid: TimeGrid
    values: np.ndarray
    hit_nonpositive: bool = field(default=False, compare=False)

    def __post_init__(self) -> None:
        if self.values.shape != (self.grid.n_points,):
            raise ValueError(
                f"trajectory has {self.values.shape[0]} values for a grid of {self.grid.n_points} points"
            )


def wiener_matrix(grid: TimeGrid, stream: np.random.Generator, count: int) -> np.ndarray:
    """Sample ``count`` Wiener paths from one stream as a (count, n+1) array.

    Row ``r`` is built from the ``r``-th consecutive block of increments
    drawn from ``stream``; rows are mutually independent.
    """
    if count < 1:
        raise ValueError(f"count must be >= 1, got {count}")
    z = stream.standard_normal((count, grid.n_steps))
    out = np.empty((count, grid.n_points))
    out[:, 0] = 0.0
    np.cumsum(z, axis=1, out=out[:, 1:])
    out[:, 1:] *= np.sqrt(grid.dt)
    return out


def sample_wiener(grid: TimeGrid, stream: np.random.Generator) -> WienerPath:
    """Sample one Wiener path: W(k dt) = sqrt(dt) * sum of k normal variates."""
    return WienerPath(grid=grid, values=wiener_matrix(grid, stream, 1)[0])


def gbm_exact_matrix(params: GbmParams, grid: TimeGrid, w: np.ndarray) -> np.ndarray:
    """Exact GBM values for a (paths, n+1) Wiener matrix, columnwise in time."""
    t = grid.times()
    x = np.exp(params.log_drift * t + params.sigma * w)
    x *= params.x0
    x[..., 0] = params.x0
    return x


def simulate_exact(params: GbmParams, path: WienerPath) -> Trajectory:
    """Evaluate the closed-form solution pointwise on the path's grid.

    Exact in distribution at every grid time for any step size; values are
    strictly positive.
    """
    values = gbm_exact_matrix(params, path.grid, path.values[np.newaxis, :])[0]
    return Trajectory(grid=path.grid, values=values)


def gbm_euler_matrix(params: GbmParams, grid: TimeGrid, w: np.ndarray) -> np.ndarray:
    """Euler-scheme GBM values for a (paths, n+1) Wiener matrix."""
    dw = np.diff(w, axis=-1)
    factors = 1.0 + params.mu * grid.dt + params.sigma * dw
    x = np.empty_like(w)
    x[..., 0] = params.x0
    np.cumprod(factors, axis=-1, out=x[..., 1:])
    x[..., 1:] *= params.x0
    return x


def simulate_euler(params: GbmParams, path: WienerPath) -> Trajectory:
    """Integrate dx = x(mu dt + sigma dW) with the Euler scheme.

    Uses the same increments as the supplied path, so the result is directly
    comparable to :func:`simulate_exact` on that path. For large steps the
    iteration can cross zero; the trajectory is then returned as-is but
    flagged and a warning is issued, since clamping would bias ensemble
    averages downstream.
    """
    values = gbm_euler_matrix(params, path.grid, path.values[np.newaxis, :])[0]
    hit = bool(np.any(values <= 0.0))
    if hit:
        k = int(np.argmax(values <= 0.0))
        warnings.warn(
            f"Euler iteration produced x <= 0 at t={path.grid.times()[k]:g} (step {k}); "
            "trajectory flagged as invalid",
            stacklevel=2,
        )
    return Trajectory(grid=path.grid, values=values, hit_nonpositive=hit)


def restrict_path(path: WienerPath, factor: int) -> WienerPath:
    """Restrict a path to a coarser grid by keeping every ``factor``-th point.

    The restriction of a Wiener path to a subgrid is again a Wiener path, so
    this is the standard device for strong-convergence ladders: integrate on
    several step sizes while sharing one underlying realization.
    """
    if factor < 1:
        raise ValueError(f"factor must be >= 1, got {factor}")
    if path.grid.n_steps % factor != 0:
        raise ValueError(f"n_steps={path.grid.n_steps} is not divisible by factor={factor}")
    coarse = TimeGrid(t_max=path.grid.t_max, n_steps=path.grid.n_steps // factor)
    return WienerPath(grid=coarse, values=path.values[::factor].copy())
