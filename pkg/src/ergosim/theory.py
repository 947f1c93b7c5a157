"""Closed-form results for PEAs of geometric Brownian motion.

Covers the two growth rates whose inequality expresses the broken ergodicity
of the process, the Gaussian law of the single-trajectory growth-rate
estimator, exact extreme-value probabilities for N Wiener endpoints, the
predicted scale of the PEA's deviation from the ensemble average, the
linearized deviation dynamics, and the implicit equation for the time at
which a deviation of given size is reached.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .params import GbmParams, TimeGrid
from .sampling import WienerPath
from .stats import normal_pdf

_FIXED_POINT_TOL = 1e-12
_MAX_ITERATIONS = 10_000


def time_average_growth(params: GbmParams) -> float:
    """Growth rate seen by any single trajectory at long times: mu - sigma^2/2."""
    return params.mu - 0.5 * params.sigma * params.sigma


def ensemble_average_growth(params: GbmParams) -> float:
    """Growth rate of the full ensemble average: mu."""
    return params.mu


def g_est_density(params: GbmParams, t: float, g: float) -> float:
    """Density of the single-trajectory growth-rate estimator at time t.

    The estimator is Gaussian with mean ``mu - sigma^2/2`` and standard
    deviation ``sigma / sqrt(t)``; the distribution sharpens to a point mass
    at the time-average rate as t grows.
    """
    if t <= 0.0:
        raise ValueError(f"t must be > 0, got {t}")
    if params.sigma == 0.0:
        raise ValueError("density is degenerate for sigma = 0")
    return normal_pdf(g, mean=time_average_growth(params), std=params.sigma / math.sqrt(t))


def _validate_extreme_args(params: GbmParams, n: int, t: float) -> None:
    if n < 1:
        raise ValueError(f"N must be >= 1, got {n}")
    if t <= 0.0:
        raise ValueError(f"t must be > 0, got {t}")
    if params.sigma == 0.0:
        raise ValueError("threshold epsilon*t/sigma is undefined for sigma = 0")


def extreme_exceedance_probability(params: GbmParams, n: int, t: float, epsilon: float) -> float:
    """P(max over N Wiener endpoints W_i(t) > epsilon * t / sigma).

    Equals ``1 - Phi(epsilon sqrt(t) / sigma)^N``. For fixed N and
    epsilon > 0 it vanishes as t grows; for fixed t it tends to 1 as N grows.
    """
    _validate_extreme_args(params, n, t)
    z = epsilon * math.sqrt(t) / params.sigma
    # log1p/expm1 route keeps precision when Phi(z) is within 1e-16 of 1.
    upper_tail = 0.5 * math.erfc(z / math.sqrt(2.0))
    return -math.expm1(n * math.log1p(-upper_tail))


def extreme_deficiency_probability(params: GbmParams, n: int, t: float, epsilon: float) -> float:
    """P(min over N Wiener endpoints W_i(t) < -epsilon * t / sigma).

    Equal to :func:`extreme_exceedance_probability` by the sign symmetry of
    the Wiener process.
    """
    return extreme_exceedance_probability(params, n, t, epsilon)


def deviation_scale(params: GbmParams, n: int, t: float) -> float:
    """Predicted scale of the PEA deviation: sigma * exp(mu t) * sqrt(t / N)."""
    if n < 1:
        raise ValueError(f"N must be >= 1, got {n}")
    if t < 0.0:
        raise ValueError(f"t must be >= 0, got {t}")
    return params.sigma * math.exp(params.mu * t) * math.sqrt(t / n)


def linearized_deviation_euler_matrix(
    params: GbmParams, grid: TimeGrid, w: np.ndarray
) -> np.ndarray:
    """Euler integration of d eps = mu eps dt + sigma exp(mu t) dW, eps(0) = 0.

    ``w`` is a (paths, n+1) Wiener matrix; returns the matching deviation
    matrix.
    """
    t = grid.times()
    dt = grid.dt
    dw = np.diff(w, axis=-1)
    forcing = params.sigma * np.exp(params.mu * t[:-1]) * dw
    out = np.zeros_like(w)
    growth = 1.0 + params.mu * dt
    for k in range(grid.n_steps):
        out[..., k + 1] = out[..., k] * growth + forcing[..., k]
    return out


def simulate_linearized_deviation(params: GbmParams, path: WienerPath) -> np.ndarray:
    """Euler solution of the linearized deviation equation along one path."""
    return linearized_deviation_euler_matrix(params, path.grid, path.values[np.newaxis, :])[0]


def linearized_deviation_exact(params: GbmParams, path: WienerPath) -> np.ndarray:
    """Closed form of the linearized deviation: sigma * exp(mu t) * W(t).

    Follows from an integrating factor exp(-mu t); the Euler route above
    converges to this as the step size shrinks.
    """
    return params.sigma * np.exp(params.mu * path.grid.times()) * path.values


@dataclass(frozen=True)
class TauSolution:
    """Solution of the implicit deviation-time equation."""

    tau: float
    residual: float
    iterations: int


def solve_tau(params: GbmParams, n: int, epsilon: float) -> TauSolution:
    """Solve tau = (1/mu) * (ln(epsilon sqrt(N)) - ln(sigma sqrt(tau))).

    The equation always has exactly one positive root for valid inputs; it is
    found by Newton iteration on the log-time form (the plain fixed-point map
    is not a contraction when the root is small), converged to a fixed-point
    residual below 1e-12 with a 10^4 iteration cap.

    Raises:
        ValueError: For invalid parameters (mu <= 0, sigma = 0, epsilon <= 0,
            N < 1).
        ArithmeticError: "no positive solution" if the iteration fails to
            locate a positive root (unreachable for finite valid inputs;
            guards pathological overflow).
    """
    if params.mu <= 0.0:
        raise ValueError(f"mu must be > 0, got {params.mu}")
    if params.sigma == 0.0:
        raise ValueError("sigma must be > 0")
    if n < 1:
        raise ValueError(f"N must be >= 1, got {n}")
    if epsilon <= 0.0:
        raise ValueError(f"epsilon must be > 0 so that epsilon*sqrt(N) > 0, got {epsilon}")

    # tau = a - b ln(tau) with a = ln(eps sqrt(N)/sigma)/mu, b = 1/(2 mu);
    # in u = ln(tau) the residual h(u) = e^u + b u - a is convex and strictly
    # increasing, so Newton converges from any start.
    a = math.log(epsilon * math.sqrt(n) / params.sigma) / params.mu
    b = 0.5 / params.mu
    u = math.log(a) if a > 1.0 else a / b
    iterations = 0
    while iterations < _MAX_ITERATIONS:
        iterations += 1
        eu = math.exp(u)
        h = eu + b * u - a
        if abs(h) <= _FIXED_POINT_TOL * max(1.0, abs(a)):
            break
        u -= h / (eu + b)
    tau = math.exp(u)
    residual = abs(tau - (a - b * math.log(tau)))
    if not math.isfinite(tau) or tau <= 0.0 or residual > 1e-10 * max(1.0, abs(a)):
        raise ArithmeticError(
            f"no positive solution for N={n}, epsilon={epsilon} (residual {residual:g})"
        )
    return TauSolution(tau=tau, residual=residual, iterations=iterations)
