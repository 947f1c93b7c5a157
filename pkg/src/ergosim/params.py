"""Model parameters and time discretization for geometric Brownian motion."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np


@dataclass(frozen=True)
class GbmParams:
    """Parameters of the multiplicative process dx = x(mu dt + sigma dW).

    Attributes:
        mu: Drift per unit time. Also the ensemble-average growth rate.
        sigma: Noise amplitude per sqrt unit time. The time-average growth
            rate is ``mu - sigma**2 / 2``.
        x0: Initial value, strictly positive.
    """

    mu: float
    sigma: float
    x0: float = 1.0

    def __post_init__(self) -> None:
        if not math.isfinite(self.mu):
            raise ValueError(f"mu must be finite, got {self.mu}")
        if not math.isfinite(self.sigma) or self.sigma < 0.0:
            raise ValueError(f"sigma must be finite and >= 0, got {self.sigma}")
        if not math.isfinite(self.x0) or self.x0 <= 0.0:
            raise ValueError(f"x0 must be finite and > 0, got {self.x0}")

    @classmethod
    def from_sigma2(cls, mu: float, sigma2: float, x0: float = 1.0) -> "GbmParams":
        """Build from the noise variance rate sigma^2 instead of sigma."""
        if not math.isfinite(sigma2) or sigma2 < 0.0:
            raise ValueError(f"sigma2 must be finite and >= 0, got {sigma2}")
        return cls(mu=mu, sigma=math.sqrt(sigma2), x0=x0)

    @property
    def sigma2(self) -> float:
        return self.sigma * self.sigma

    @property
    def log_drift(self) -> float:
        """Drift of ln x under the Ito interpretation: mu - sigma^2/2."""
        return self.mu - 0.5 * self.sigma * self.sigma


@dataclass(frozen=True)
class TimeGrid:
    """Uniform grid 0, dt, 2*dt, ..., t_max with ``n_steps + 1`` points."""

    t_max: float
    n_steps: int

    def __post_init__(self) -> None:
        if self.n_steps == 0:
            raise ValueError("grid has zero steps")
        if not isinstance(self.n_steps, (int, np.integer)) or self.n_steps < 1:
            raise ValueError(f"n_steps must be a positive integer, got {self.n_steps}")
        if not math.isfinite(self.t_max) or self.t_max <= 0.0:
            raise ValueError(f"t_max must be finite and > 0, got {self.t_max}")

    @property
    def dt(self) -> float:
        return self.t_max / self.n_steps

    @property
    def n_points(self) -> int:
        return self.n_steps + 1

    def times(self) -> np.ndarray:
        """Grid times as an array of length ``n_steps + 1``; endpoint exact."""
        return np.linspace(0.0, self.t_max, self.n_steps + 1)

    @classmethod
    def from_dt(cls, t_max: float, dt: float, rel_tol: float = 1e-9) -> "TimeGrid":
        """Build a grid from a target step size.

        ``t_max`` must be an integer multiple of ``dt`` to within ``rel_tol``.
        """
        if not math.isfinite(dt) or dt <= 0.0:
            raise ValueError(f"dt must be finite and > 0, got {dt}")
        if not math.isfinite(t_max) or t_max <= 0.0:
            raise ValueError(f"t_max must be finite and > 0, got {t_max}")
        n = round(t_max / dt)
        if n < 1 or abs(n * dt - t_max) > rel_tol * max(1.0, abs(t_max)):
            raise ValueError(f"t_max={t_max} is not a multiple of dt={dt}")
        return cls(t_max=t_max, n_steps=n)
