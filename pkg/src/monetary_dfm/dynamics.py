"""Off-steady-state paths of real balances and the asset price.

Both follow first-order linear recurrences whose fixed point is the
stationary equilibrium. Every other path explodes, so the steady state is
the only bounded equilibrium.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, Optional

import numpy as np

from .core import DerivedCoefficients, DomainError, ModelParams, derive_coefficients, expected_high_return

SINGULAR_TOL = 1e-12
DIVERGENCE_FACTOR = 1e6


@dataclass(frozen=True)
class LinearMap:
    """``z_next = intercept + slope * z``."""

    intercept: float
    slope: float

    def __call__(self, z):
        return self.intercept + self.slope * z

    @property
    def fixed_point(self) -> float:
        if self.slope == 1.0:
            raise DomainError("unit slope: no isolated fixed point")
        return self.intercept / (1.0 - self.slope)


@dataclass(frozen=True)
class PathState:
    t: int
    z: float
    psi: float


@dataclass(frozen=True)
class Path:
    t: np.ndarray
    z: np.ndarray
    psi: np.ndarray
    z_star: float
    stationary: bool
    diverged_at: Optional[int]

    def states(self) -> Iterator[PathState]:
        for t, z, psi in zip(self.t, self.z, self.psi):
            yield PathState(int(t), float(z), float(psi))


def real_balance_map(p: ModelParams, c: Optional[DerivedCoefficients] = None) -> LinearMap:
    c = derive_coefficients(p) if c is None else c
    intercept = -(p.beta * (c.alpha_sum + p.R) + (1.0 - p.beta) * p.y_L) * p.A / (2.0 * p.beta)
    slope = (2.0 + p.mu) / (2.0 * p.beta)
    return LinearMap(intercept, slope)


def psi_pivot(p: ModelParams) -> float:
    return 1.0 + p.mu - 2.0 * p.beta


def psi_step(psi: float, p: ModelParams) -> float:
    """Next-period asset price implied by today's price on a knife-edge path."""
    pivot = psi_pivot(p)
    if abs(pivot) < SINGULAR_TOL:
        raise DomainError("singular map: 1 + mu - 2 beta = 0, next-period price undefined")
    constant = p.beta * expected_high_return(p) - (1.0 + p.mu - p.beta) * p.y_L
    return constant / pivot - psi / pivot


def psi_path_explodes(p: ModelParams) -> bool:
    """Whether the price recurrence is expansive (|slope| > 1)."""
    return abs(psi_pivot(p)) < 1.0


def simulate_path(z0: float, T: int, lmap: LinearMap, p: ModelParams,
                  threshold: float = DIVERGENCE_FACTOR) -> Path:
    """Iterate the real-balance recurrence for ``T`` steps from ``z0``.

    The asset price along the path is backed out of the clearing condition
    ``z = (psi + y_L) A``. ``diverged_at`` is the first period whose distance
    from the fixed point exceeds ``threshold * max(1, |z*|)``.
    """
    if T < 1:
        raise ValueError("T must be >= 1")
    z_star = lmap.fixed_point
    stationary = abs(z0 - z_star) <= 1e-12 * max(1.0, abs(z_star))
    z = np.empty(T + 1)
    z[0] = z0
    if stationary:
        # the exact recurrence stays put; iterating would only amplify rounding
        z[1:] = z0
    else:
        for t in range(T):
            z[t + 1] = lmap(z[t])
    diverged_at = None
    if not stationary:
        far = np.flatnonzero(np.abs(z - z_star) > threshold * max(1.0, abs(z_star)))
        if far.size:
            diverged_at = int(far[0])
    psi = z / p.A - p.y_L
    return Path(np.arange(T + 1), z, psi, z_star, stationary, diverged_at)
