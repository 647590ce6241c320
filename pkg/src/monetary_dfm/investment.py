"""Securitization in the investment market and the next-period portfolio."""
from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Tuple

from .core import KNIFE_EDGE_TOL, DerivedCoefficients, DomainError, ModelParams

GAMMA_RTOL = 1e-12
CARRY_TOL = 1e-12


@dataclass(frozen=True)
class InvestmentChoice:
    """Interval ``[lower, upper]`` of optimal securitization levels."""

    lower: float
    upper: float

    @property
    def selected(self) -> float:
        return self.upper


def optimal_s(m: float, a: float, psi: float, phi: float, c: DerivedCoefficients, y_L: float) -> InvestmentChoice:
    """Maximize ``alpha1 s + alpha2 min(s, alpha3)`` over ``s in [0, a]``.

    ``alpha3 = phi m / (psi + y_L)`` is the quantity the buyer's money can
    absorb in the DFM. A strictly positive ``alpha1`` makes the objective
    increasing everywhere, so the whole holding is securitized.
    """
    if m < 0 or a < 0:
        raise DomainError("holdings must be non-negative")
    if phi <= 0:
        raise DomainError("money has no value")
    cap = min(phi * m / (psi + y_L), a) if psi + y_L > 0 else a
    if c.alpha_sum < -KNIFE_EDGE_TOL:
        return InvestmentChoice(0.0, 0.0)
    if c.alpha_sum <= KNIFE_EDGE_TOL:
        return InvestmentChoice(0.0, cap)
    if c.alpha1 < -KNIFE_EDGE_TOL:
        return InvestmentChoice(cap, cap)
    if c.alpha1 <= KNIFE_EDGE_TOL:
        return InvestmentChoice(cap, a)
    return InvestmentChoice(a, a)


@dataclass(frozen=True)
class GammaCoefficients:
    """Coefficients of the linear portfolio problem

    ``max -g1 m' - g2 a' + g3 min(a', g4 m' + g5)``.
    """

    gamma1: float
    gamma2: float
    gamma3: float
    gamma4: float
    gamma5: float

    @property
    def carry_cost_flags(self) -> Tuple[bool, bool]:
        return self.gamma1 >= -CARRY_TOL, self.gamma2 >= -CARRY_TOL

    def scaled(self, k: float) -> "GammaCoefficients":
        """Objective multiplied by ``k``; the constraint ``g4, g5`` is untouched."""
        return GammaCoefficients(k * self.gamma1, k * self.gamma2, k * self.gamma3, self.gamma4, self.gamma5)

    def residual(self) -> float:
        """``g1 + g2 g4 - g3 g4``; zero on the knife edge."""
        return self.gamma1 + self.gamma2 * self.gamma4 - self.gamma3 * self.gamma4


def gamma_coefficients(today, tomorrow, p: ModelParams, c: DerivedCoefficients) -> GammaCoefficients:
    """``today`` and ``tomorrow`` are ``(phi, psi)`` pairs."""
    phi, psi = today
    phi_next, psi_next = tomorrow
    if phi_next <= 0:
        raise DomainError("next-period value of money must be positive")
    if psi_next + p.y_L <= 0:
        raise DomainError("psi_next + y_L must be positive")
    g4 = phi_next / (psi_next + p.y_L)
    return GammaCoefficients(
        gamma1=phi - p.beta * phi_next,
        gamma2=psi - p.beta * (p.R + psi_next),
        gamma3=p.beta * c.alpha_sum,
        gamma4=g4,
        gamma5=g4 * p.mu * p.M,
    )


class PortfolioKind(enum.Enum):
    ZERO_DEMAND = "ZeroDemand"
    UNBOUNDED = "Unbounded"
    KNIFE_EDGE_LOCUS = "KnifeEdgeLocus"

    def __str__(self):
        return self.value


@dataclass(frozen=True)
class PortfolioChoice:
    kind: PortfolioKind
    gamma4: float = 0.0
    gamma5: float = 0.0

    @property
    def z_min(self) -> float:
        """Smallest money holding on the locus that keeps ``a' >= 0``."""
        return -self.gamma5 / self.gamma4

    def locus(self, z: float) -> Tuple[float, float]:
        if self.kind is not PortfolioKind.KNIFE_EDGE_LOCUS:
            raise ValueError(f"no locus for {self.kind}")
        if z < self.z_min:
            raise DomainError(f"z must be >= {self.z_min!r}")
        return z, self.gamma4 * z + self.gamma5


def portfolio_choice(g: GammaCoefficients) -> PortfolioChoice:
    if g.gamma4 <= 0:
        raise DomainError("gamma4 must be positive")
    cost = g.gamma1 + g.gamma2 * g.gamma4
    gain = g.gamma3 * g.gamma4
    if abs(cost - gain) <= GAMMA_RTOL * max(abs(gain), abs(cost)):
        return PortfolioChoice(PortfolioKind.KNIFE_EDGE_LOCUS, g.gamma4, g.gamma5)
    if cost > gain:
        return PortfolioChoice(PortfolioKind.ZERO_DEMAND, g.gamma4, g.gamma5)
    return PortfolioChoice(PortfolioKind.UNBOUNDED, g.gamma4, g.gamma5)


def carry_cost_check(today, tomorrow, p: ModelParams) -> Tuple[bool, bool]:
    """Non-negative carry costs: ``(asset_ok, money_ok)``."""
    phi, psi = today
    phi_next, psi_next = tomorrow
    asset_ok = psi >= p.beta * (p.R + psi_next) - CARRY_TOL
    money_ok = phi >= p.beta * phi_next - CARRY_TOL
    return asset_ok, money_ok
