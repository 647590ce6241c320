"""Bilateral Nash bargaining in the DFM.

An L-type seller holding ``s`` securities meets an H-type buyer holding
``m_bar`` dollars. The trading surpluses are linear in the transfers, so the
Nash product is homogeneous of degree one and one of the holding
constraints always binds.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import FrozenSet, Optional, Tuple

from .core import (
    DomainError,
    ModelParams,
    derive_coefficients,
    fundamental_price,
)
from .investment import InvestmentChoice

REGIME_TOL = 1e-12


class Binding(enum.Enum):
    MONEY = "money_binds"
    SECURITIES = "securities_bind"

    def __str__(self):
        return self.value


@dataclass(frozen=True)
class BargainingOutcome:
    d_m: float  # dollars, buyer -> seller
    d_s: float  # securities, seller -> buyer
    binding: FrozenSet[Binding] = frozenset()

    def surpluses(self, psi: float, phi: float, p: ModelParams) -> Tuple[float, float]:
        """Gains from trade in goods for ``(seller, buyer)``."""
        seller = phi * self.d_m - (psi + p.y_L) * self.d_s
        buyer = (psi + p.y_H) * self.d_s - phi * self.d_m
        return seller, buyer


@dataclass(frozen=True)
class BargainingThresholds:
    m_l: float
    m_h: float


def _seller_price(psi, p):
    # goods per security the seller extracts when the whole stock changes hands
    return psi + p.theta * p.y_H + (1.0 - p.theta) * p.y_L


def _buyer_weighted(psi, p):
    return psi + (1.0 - p.theta) * p.y_H + p.theta * p.y_L


def bargaining_thresholds(s: float, psi: float, phi: float, p: ModelParams) -> BargainingThresholds:
    """Buyer money holdings between which both constraints bind."""
    m_h = s / phi * _seller_price(psi, p)
    m_l = s / phi * (psi + p.y_L) * (psi + p.y_H) / _buyer_weighted(psi, p)
    return BargainingThresholds(m_l, m_h)


def nash_bargain(m_bar: float, s: float, psi: float, phi: float, p: ModelParams,
                 same_type: bool = False) -> BargainingOutcome:
    """Closed-form Nash transfers between a seller and a buyer.

    Meetings between agents of the same type have no gains from trade and
    return a zero outcome.

    >>> from monetary_dfm.core import ModelParams
    >>> prm = ModelParams(beta=0.9, R=1, y_L=0, y_H=3, lam=1, theta=0.5)
    >>> out = nash_bargain(10.4, 1.0, 9.0, 1.0, prm)
    >>> out.d_m, out.d_s
    (10.4, 1.0)
    """
    if m_bar < 0 or s < 0:
        raise DomainError("holdings must be non-negative")
    if phi <= 0:
        raise DomainError("money has no value")
    if psi + p.y_L == 0:
        raise DomainError("psi + y_L = 0: securities transfer undefined")
    if p.y_H == p.y_L:
        raise DomainError("y_H = y_L: no surplus to bargain over")
    if same_type:
        return BargainingOutcome(0.0, 0.0)

    d_m_star = s * _seller_price(psi, p) / phi
    d_s_star = phi * m_bar * _buyer_weighted(psi, p) / ((psi + p.y_H) * (psi + p.y_L))
    d_m = min(m_bar, d_m_star)
    d_s = min(s, d_s_star)
    binding = set()
    if m_bar <= d_m_star:
        binding.add(Binding.MONEY)
    if s <= d_s_star:
        binding.add(Binding.SECURITIES)
    return BargainingOutcome(d_m, d_s, frozenset(binding))


def open_threshold(p: ModelParams) -> float:
    """Expected security return needed for the bargaining DFM to open."""
    return p.R - p.lam * p.theta * (p.y_H - p.y_L) / 4.0


def good_returns(p: ModelParams) -> bool:
    return 0.5 * (p.y_H + p.y_L) >= open_threshold(p) - REGIME_TOL


def optimal_s_bargaining(m_bar: float, a: float, psi: float, phi: float, p: ModelParams) -> InvestmentChoice:
    cap = min(phi * m_bar / _seller_price(psi, p), a)
    gap = 0.5 * (p.y_H + p.y_L) - open_threshold(p)
    if gap < -REGIME_TOL:
        return InvestmentChoice(0.0, 0.0)
    if gap <= REGIME_TOL:
        return InvestmentChoice(0.0, cap)
    return InvestmentChoice(cap, cap)


def mu_bar_bargaining(p: ModelParams) -> float:
    return p.beta - 1.0 + 0.25 * p.lam * (1.0 - p.theta) * (p.y_H - p.y_L) / (fundamental_price(p) + p.y_L)


@dataclass(frozen=True)
class BargainingEquilibrium:
    psi_star: float
    good_returns: bool
    z_star: float
    s_star: float
    mu_bar_b: Optional[float]
    monetary: bool
    incompatibility: Tuple[float, float]
    transfers: Optional[BargainingOutcome]
    notes: Tuple[str, ...] = ()
    coefficients: dict = field(default_factory=dict, repr=False, compare=False)

    @property
    def incompatibility_strict(self) -> bool:
        lhs, rhs = self.incompatibility
        return lhs > rhs

    def debug_report(self) -> str:
        return "\n".join(f"{k:>4} = {v!r}" for k, v in self.coefficients.items())


def solve_bargaining_equilibrium(p: ModelParams) -> BargainingEquilibrium:
    """Stationary equilibrium when DFM terms of trade are bargained.

    The buyer's optimal money holding would have to equal the level at
    which the seller's securitization is exhausted, and those two levels
    can never coincide; the asset's carry cost must therefore vanish, which
    pins the price at its fundamental value in every regime.
    """
    psi = fundamental_price(p)
    lhs = _seller_price(psi, p)
    rhs = (psi + p.y_L) * (psi + p.y_H) / _buyer_weighted(psi, p)
    friedman = abs(p.mu - (p.beta - 1.0)) <= REGIME_TOL

    if not good_returns(p):
        notes = ("expected security return too low: nothing is securitized",
                 "money circulates only at the Friedman rule" if friedman
                 else "money is not valued away from the Friedman rule")
        return BargainingEquilibrium(
            psi_star=psi, good_returns=False, z_star=0.0, s_star=0.0, mu_bar_b=None,
            monetary=friedman, incompatibility=(lhs, rhs), transfers=None, notes=notes,
        )

    # DFM clearing with the money stock tomorrow equal to (1 + mu) M
    z = p.A * (psi + p.y_H) * (psi + p.y_L) / _buyer_weighted(psi, p)
    phi = z / p.M
    phi_next = phi / (1.0 + p.mu)
    s_star = optimal_s_bargaining(p.M, p.A, psi, phi, p).selected
    mu_bar_b = mu_bar_bargaining(p)
    monetary = p.mu <= mu_bar_b + REGIME_TOL
    notes = []
    if not monetary:
        notes.append(f"mu={p.mu!r} exceeds mu_bar_b={mu_bar_b!r}: money is not held")
    transfers = nash_bargain(p.M, s_star, psi, phi, p)

    alpha1 = derive_coefficients(p).alpha1
    coefficients = {
        "c1m": phi - p.beta * phi_next,
        "c2m": 0.25 * p.lam * phi_next * _buyer_weighted(psi, p) / (psi + p.y_L),
        "c3m": (psi + p.y_H) * (psi + p.y_L) * s_star / (_buyer_weighted(psi, p) * phi_next) - p.mu * p.M,
        "c4m": 0.25 * p.lam * phi_next,
        "c5m": _seller_price(psi, p) * s_star / phi_next - p.mu * p.M,
        "c1a": psi - p.beta * (psi + p.R),
        "c2a": alpha1 + 0.25 * p.lam * p.theta * (p.y_H - p.y_L),
        "c3a": z / _seller_price(psi, p),
    }
    return BargainingEquilibrium(
        psi_star=psi, good_returns=True, z_star=z, s_star=s_star, mu_bar_b=mu_bar_b,
        monetary=monetary, incompatibility=(lhs, rhs), transfers=transfers,
        notes=tuple(notes), coefficients=coefficients,
    )
