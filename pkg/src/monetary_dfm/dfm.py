"""Competitive clearing of the decentralized financial market (DFM).

Low-return (L) agents sell securities for money, high-return (H) agents buy.
Prices here are in dollars per security unit; ``phi`` converts dollars into
goods.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass

from .core import DomainError, ModelParams

PRICE_RTOL = 1e-12


class Regime(enum.Enum):
    MONEY_CONSTRAINED = "MoneyConstrained"
    INTERIOR = "Interior"
    ASSET_CONSTRAINED = "AssetConstrained"

    def __str__(self):
        return self.value


@dataclass(frozen=True)
class TradeCorrespondence:
    """Closed interval of optimal trade quantities."""

    lower: float
    upper: float

    @property
    def selected(self) -> float:
        # maximal selection at indifference
        return self.upper

    def __contains__(self, q) -> bool:
        return self.lower <= q <= self.upper


@dataclass(frozen=True)
class DfmOutcome:
    p_star: float
    q_star: float
    Q_star: float
    regime: Regime


def _same_price(p, ref) -> bool:
    return abs(p - ref) <= PRICE_RTOL * max(1.0, abs(p))


def individual_supply(p: float, s: float, psi: float, phi: float, y_L: float) -> TradeCorrespondence:
    """Securities an L-type holding ``s`` offers at dollar price ``p``."""
    if phi <= 0:
        raise DomainError("money has no value; supply undefined")
    reservation = (psi + y_L) / phi
    if _same_price(p, reservation):
        return TradeCorrespondence(0.0, s)
    if p < reservation:
        return TradeCorrespondence(0.0, 0.0)
    return TradeCorrespondence(s, s)


def individual_demand(p: float, m: float, psi: float, phi: float, y_H: float) -> TradeCorrespondence:
    """Securities an H-type holding ``m`` dollars wants at price ``p``."""
    if phi <= 0:
        raise DomainError("money has no value; demand undefined")
    choke = (psi + y_H) / phi
    if p <= 0:
        if m > 0 and choke > 0:
            raise DomainError("unbounded demand")
        return TradeCorrespondence(0.0, 0.0)
    if _same_price(p, choke):
        return TradeCorrespondence(0.0, m / p)
    if p > choke:
        return TradeCorrespondence(0.0, 0.0)
    return TradeCorrespondence(m / p, m / p)


def clear_market(s: float, m: float, psi: float, phi: float, p: ModelParams) -> DfmOutcome:
    """Walrasian clearing of a DFM where every seller holds ``s`` securities
    and every buyer ``m`` dollars.

    ``q_star`` is the per-match quantity; the aggregate volume ``Q_star``
    scales it by the mass ``lam/2`` of sellers that reach the market.

    >>> from monetary_dfm.core import ModelParams
    >>> prm = ModelParams(beta=0.9, R=1, y_L=0.5, y_H=2, lam=1)
    >>> clear_market(1.0, 3.0, 2.0, 1.0, prm).p_star
    3.0
    """
    if phi <= 0:
        raise DomainError("money has no value; the DFM cannot clear")
    if s < 0 or m < 0:
        raise DomainError("holdings must be non-negative")
    real_money = phi * m
    low = (psi + p.y_L) * s
    high = (psi + p.y_H) * s
    tol = PRICE_RTOL * max(1.0, real_money)

    if s == 0:
        if m == 0:
            # nothing to trade: report the midpoint of the two reservation prices
            price = 0.5 * (2 * psi + p.y_L + p.y_H) / phi
            return DfmOutcome(price, 0.0, 0.0, Regime.INTERIOR)
        return DfmOutcome((psi + p.y_H) / phi, 0.0, 0.0, Regime.ASSET_CONSTRAINED)

    if real_money < low - tol:
        price = (psi + p.y_L) / phi
        q = real_money / (psi + p.y_L)
        regime = Regime.MONEY_CONSTRAINED
    elif real_money <= high + tol:
        price = m / s
        q = s
        regime = Regime.INTERIOR
    else:
        price = (psi + p.y_H) / phi
        q = s
        regime = Regime.ASSET_CONSTRAINED
    return DfmOutcome(price, q, 0.5 * p.lam * q, regime)
