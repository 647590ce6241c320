"""Stationary monetary equilibrium under price taking.

The asset price solves the knife-edge condition of the portfolio problem
with constant real balances; real balances then follow from market clearing
``phi M = (psi + y_L) A``.
"""
from __future__ import annotations

from dataclasses import dataclass, field, replace
from typing import Optional, Tuple

from scipy import optimize

from .core import (
    CaseLabel,
    NoEquilibriumError,
    ModelParams,
    case_of,
    derive_coefficients,
    expected_high_return,
    fundamental_price,
)
from .investment import gamma_coefficients, carry_cost_check

POLICY_TOL = 1e-12
KNIFE_EDGE_RTOL = 1e-10


@dataclass(frozen=True)
class PolicyRange:
    mu_min: float
    mu_bar: float

    def __contains__(self, mu) -> bool:
        return self.mu_min - POLICY_TOL <= mu <= self.mu_bar + POLICY_TOL


@dataclass(frozen=True)
class Welfare:
    trade_value: float
    surplus: float
    first_best: bool


@dataclass(frozen=True)
class SteadyState:
    psi_star: float
    z_star: float
    s_star: float
    p_star_real: float
    q_star: float
    Q_star: float
    liquidity_premium: float
    welfare_trade_value: float
    welfare_surplus: float
    first_best: bool
    case: CaseLabel
    mu_bar: Optional[float] = None
    notes: Tuple[str, ...] = field(default=())

    def as_dict(self) -> dict:
        return {
            "psi_star": self.psi_star,
            "z_star": self.z_star,
            "s_star": self.s_star,
            "p_star_real": self.p_star_real,
            "q_star": self.q_star,
            "Q_star": self.Q_star,
            "liquidity_premium": self.liquidity_premium,
            "welfare_trade_value": self.welfare_trade_value,
            "welfare_surplus": self.welfare_surplus,
            "first_best": self.first_best,
            "case": str(self.case),
            "mu_bar": self.mu_bar,
        }


def psi_of_mu(p: ModelParams, mu: Optional[float] = None) -> float:
    """Steady-state asset price as a function of money growth.

    Without gains from DFM trade the asset is priced at its fundamental value.
    """
    mu = p.mu if mu is None else mu
    if case_of(p) is CaseLabel.NO_TRADE:
        return fundamental_price(p)
    return (p.beta * expected_high_return(p) - (1.0 + mu - p.beta) * p.y_L) / (2.0 * (1.0 - p.beta) + mu)


def dpsi_dmu(p: ModelParams, mu: Optional[float] = None) -> float:
    mu = p.mu if mu is None else mu
    if case_of(p) is CaseLabel.NO_TRADE:
        return 0.0
    numerator = p.beta * expected_high_return(p) + (1.0 - p.beta) * p.y_L
    return -numerator / (2.0 * (1.0 - p.beta) + mu) ** 2


def psi_max(p: ModelParams) -> float:
    """Asset price at the Friedman rule."""
    return p.beta / (1.0 - p.beta) * expected_high_return(p)


def mu_bar_closed_form(p: ModelParams) -> float:
    alpha_sum = derive_coefficients(p).alpha_sum
    return p.beta - 1.0 + p.beta * (1.0 - p.beta) * alpha_sum / (p.y_L * (1.0 - p.beta) + p.beta * p.R)


def mu_bar_root(p: ModelParams, xtol: float = 1e-12) -> float:
    """Upper policy bound found by bisection on ``psi(mu) - fundamental``.

    The bracket is ten times wider than the analytic offset bound so the
    search does not lean on the closed form.
    """
    alpha_sum = derive_coefficients(p).alpha_sum
    lo = p.beta - 1.0
    hi = lo + 10.0 * p.beta * (1.0 - p.beta) * alpha_sum / (p.beta * p.R)
    fund = fundamental_price(p)

    def gap(mu):
        return psi_of_mu(p, mu) - fund

    g_lo = gap(lo)
    if abs(g_lo) <= 1e-12 * max(1.0, fund):
        return lo
    if hi <= lo or g_lo * gap(hi) > 0:
        raise NoEquilibriumError("range degenerate or misbracketed")
    return optimize.bisect(gap, lo, hi, xtol=xtol, maxiter=200)


def policy_range(p: ModelParams) -> PolicyRange:
    return PolicyRange(p.beta - 1.0, mu_bar_closed_form(p))


def welfare(ss: SteadyState, p: ModelParams) -> Welfare:
    """Real value of DFM trade and the pure reallocation surplus."""
    if ss.case is CaseLabel.NO_TRADE or ss.q_star == 0:
        return Welfare(0.0, 0.0, p.lam == 1.0)
    trade_value = 0.5 * p.lam * p.A * (ss.psi_star + p.y_L)
    surplus = 0.5 * p.lam * p.A * (p.y_H - p.y_L)
    return Welfare(trade_value, surplus, p.lam == 1.0)


def knife_edge_residual(p: ModelParams, psi: float, z: float) -> float:
    """Relative residual of ``g1 + g2 g4 = g3 g4`` at a stationary point."""
    phi = z / p.M
    phi_next = phi / (1.0 + p.mu)
    g = gamma_coefficients((phi, psi), (phi_next, psi), p, derive_coefficients(p))
    scale = max(abs(g.gamma3 * g.gamma4), abs(g.gamma1), abs(g.gamma2 * g.gamma4))
    return abs(g.residual()) / scale if scale > 0 else 0.0


def solve_steady_state(p: ModelParams) -> SteadyState:
    """Assemble the stationary equilibrium for the policy ``p.mu``.

    Raises :class:`NoEquilibriumError` when money growth exceeds the upper
    policy bound: carrying money is then too costly and DFM trade collapses.
    """
    case = case_of(p)
    fund = fundamental_price(p)

    if case is CaseLabel.NO_TRADE:
        notes = ["no DFM trade; asset priced at its fundamental value"]
        if abs(p.mu - (p.beta - 1.0)) <= POLICY_TOL:
            notes.append("money can circulate only because the Friedman rule holds")
        else:
            notes.append("money is not valued: a monetary equilibrium requires the Friedman rule")
        return SteadyState(
            psi_star=fund, z_star=0.0, s_star=0.0, p_star_real=fund + p.y_L,
            q_star=0.0, Q_star=0.0, liquidity_premium=0.0,
            welfare_trade_value=0.0, welfare_surplus=0.0,
            first_best=p.lam == 1.0, case=case, mu_bar=None, notes=tuple(notes),
        )

    mu_bar = mu_bar_closed_form(p)
    if p.mu > mu_bar + POLICY_TOL:
        raise NoEquilibriumError(
            f"monetary equilibrium collapses: mu={p.mu!r} exceeds mu_bar={mu_bar!r}"
        )

    psi = psi_of_mu(p)
    if abs(p.mu - mu_bar) <= POLICY_TOL:
        # the boundary policy prices the asset at exactly its fundamental value
        psi = fund
    z = (psi + p.y_L) * p.A
    phi = z / p.M
    phi_next = phi / (1.0 + p.mu)

    asset_ok, money_ok = carry_cost_check((phi, psi), (phi_next, psi), p)
    if not (asset_ok and money_ok):
        raise NoEquilibriumError("non-negative carry costs violated at the candidate steady state")
    residual = knife_edge_residual(p, psi, z)
    if residual > KNIFE_EDGE_RTOL:
        raise RuntimeError(f"knife-edge condition fails at the steady state (residual {residual:.3e})")

    notes = []
    if case is CaseLabel.KNIFE_EDGE:
        notes.append("zero net return: securitization is indeterminate, maximal selection s*=A reported")
    ss = SteadyState(
        psi_star=psi, z_star=z, s_star=p.A, p_star_real=psi + p.y_L,
        q_star=p.A, Q_star=0.5 * p.lam * p.A, liquidity_premium=psi - fund,
        welfare_trade_value=0.0, welfare_surplus=0.0, first_best=p.lam == 1.0,
        case=case, mu_bar=mu_bar, notes=tuple(notes),
    )
    w = welfare(ss, p)
    return _with_welfare(ss, w)


def _with_welfare(ss: SteadyState, w: Welfare) -> SteadyState:
    return replace(ss, welfare_trade_value=w.trade_value, welfare_surplus=w.surplus, first_best=w.first_best)
