"""Agent-level Monte-Carlo of the decentralized financial market.

Quasi-linear preferences make the start-of-period portfolio degenerate, so
every agent is re-endowed with the steady-state holdings each period.

Random numbers come from a single ``numpy.random.PCG64`` stream seeded with
``seed``. Each period draws, in this order: N uniforms for types (H if
``u >= 1/2``), N uniforms for DFM entry (enter if ``u < lam``) and, for the
bargaining protocol only, one permutation of the entrants.
"""
from __future__ import annotations

import csv
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .bargaining import nash_bargain, solve_bargaining_equilibrium
from .core import ModelParams
from .dfm import clear_market, individual_demand, individual_supply
from .steady_state import solve_steady_state

PROTOCOLS = ("price_taking", "bargaining")


@dataclass(frozen=True)
class SimStats:
    mean_Q: float
    se_Q: float
    mean_price: float
    surplus: float
    se_surplus: float
    periods: int
    agents: int
    seed: int
    protocol: str
    expected_Q: float
    expected_surplus: float
    max_imbalance: float
    per_period: Optional[dict] = field(default=None, repr=False, compare=False)

    def summary(self) -> dict:
        return {k: getattr(self, k) for k in (
            "protocol", "agents", "periods", "seed", "mean_Q", "se_Q", "expected_Q",
            "surplus", "se_surplus", "expected_surplus", "mean_price", "max_imbalance")}

    def write_per_period(self, path) -> None:
        if self.per_period is None:
            raise ValueError("run_simulation was called with record=False")
        rec = self.per_period
        with open(path, "w", newline="") as fh:
            w = csv.writer(fh, lineterminator="\n")
            w.writerow(["period", "Q", "price", "surplus"])
            for t in range(self.periods):
                w.writerow([int(rec["period"][t]), repr(float(rec["Q"][t])),
                            repr(float(rec["price"][t])), repr(float(rec["surplus"][t]))])


def _se(x):
    return float(np.std(x, ddof=1) / np.sqrt(len(x))) if len(x) > 1 else float("nan")


def _imbalance(sold, bought, scale):
    return abs(sold - bought) / max(scale, 1.0)


def run_simulation(p: ModelParams, N: int, T: int, seed: int,
                   protocol: str = "price_taking", record: bool = False) -> SimStats:
    """Simulate ``T`` DFM sessions with ``N`` agents at the steady state.

    Under price taking all entrants trade at the analytic clearing price;
    whichever side of the market is long is rationed pro rata. Under
    bargaining, entrants are paired uniformly at random and only mixed
    (L, H) pairs trade.
    """
    if protocol not in PROTOCOLS:
        raise ValueError(f"protocol must be one of {PROTOCOLS}")
    if N < 2 or T < 1:
        raise ValueError("need N >= 2 and T >= 1")
    if protocol == "bargaining" and N % 2:
        raise ValueError("bargaining needs an even number of agents: pairing undefined")

    gain = p.y_H - p.y_L
    rng = np.random.Generator(np.random.PCG64(seed))
    Q = np.zeros(T)
    price = np.full(T, np.nan)
    max_imbalance = 0.0

    if protocol == "price_taking":
        ss = solve_steady_state(p)
        s, m = ss.s_star, p.M
        trade = ss.z_star > 0 and s > 0
        if trade:
            phi = ss.z_star / p.M
            psi = ss.psi_star
            p_star = clear_market(s, m, psi, phi, p).p_star
            offer = individual_supply(p_star, s, psi, phi, p.y_L).selected
            want = individual_demand(p_star, m, psi, phi, p.y_H).selected
        expected_Q = ss.Q_star
        for t in range(T):
            is_high = rng.random(N) >= 0.5
            enters = rng.random(N) < p.lam
            if not trade:
                continue
            sellers = enters & ~is_high
            buyers = enters & is_high
            supply = offer * np.count_nonzero(sellers)
            demand = want * np.count_nonzero(buyers)
            volume = min(supply, demand)
            if volume <= 0:
                continue
            sold = np.where(sellers, offer * volume / supply, 0.0)
            bought = np.where(buyers, want * volume / demand, 0.0)
            paid = p_star * bought
            received = p_star * sold
            # holdings after the session must stay feasible
            if np.any(s - sold < -1e-12 * s) or np.any(m - paid < -1e-12 * m):
                raise RuntimeError("infeasible transfer in DFM session")
            max_imbalance = max(max_imbalance,
                                _imbalance(sold.sum(), bought.sum(), N * s),
                                _imbalance(received.sum(), paid.sum(), N * m))
            Q[t] = volume / N
            price[t] = p_star
    else:
        eq = solve_bargaining_equilibrium(p)
        s, m = eq.s_star, p.M
        trade = eq.good_returns and s > 0
        if trade:
            phi = eq.z_star / p.M
            deal = nash_bargain(m, s, eq.psi_star, phi, p)
        expected_Q = 0.25 * p.lam * deal.d_s if trade else 0.0
        for t in range(T):
            is_high = rng.random(N) >= 0.5
            enters = rng.random(N) < p.lam
            idx = np.flatnonzero(enters)
            idx = rng.permutation(idx)
            if not trade:
                continue
            pairs = idx[: 2 * (idx.size // 2)].reshape(-1, 2)
            mixed = pairs[is_high[pairs[:, 0]] != is_high[pairs[:, 1]]]
            if mixed.size == 0:
                continue
            first_high = is_high[mixed[:, 0]]
            buyer = np.where(first_high, mixed[:, 0], mixed[:, 1])
            seller = np.where(first_high, mixed[:, 1], mixed[:, 0])
            ds = np.zeros(N)
            dm = np.zeros(N)
            ds[seller] -= deal.d_s
            ds[buyer] += deal.d_s
            dm[seller] += deal.d_m
            dm[buyer] -= deal.d_m
            max_imbalance = max(max_imbalance, abs(ds.sum()) / max(N * s, 1.0),
                                abs(dm.sum()) / max(N * m, 1.0))
            Q[t] = mixed.shape[0] * deal.d_s / N
            price[t] = deal.d_m / deal.d_s

    surplus = Q * gain
    traded = ~np.isnan(price)
    per_period = None
    if record:
        per_period = {"period": np.arange(T), "Q": Q, "price": price, "surplus": surplus}
    return SimStats(
        mean_Q=float(Q.mean()),
        se_Q=_se(Q),
        mean_price=float(price[traded].mean()) if traded.any() else float("nan"),
        surplus=float(surplus.mean()),
        se_surplus=_se(surplus),
        periods=T,
        agents=N,
        seed=seed,
        protocol=protocol,
        expected_Q=expected_Q,
        expected_surplus=expected_Q * gain,
        max_imbalance=float(max_imbalance),
        per_period=per_period,
    )
