import numpy as np
import pytest

from monetary_dfm.core import CaseLabel, ModelParams, NoEquilibriumError, fundamental_price
from monetary_dfm.steady_state import (
    dpsi_dmu, knife_edge_residual, mu_bar_closed_form, mu_bar_root, policy_range, psi_max,
    psi_of_mu, solve_steady_state,
)

from oracles import random_active_params


def test_canonical_steady_state(canonical):
    ss = solve_steady_state(canonical)
    assert ss.psi_star == pytest.approx(13.5, rel=1e-14)
    assert ss.z_star == pytest.approx(13.5, rel=1e-14)
    assert ss.liquidity_premium == pytest.approx(4.5, rel=1e-13)
    assert ss.welfare_surplus == 1.5
    assert ss.welfare_trade_value == pytest.approx(6.75)
    assert ss.first_best and ss.case is CaseLabel.ACTIVE
    assert (ss.s_star, ss.q_star, ss.Q_star) == (1.0, 1.0, 0.5)
    assert knife_edge_residual(canonical, ss.psi_star, ss.z_star) < 1e-10


def test_collapse_above_bound(canonical):
    with pytest.raises(NoEquilibriumError, match="monetary equilibrium collapses"):
        solve_steady_state(canonical.replace(mu=0.2))


def test_no_trade_case():
    p = ModelParams(beta=0.9, R=1, y_L=0, y_H=1.5, lam=0.0, mu=-0.1)
    ss = solve_steady_state(p)
    assert ss.case is CaseLabel.NO_TRADE
    assert ss.psi_star == pytest.approx(9.0)
    assert any("Friedman rule" in n for n in ss.notes)
    assert psi_of_mu(p) == fundamental_price(p)
    off = solve_steady_state(p.replace(mu=0.0))
    assert any("not valued" in n for n in off.notes)


def test_boundary_policy_prices_fundamental(canonical):
    ss = solve_steady_state(canonical.replace(mu=mu_bar_closed_form(canonical)))
    assert ss.psi_star == fundamental_price(canonical)
    assert ss.liquidity_premium == 0.0


@pytest.mark.parametrize("kw, expected", [
    (dict(beta=0.9, R=1, y_L=0, y_H=3, lam=1), 0.1),
    (dict(beta=0.9, R=1, y_L=0, y_H=2, lam=0.5), -0.05),
])
def test_mu_bar_examples(kw, expected):
    p = ModelParams(**kw)
    assert mu_bar_closed_form(p) == pytest.approx(expected, abs=1e-14)
    assert mu_bar_root(p) == pytest.approx(expected, abs=1e-10)


def test_mu_bar_zero_premium_case():
    # alpha_sum = 0: the range collapses to the Friedman rule
    p = ModelParams(beta=0.9, R=1, y_L=0, y_H=4 / 3, lam=0.5)
    assert mu_bar_closed_form(p) == pytest.approx(p.beta - 1, abs=1e-12)
    assert mu_bar_root(p) == pytest.approx(p.beta - 1, abs=1e-10)


def test_mu_bar_cross_check():
    p = ModelParams(beta=0.96, R=1, y_L=0.5, y_H=2.5, lam=0.8)
    assert mu_bar_root(p) == pytest.approx(mu_bar_closed_form(p), abs=1e-10)


def test_psi_max(canonical):
    # beta/(1-beta) times the expected return of a DFM participant: 9 * 3
    assert psi_max(canonical) == pytest.approx(27.0, rel=1e-14)
    assert psi_max(canonical) == psi_of_mu(canonical, canonical.beta - 1)
    flat = ModelParams(beta=0.9, R=1, y_L=0.5, y_H=3, lam=1)
    assert psi_max(flat) == psi_of_mu(flat, flat.beta - 1)


def test_psi_max_increasing_in_lambda(rng):
    for p in random_active_params(rng, 200):
        slope = p.beta / (2 * (1 - p.beta)) * (p.y_H - p.y_L)
        h = 1e-6
        fd = (psi_max(p.replace(lam=min(p.lam + h, 1.0))) - psi_max(p.replace(lam=p.lam - h))) / (min(p.lam + h, 1.0) - p.lam + h)
        assert fd == pytest.approx(slope, rel=1e-6) and slope > 0


def test_premium_nonnegative_on_policy_range(rng):
    for p in random_active_params(rng, 300):
        rng_ = policy_range(p)
        for mu in np.linspace(rng_.mu_min, rng_.mu_bar, 7):
            assert mu in rng_
            ss = solve_steady_state(p.replace(mu=float(mu)))
            assert ss.liquidity_premium >= -1e-10 * fundamental_price(p)
            assert ss.z_star == (ss.psi_star + p.y_L) * p.A


def test_knife_edge_holds_across_draws(rng):
    for p in random_active_params(rng, 300) + random_active_params(rng, 100, positive_alpha1=True):
        mu = float(rng.uniform(p.beta - 1, mu_bar_closed_form(p)))
        ss = solve_steady_state(p.replace(mu=mu))
        assert knife_edge_residual(p.replace(mu=mu), ss.psi_star, ss.z_star) < 1e-10


def test_derivative_sign(rng):
    for p in random_active_params(rng, 200):
        for mu in np.linspace(p.beta - 1, mu_bar_closed_form(p), 5):
            assert dpsi_dmu(p, float(mu)) < 0


def test_welfare_first_best_flag(canonical):
    assert solve_steady_state(canonical).first_best
    half = canonical.replace(lam=0.5)
    assert not solve_steady_state(half).first_best
