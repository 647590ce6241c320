import numpy as np
import pytest

from monetary_dfm.core import DomainError, ModelParams
from monetary_dfm.dfm import Regime, clear_market, individual_demand, individual_supply

from oracles import walrasian_grid

P = ModelParams(beta=0.9, R=1.0, y_L=0.5, y_H=2.0, lam=1.0)


@pytest.mark.parametrize("price, expected", [(2, (0, 0)), (2.5, (0, 1)), (3, (1, 1))])
def test_individual_supply(price, expected):
    tc = individual_supply(price, 1.0, 2.0, 1.0, 0.5)
    assert (tc.lower, tc.upper) == pytest.approx(expected)


@pytest.mark.parametrize("price, expected", [(5, (0, 0)), (4, (0, 0.75)), (3, (1, 1))])
def test_individual_demand(price, expected):
    tc = individual_demand(price, 3.0, 2.0, 1.0, 2.0)
    assert (tc.lower, tc.upper) == pytest.approx(expected)


def test_correspondence_errors():
    with pytest.raises(DomainError, match="money has no value"):
        individual_supply(1.0, 1.0, 1.0, 0.0, 0.0)
    with pytest.raises(DomainError, match="unbounded demand"):
        individual_demand(0.0, 1.0, 1.0, 1.0, 1.0)


def test_indifference_uses_relative_tolerance():
    assert individual_supply(2.5 * (1 + 1e-14), 1.0, 2.0, 1.0, 0.5).lower == 0.0


def test_clear_market_examples():
    out = clear_market(1.0, 0.5, 2.0, 1.0, P)
    assert (out.p_star, out.q_star, out.Q_star) == pytest.approx((2.5, 0.2, 0.1))
    assert out.regime is Regime.MONEY_CONSTRAINED
    out = clear_market(1.0, 3.0, 2.0, 1.0, P)
    assert (out.p_star, out.q_star) == pytest.approx((3.0, 1.0))
    assert out.regime is Regime.INTERIOR
    out = clear_market(1.0, 10.0, 2.0, 1.0, P)
    assert out.p_star == pytest.approx(4.0) and out.q_star == 1.0
    assert out.regime is Regime.ASSET_CONSTRAINED


@pytest.mark.parametrize("lam", [0.0, 0.3, 1.0])
def test_no_money_no_trade(lam):
    out = clear_market(1.0, 0.0, 2.0, 1.0, P.replace(lam=lam))
    assert out.q_star == 0.0 and out.Q_star == 0.0


def test_degenerate_markets():
    out = clear_market(0.0, 0.0, 2.0, 1.0, P)
    assert out.q_star == 0.0 and out.p_star == pytest.approx(3.25)
    out = clear_market(0.0, 1.0, 2.0, 1.0, P)
    assert out.p_star == pytest.approx(4.0) and out.regime is Regime.ASSET_CONSTRAINED


def test_boundary_continuity():
    # money exactly buys the whole stock at the seller's reservation price
    out = clear_market(1.0, 2.5, 2.0, 1.0, P)
    assert out.q_star == 1.0
    assert out.p_star == pytest.approx(2.5)
    below = clear_market(1.0, 2.5 * (1 - 1e-9), 2.0, 1.0, P)
    above = clear_market(1.0, 2.5 * (1 + 1e-9), 2.0, 1.0, P)
    assert below.q_star == pytest.approx(1.0, abs=1e-8) and above.q_star == 1.0


def test_clearing_invariants(rng):
    for _ in range(500):
        s, m, psi, phi = rng.uniform(0, 2), rng.uniform(0, 5), rng.uniform(0, 10), rng.uniform(0.1, 2)
        p = P.replace(lam=rng.uniform(0, 1))
        out = clear_market(s, m, psi, phi, p)
        assert out.q_star == pytest.approx(min(s, phi * m / (psi + p.y_L)))
        assert out.Q_star == pytest.approx(0.5 * p.lam * out.q_star)
        assert out.Q_star <= 0.5 * p.lam * s + 1e-15
        # price-taking agents are willing to trade q* at p*
        if out.q_star > 0:
            assert out.q_star in individual_supply(out.p_star, s, psi, phi, p.y_L)
            assert out.q_star <= individual_demand(out.p_star, m, psi, phi, p.y_H).upper * (1 + 1e-12)


def test_quantity_monotone_in_money_value(rng):
    for _ in range(200):
        s, m, psi = rng.uniform(0.1, 2), rng.uniform(0.1, 5), rng.uniform(0, 10)
        phis = np.sort(rng.uniform(0.05, 3, size=10))
        q = [clear_market(s, m, psi, phi, P).q_star for phi in phis]
        assert np.all(np.diff(q) >= -1e-15)


def test_grid_oracle_on_examples():
    price, q = walrasian_grid(1.0, 0.5, 2.0, 1.0, 0.5, 2.0)
    assert abs(price - 2.5) <= 1e-4 and q == pytest.approx(0.2, abs=1e-3)
    price, q = walrasian_grid(1.0, 3.0, 2.0, 1.0, 0.5, 2.0)
    assert abs(price - 3.0) <= 1e-4 and q == pytest.approx(1.0, abs=1e-3)


def test_rejects_worthless_money():
    with pytest.raises(DomainError):
        clear_market(1.0, 1.0, 1.0, 0.0, P)


from hypothesis import given, settings  # noqa: E402
from hypothesis import strategies as st  # noqa: E402

positive = st.floats(min_value=1e-3, max_value=50, allow_nan=False)


@settings(max_examples=300, deadline=None)
@given(s=positive, m=positive, psi=st.floats(0, 50), phi=positive)
def test_clearing_price_inside_reservation_band(s, m, psi, phi):
    out = clear_market(s, m, psi, phi, P)
    assert (psi + P.y_L) / phi * (1 - 1e-12) <= out.p_star <= (psi + P.y_H) / phi * (1 + 1e-12)
    assert 0 <= out.q_star <= s
    # buyers never spend more than they hold
    assert out.p_star * out.q_star <= m * (1 + 1e-12)
