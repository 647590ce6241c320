import numpy as np
import pytest

from monetary_dfm.bargaining import nash_bargain, solve_bargaining_equilibrium
from monetary_dfm.simulation import run_simulation

from oracles import expected_min_sides, expected_min_sides_direct


def test_min_sides_formula_matches_direct_sum():
    for N, lam in [(1, 0.5), (2, 1.0), (7, 0.3), (30, 0.7), (41, 1.0)]:
        assert expected_min_sides(N, lam) == pytest.approx(expected_min_sides_direct(N, lam), rel=1e-12)


def test_deterministic(canonical):
    a = run_simulation(canonical, 1000, 20, seed=3)
    b = run_simulation(canonical, 1000, 20, seed=3)
    assert a == b
    assert run_simulation(canonical, 1000, 20, seed=4) != a


def test_no_entry_no_trade(canonical):
    p = canonical.replace(lam=0.0, mu=canonical.beta - 1)
    stats = run_simulation(p, 1000, 20, seed=1)
    assert stats.mean_Q == 0.0 and stats.surplus == 0.0


def test_price_is_the_clearing_price(canonical):
    stats = run_simulation(canonical, 2000, 10, seed=5, record=True)
    traded = ~np.isnan(stats.per_period["price"])
    # dollar price m/s with m = M = 1 and s = A = 1
    assert np.all(stats.per_period["price"][traded] == 1.0)


def test_conservation(canonical):
    for protocol in ("price_taking", "bargaining"):
        stats = run_simulation(canonical.replace(lam=0.7), 3000, 30, seed=2, protocol=protocol)
        assert stats.max_imbalance <= 1e-9


@pytest.mark.parametrize("lam", [0.5, 0.8, 1.0])
def test_matches_finite_population_expectation(canonical, lam):
    # trade is limited by the short side of the realized market
    # same runs as the acceptance check, compared with the exact finite-N mean
    N, T = 100_000, 200
    stats = run_simulation(canonical.replace(lam=lam), N, T, seed=2024)
    expected = canonical.A * expected_min_sides(N, lam) / N
    assert abs(stats.mean_Q - expected) <= 3 * stats.se_Q
    gain = canonical.y_H - canonical.y_L
    assert abs(stats.surplus - expected * gain) <= 3 * stats.se_surplus


def test_bargaining_volume_unbiased(canonical):
    p = canonical.replace(mu=-0.07)
    N, T = 20_000, 200
    stats = run_simulation(p, N, T, seed=13, protocol="bargaining")
    eq = solve_bargaining_equilibrium(p)
    deal = nash_bargain(p.M, eq.s_star, eq.psi_star, eq.z_star / p.M, p)
    # a random entrant pair is mixed with probability 1/2
    assert stats.expected_Q == pytest.approx(0.25 * p.lam * deal.d_s)
    assert abs(stats.mean_Q - stats.expected_Q) <= 3 * stats.se_Q


def test_standard_error_definition(canonical):
    stats = run_simulation(canonical, 500, 40, seed=9, record=True)
    q = stats.per_period["Q"]
    assert stats.se_Q == pytest.approx(np.std(q, ddof=1) / np.sqrt(40))


def test_odd_population_rejected_for_bargaining(canonical):
    with pytest.raises(ValueError, match="even"):
        run_simulation(canonical, 101, 5, seed=0, protocol="bargaining")


def test_per_period_csv(canonical, tmp_path):
    stats = run_simulation(canonical, 200, 5, seed=0, record=True)
    out = tmp_path / "pp.csv"
    stats.write_per_period(out)
    lines = out.read_text().splitlines()
    assert lines[0] == "period,Q,price,surplus" and len(lines) == 6
    assert b"\r" not in out.read_bytes()
    with pytest.raises(ValueError):
        run_simulation(canonical, 200, 5, seed=0).write_per_period(out)
