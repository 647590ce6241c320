"""
Bilateral bargaining instead of price taking
============================================

Under Nash bargaining the asset ends up priced at its fundamental value.
"""

# %%
from monetary_dfm.bargaining import bargaining_thresholds, nash_bargain, solve_bargaining_equilibrium
from monetary_dfm.core import ModelParams, fundamental_price
from monetary_dfm.steady_state import solve_steady_state

p = ModelParams(beta=0.9, R=1.0, y_L=0.0, y_H=3.0, lam=1.0, theta=0.5, mu=0.0)

# %%
# Transfers as the buyer's money rises through the regime thresholds
th = bargaining_thresholds(1.0, 9.0, 1.0, p)
print(th)
for m_bar in (5.0, th.m_l, 10.4, th.m_h, 12.0):
    out = nash_bargain(m_bar, 1.0, 9.0, 1.0, p)
    print(f"m_bar={m_bar:7.4f}  d_m={out.d_m:7.4f}  d_s={out.d_s:.6f}  {sorted(map(str, out.binding))}")

# %%
eq = solve_bargaining_equilibrium(p)
ss = solve_steady_state(p)
print("fundamental     ", fundamental_price(p))
print("price taking psi", ss.psi_star, "mu_bar  ", ss.mu_bar)
print("bargaining psi  ", eq.psi_star, "mu_bar_b", eq.mu_bar_b)
print("clearing levels cannot meet:", eq.incompatibility)
print(eq.notes)
