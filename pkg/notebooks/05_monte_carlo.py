"""
Agent-level simulation
======================

Each period every agent draws a type, enters the market with probability
lambda and trades at the analytic price. Realized volume is capped by the
short side of the market, so in a finite population it sits slightly below
the continuum value (lambda/2) A.
"""

# %%
import time

from monetary_dfm.core import ModelParams
from monetary_dfm.simulation import run_simulation

p = ModelParams(beta=0.9, R=1.0, y_L=0.0, y_H=3.0, lam=0.8, mu=0.0)

# %%
start = time.perf_counter()
stats = run_simulation(p, N=100_000, T=200, seed=2024)
print(f"{time.perf_counter() - start:.2f}s")
for key, value in stats.summary().items():
    print(f"{key:>17} {value}")

# %%
gap = (stats.mean_Q - 0.5 * p.lam * p.A) / stats.se_Q
print(f"distance from the continuum value: {gap:+.1f} standard errors")

# %%
pairs = run_simulation(p.replace(mu=-0.07), N=100_000, T=50, seed=1, protocol="bargaining")
print(pairs.mean_Q, pairs.expected_Q, pairs.se_Q)
