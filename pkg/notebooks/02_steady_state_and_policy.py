"""
Steady-state asset price and the range of admissible money growth
=================================================================
"""

# %%
import numpy as np

from monetary_dfm.core import ModelParams, fundamental_price
from monetary_dfm.steady_state import (
    dpsi_dmu, mu_bar_closed_form, mu_bar_root, psi_max, psi_of_mu, solve_steady_state,
)

p = ModelParams(beta=0.9, R=1.0, y_L=0.0, y_H=3.0, lam=1.0, mu=0.0)
ss = solve_steady_state(p)
for key, value in ss.as_dict().items():
    print(f"{key:>20} {value}")

# %%
# The bound on money growth, two ways
print("closed form", mu_bar_closed_form(p))
print("bisection  ", mu_bar_root(p))
print("psi at the bound", psi_of_mu(p, mu_bar_closed_form(p)), "fundamental", fundamental_price(p))

# %%
# Price over the policy range: highest at the Friedman rule, falling to
# the fundamental value at the bound
mus = np.linspace(p.beta - 1, mu_bar_closed_form(p), 6)
for mu in mus:
    print(f"mu={mu:+.3f}  psi={psi_of_mu(p, mu):8.4f}  dpsi/dmu={dpsi_dmu(p, mu):9.3f}")
print("psi_max", psi_max(p))

# %%
# Welfare: the reallocation surplus does not depend on inflation
for mu in mus[:-1]:
    print(solve_steady_state(p.replace(mu=float(mu))).welfare_surplus)
