"""
Off-steady-state paths
======================

Real balances follow a linear recurrence with slope above one, so every
path that starts away from the fixed point explodes.
"""

# %%
import numpy as np

from monetary_dfm.core import ModelParams
from monetary_dfm.dynamics import psi_step, real_balance_map, simulate_path

p = ModelParams(beta=0.9, R=1.0, y_L=0.0, y_H=3.0, lam=1.0, mu=0.0)
lmap = real_balance_map(p)
print(lmap, "fixed point", lmap.fixed_point)

# %%
for z0 in (lmap.fixed_point, 13.501, 13.4, 0.0):
    path = simulate_path(z0, 250, lmap, p)
    print(f"z0={z0:8.4f} stationary={path.stationary} diverged_at={path.diverged_at} z[50]={path.z[50]:.4g}")

# %%
# Distance from the fixed point grows by exactly the slope each period
path = simulate_path(13.501, 10, lmap, p)
ratio = np.abs(path.z[1:] - path.z_star) / np.abs(path.z[:-1] - path.z_star)
print(ratio)

# %%
# The asset price recurrence moves away on both sides
print(psi_step(13.4, p), psi_step(13.6, p))
