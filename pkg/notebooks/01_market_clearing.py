"""
Clearing the decentralized financial market
===========================================

Sellers hold securities, buyers hold money. The clearing price sits on one
of three branches depending on how much the buyers' money is worth.
"""

# %%
from monetary_dfm.core import ModelParams
from monetary_dfm.dfm import clear_market, individual_demand, individual_supply

p = ModelParams(beta=0.9, R=1.0, y_L=0.5, y_H=2.0, lam=1.0)
psi, phi, s = 2.0, 1.0, 1.0

# %%
# Individual correspondences around the seller's reservation price 2.5
for price in (2.0, 2.5, 3.0):
    print(price, individual_supply(price, s, psi, phi, p.y_L))

for price in (3.0, 4.0, 5.0):
    print(price, individual_demand(price, 3.0, psi, phi, p.y_H))

# %%
# Sweep the buyers' money through the three regimes
for m in (0.5, 2.5, 3.0, 4.0, 10.0):
    out = clear_market(s, m, psi, phi, p)
    print(f"m={m:5.1f}  p*={out.p_star:.4f}  q*={out.q_star:.4f}  Q*={out.Q_star:.4f}  {out.regime}")
