"""
Asset price against money growth
================================

Writes the plot-ready CSV that the ``sweep`` command produces.
"""

# %%
import io

from monetary_dfm import cli
from monetary_dfm.config import parse_config

cfg = parse_config(None, {"beta": 0.9, "R": 1, "y_L": 0, "y_H": 3, "lambda": 1, "mu": 0,
                          "var": "mu", "from": -0.1, "to": 0.2, "points": 31})
buf = io.StringIO()
cli.cmd_sweep(cfg, out=buf)
print(buf.getvalue())

# %%
# The same sweep over market access
cfg = parse_config(None, {"beta": 0.9, "R": 1, "y_L": 0, "y_H": 3, "lambda": 1, "mu": 0,
                          "var": "lambda", "from": 0.0, "to": 1.0, "points": 11})
buf = io.StringIO()
cli.cmd_sweep(cfg, out=buf)
print(buf.getvalue())
