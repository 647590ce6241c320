"""Money, asset securitization and trade in a decentralized financial market."""

__version__ = "0.1.0"

from .core import (  # noqa: E402
    CaseLabel, DomainError, ModelParams, NoEquilibriumError, ParameterWarning, ValidationError,
    classify_case, derive_coefficients, fundamental_price, validate_params,
)
from .dfm import clear_market, individual_demand, individual_supply  # noqa: E402
from .investment import gamma_coefficients, carry_cost_check, optimal_s, portfolio_choice  # noqa: E402
from .steady_state import (  # noqa: E402
    mu_bar_closed_form, mu_bar_root, policy_range, psi_of_mu, solve_steady_state,
)
from .dynamics import psi_step, real_balance_map, simulate_path  # noqa: E402
from .bargaining import nash_bargain, solve_bargaining_equilibrium  # noqa: E402
from .simulation import run_simulation  # noqa: E402
from .config import parse_config  # noqa: E402
