"""Model primitives, derived return coefficients and case classification."""
from __future__ import annotations

import enum
import warnings
from dataclasses import dataclass, fields
from typing import Mapping

# absolute tolerance used to detect alpha_sum == 0
KNIFE_EDGE_TOL = 1e-12


class ValidationError(ValueError):
    """Raised when a parameter record violates the model's assumptions.

    ``errors`` holds one ``(field, message)`` pair per violated bound.
    """

    def __init__(self, errors):
        self.errors = list(errors)
        super().__init__("; ".join(f"{name}: {msg}" for name, msg in self.errors))


class DomainError(ValueError):
    """An operation was evaluated outside the region where it is defined."""


class NoEquilibriumError(RuntimeError):
    """No monetary equilibrium exists for the requested policy."""


class ParameterWarning(UserWarning):
    pass


FRIEDMAN_TOL = 1e-12


@dataclass(frozen=True)
class ModelParams:
    """Primitives of the economy.

    ``lam`` is the probability of accessing the decentralized financial
    market and ``theta`` the seller's bargaining weight (used only by the
    bargaining protocol). ``M`` only fixes the nominal scale.
    """

    beta: float
    R: float
    y_L: float
    y_H: float
    lam: float
    theta: float = 0.5
    mu: float = 0.0
    A: float = 1.0
    M: float = 1.0

    def __post_init__(self):
        # a rate within rounding of the Friedman rule is the Friedman rule
        if 0.0 < self.beta < 1.0 and self.beta - 1.0 - FRIEDMAN_TOL <= self.mu < self.beta - 1.0:
            object.__setattr__(self, "mu", self.beta - 1.0)
        errors = _check(self)
        if errors:
            raise ValidationError(errors)

    def replace(self, **changes) -> "ModelParams":
        values = {f.name: getattr(self, f.name) for f in fields(self)}
        values.update(changes)
        return ModelParams(**values)

    def as_dict(self) -> dict:
        return {f.name: getattr(self, f.name) for f in fields(self)}


PARAM_NAMES = tuple(f.name for f in fields(ModelParams))
REQUIRED_PARAMS = ("beta", "R", "y_L", "y_H", "lam", "mu")


def _check(p) -> list:
    errors = []
    if not 0.0 < p.beta < 1.0:
        errors.append(("beta", "beta out of (0,1)"))
    if not p.R > 0.0:
        errors.append(("R", "R > 0 violated"))
    if not p.y_L >= 0.0:
        errors.append(("y_L", "y_L >= 0 violated"))
    if not p.y_L < p.y_H:
        errors.append(("y_L", "y_L < y_H violated"))
    if not p.y_H > p.R:
        errors.append(("y_H", "y_H > R violated"))
    if not 0.0 <= p.lam <= 1.0:
        errors.append(("lam", "lambda out of [0,1]"))
    if not 0.0 < p.theta < 1.0:
        errors.append(("theta", "theta out of (0,1)"))
    if not p.A > 0.0:
        errors.append(("A", "A > 0 violated"))
    if not p.M > 0.0:
        errors.append(("M", "M > 0 violated"))
    # only meaningful once beta itself is sane
    if 0.0 < p.beta < 1.0 and not p.mu >= p.beta - 1.0:
        errors.append(("mu", f"mu >= beta - 1 = {p.beta - 1.0!r} violated (below the Friedman rule)"))
    return errors


def validate_params(raw: Mapping) -> ModelParams:
    """Build a :class:`ModelParams` from a plain mapping.

    Every violated bound is collected into a single :class:`ValidationError`.
    A positive expected excess return of the risky security is legal but
    unusual, so it only triggers a :class:`ParameterWarning`.
    """
    raw = dict(raw)
    if "lambda" in raw:
        raw["lam"] = raw.pop("lambda")
    errors = []
    unknown = sorted(set(raw) - set(PARAM_NAMES))
    for key in unknown:
        errors.append((key, "unknown parameter"))
    for key in REQUIRED_PARAMS:
        if key not in raw:
            errors.append((key, f"{'lambda' if key == 'lam' else key} required"))
    if errors:
        raise ValidationError(errors)
    values = {}
    for key, value in raw.items():
        try:
            values[key] = float(value)
        except (TypeError, ValueError):
            errors.append((key, f"not a number: {value!r}"))
    if errors:
        raise ValidationError(errors)
    params = ModelParams(**values)
    alpha1 = derive_coefficients(params).alpha1
    if alpha1 > 0:
        warnings.warn(f"alpha1 = {alpha1:g} > 0", ParameterWarning, stacklevel=2)
    return params


@dataclass(frozen=True)
class DerivedCoefficients:
    alpha1: float  # expected excess return of the security over the safe dividend
    alpha2: float  # expected gain from reallocating one unit in the DFM
    alpha_sum: float


class CaseLabel(enum.Enum):
    NO_TRADE = "NoTradeCase"
    KNIFE_EDGE = "KnifeEdgeCase"
    ACTIVE = "ActiveCase"

    def __str__(self):
        return self.value


def derive_coefficients(p: ModelParams) -> DerivedCoefficients:
    alpha1 = 0.5 * (p.y_L + p.y_H) - p.R
    alpha2 = 0.5 * p.lam * (p.y_H - p.y_L)
    return DerivedCoefficients(alpha1, alpha2, alpha1 + alpha2)


def fundamental_price(p: ModelParams) -> float:
    """Discounted value of the safe dividend stream, beta R / (1 - beta)."""
    return p.beta * p.R / (1.0 - p.beta)


def classify_case(c: DerivedCoefficients) -> CaseLabel:
    if abs(c.alpha_sum) <= KNIFE_EDGE_TOL:
        return CaseLabel.KNIFE_EDGE
    return CaseLabel.ACTIVE if c.alpha_sum > 0 else CaseLabel.NO_TRADE


def case_of(p: ModelParams) -> CaseLabel:
    return classify_case(derive_coefficients(p))


def expected_high_return(p: ModelParams) -> float:
    """(1/2)[(1+lam) y_H + (1-lam) y_L], the return of a security that is
    reallocated to a high type whenever the DFM opens."""
    return 0.5 * ((1.0 + p.lam) * p.y_H + (1.0 - p.lam) * p.y_L)
