"""Exact pointwise evaluation of the transmuted geometric distribution TGD(q, alpha).

The family is obtained by pushing the geometric cdf F(y) = 1 - q**(y+1)
through the quadratic rank transmutation map F -> (1 + alpha)*F - alpha*F**2.
Support is {0, 1, 2, ...}.  alpha = 0 recovers the plain geometric law GD(q),
alpha = 1 is the minimum of two independent GD(q) draws (equal in law to
GD(q**2)), and alpha = -1 is the maximum of two.

Everything in this module is a pure function of immutable values; instances
may be shared freely across threads.
"""

from __future__ import annotations

import math
import operator
from dataclasses import dataclass, field
from enum import Enum

__all__ = [
    "ParameterError",
    "Params",
    "HazardBehavior",
    "HazardClass",
    "from_continuous_rate",
    "transmuted_exponential_cdf",
    "pmf",
    "cdf",
    "survival",
    "hazard",
    "reversed_hazard",
    "hazard_class",
    "pgf",
    "quantile",
    "median",
    "is_unimodal",
    "mode",
]


class ParameterError(ValueError):
    """An argument fell outside its mathematical domain."""


# Round-off this small is snapped onto [0, 1]; anything larger is a real bug
# and must surface, not be masked.
_CLAMP_SLACK = 1e-15

# Probability comparisons treat values within this distance of the target as
# having reached it, so that points where the cdf hits a rational probability
# exactly (in real arithmetic) resolve to the mathematical answer instead of
# depending on the last ulp of a particular evaluation order.
_HIT_SLACK = 1e-12


def _clamp_unit(x: float, what: str) -> float:
    if x < 0.0:
        if x > -_CLAMP_SLACK:
            return 0.0
        raise AssertionError(f"{what} = {x!r} escapes [0, 1] beyond round-off")
    if x > 1.0:
        if x <= 1.0 + _CLAMP_SLACK:
            return 1.0
        raise AssertionError(f"{what} = {x!r} escapes [0, 1] beyond round-off")
    return x


def _as_integer(y: object, name: str = "y") -> int:
    try:
        return operator.index(y)
    except TypeError:
        raise ParameterError(f"{name} must be an integer, got {y!r}") from None


def _require_support_point(y: object) -> int:
    y = _as_integer(y)
    if y < 0:
        raise ParameterError(f"y must be a non-negative integer, got {y}")
    return y


@dataclass(frozen=True)
class Params:
    """Validated parameter pair of one TGD(q, alpha) distribution.

    q is the geometric survival ratio, strictly inside (0, 1).  alpha is the
    transmutation weight on the closed interval [-1, 1]; both endpoints are
    admitted because they are the valid max-of-two / min-of-two limit laws.
    The complement p = 1 - q is computed once at construction.
    """

    q: float
    alpha: float
    p: float = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        q = float(self.q)
        alpha = float(self.alpha)
        if not 0.0 < q < 1.0:
            raise ParameterError(f"q must lie strictly inside (0, 1), got {self.q!r}")
        if not -1.0 <= alpha <= 1.0:
            raise ParameterError(f"alpha must lie in [-1, 1], got {self.alpha!r}")
        object.__setattr__(self, "q", q)
        object.__setattr__(self, "alpha", alpha)
        object.__setattr__(self, "p", 1.0 - q)


def from_continuous_rate(beta: float, alpha: float) -> Params:
    """Parameters of the integer-floor discretization of the transmuted
    exponential law with rate ``beta``: q = exp(-beta).

    The resulting pmf satisfies pmf(y) = C(y+1) - C(y) where C is
    :func:`transmuted_exponential_cdf` with the same rate and weight.
    """
    beta = float(beta)
    if not beta > 0.0:
        raise ParameterError(f"beta must be positive, got {beta!r}")
    q = math.exp(-beta)
    if q == 0.0:
        raise ParameterError(f"beta = {beta!r} too large: exp(-beta) underflows to 0")
    if q == 1.0:
        raise ParameterError(f"beta = {beta!r} too small: exp(-beta) rounds to 1")
    return Params(q, alpha)


def transmuted_exponential_cdf(x: float, beta: float, alpha: float) -> float:
    """cdf of the transmuted exponential with rate ``beta`` and weight ``alpha``.

    Continuous counterpart of TGD used by the discretization identity; zero
    for x <= 0.
    """
    if not beta > 0.0:
        raise ParameterError(f"beta must be positive, got {beta!r}")
    if x <= 0.0:
        return 0.0
    g = -math.expm1(-beta * x)
    return _clamp_unit((1.0 + alpha) * g - alpha * g * g, "cdf")


def pmf(params: Params, y: int) -> float:
    """P(Y = y).

    Evaluated in the factored form (1-q)*q**y*((1-alpha) + alpha*q**y*(1+q)),
    whose bracket is strictly positive over the whole parameter box, so the
    result cannot go negative by cancellation.
    """
    y = _require_support_point(y)
    q, a = params.q, params.alpha
    qy = q**y
    return _clamp_unit((1.0 - q) * qy * ((1.0 - a) + a * qy * (1.0 + q)), "pmf")


def cdf(params: Params, y: int) -> float:
    """P(Y <= y); zero for negative y."""
    y = _as_integer(y)
    if y < 0:
        return 0.0
    q, a = params.q, params.alpha
    z = q ** (y + 1)
    return _clamp_unit(1.0 + (a - 1.0) * z - a * z * z, "cdf")


def survival(params: Params, y: int) -> float:
    """Inclusive tail P(Y >= y); identically 1 for y <= 0.

    Satisfies survival(y) = 1 - cdf(y - 1).
    """
    y = _as_integer(y)
    if y <= 0:
        return 1.0
    q, a = params.q, params.alpha
    z = q**y
    return _clamp_unit((1.0 - a) * z + a * z * z, "survival")


def hazard(params: Params, y: int) -> float:
    """Hazard rate P(Y = y) / P(Y >= y), a value in (0, 1).

    Computed from the reduced ratio 1 - q*B(y+1)/B(y) with
    B(y) = (1-alpha) + alpha*q**y, which avoids forming the two nearly
    cancelling tail probabilities separately.
    """
    y = _require_support_point(y)
    q, a = params.q, params.alpha
    qy = q**y
    num = (1.0 - a) + a * q * qy
    den = (1.0 - a) + a * qy
    return _clamp_unit(1.0 - q * num / den, "hazard")


def reversed_hazard(params: Params, y: int) -> float:
    """Reversed hazard rate P(Y = y) / P(Y <= y), a value in (0, 1]."""
    y = _require_support_point(y)
    return _clamp_unit(pmf(params, y) / cdf(params, y), "reversed hazard")


class HazardBehavior(Enum):
    INCREASING = "increasing"
    DECREASING = "decreasing"
    CONSTANT = "constant"


@dataclass(frozen=True)
class HazardClass:
    """Monotonicity class of the hazard rate; ``rate`` is set only when the
    hazard is constant and then lies in (0, 1)."""

    behavior: HazardBehavior
    rate: float | None = None


def hazard_class(params: Params) -> HazardClass:
    """Classify the hazard: increasing for alpha < 0, decreasing for
    0 < alpha < 1, constant for alpha in {0, 1}.

    Constant rates are read off the reduced hazard ratio at y = 0 (1 - q for
    alpha = 0 and 1 - q**2 for alpha = 1) rather than hard-coded.
    """
    a = params.alpha
    if a < 0.0:
        return HazardClass(HazardBehavior.INCREASING)
    if a == 0.0 or a == 1.0:
        return HazardClass(HazardBehavior.CONSTANT, hazard(params, 0))
    return HazardClass(HazardBehavior.DECREASING)


def pgf(params: Params, z: float) -> float:
    """Probability generating function E[z**Y] for |q*z| < 1.

    Evaluated as the two-component mixture
    (1-alpha)*(1-q)/(1-q*z) + alpha*(1-q**2)/(1-q**2*z), which reproduces
    pmf(0) at z = 0 and 1 at z = 1.
    """
    z = float(z)
    q, a = params.q, params.alpha
    if not abs(q * z) < 1.0:
        raise ParameterError(f"pgf requires |q*z| < 1, got q*z = {q * z!r}")
    q2 = q * q
    return (1.0 - a) * (1.0 - q) / (1.0 - q * z) + a * (1.0 - q2) / (1.0 - q2 * z)


def _quantile_root(params: Params, p: float) -> float:
    # Root in (0, 1] of alpha*z**2 + (1-alpha)*z - (1-p) = 0 with z = q**(y+1).
    # The expression 2*(1-p)/(sqrt(disc) + 1 - alpha) is the stable conjugate
    # form of the "+" quadratic root: it is cancellation-free for either sign
    # of alpha and degenerates continuously to the linear solution z = 1 - p
    # as alpha -> 0.
    a = params.alpha
    disc = (1.0 + a) ** 2 - 4.0 * a * p
    return 2.0 * (1.0 - p) / (math.sqrt(disc) + 1.0 - a)


def quantile(params: Params, p: float) -> int:
    """Smallest y >= 0 with cdf(y) >= p, for p in (0, 1).

    The closed-form solution of the quadratic in q**(y+1) supplies the
    starting point; a one-step walk against the cdf pins the exact integer,
    absorbing the off-by-one the raw floor formula commits whenever the
    quadratic root is hit exactly.
    """
    p = float(p)
    if not 0.0 < p < 1.0:
        raise ParameterError(f"quantile level must lie in (0, 1), got {p!r}")
    return _quantile_unchecked(params, p)


def _quantile_unchecked(params: Params, p: float) -> int:
    q = params.q
    z = _quantile_root(params, p)
    y = max(0, math.ceil(math.log(z) / math.log(q)) - 1)
    thr = p - min(_HIT_SLACK, 0.5 * p)
    while cdf(params, y) < thr:
        y += 1
    while y > 0 and cdf(params, y - 1) >= thr:
        y -= 1
    return y


def median(params: Params) -> int:
    """Smallest y with cdf(y) >= 1/2; the p = 0.5 quantile."""
    return quantile(params, 0.5)


def is_unimodal(params: Params) -> bool:
    """True when the pmf rises to an interior mode, i.e. pmf(1) > pmf(0).

    This happens exactly when q*(2+q) > 1 and alpha < -1/(q*(2+q)); the
    threshold q > sqrt(2) - 1 is evaluated in the product form to avoid a
    rounded literal.  Everywhere else the pmf is non-increasing from y = 0.
    """
    q, a = params.q, params.alpha
    t = q * (2.0 + q)
    return t > 1.0 and a < -1.0 / t


def mode(params: Params) -> int:
    """argmax of the pmf, ties broken toward the smaller y.

    The pmf is a two-term mixture of geometric decays, so once it decreases
    it never recovers; a forward scan therefore terminates at the mode.  The
    scan is capped at the point where the whole tail is below double
    precision, purely as a guard.
    """
    if not is_unimodal(params):
        return 0
    q = params.q
    cap = math.ceil(math.log(5e-16) / math.log(q)) + 2
    y = 0
    cur = pmf(params, 0)
    while y < cap:
        nxt = pmf(params, y + 1)
        if nxt <= cur:
            break
        cur = nxt
        y += 1
    return y
