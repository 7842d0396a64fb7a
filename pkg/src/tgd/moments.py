"""Moment pipeline for TGD(q, alpha).

The factorial moments of the two-component mixture,

    E[Y_(r)] = (1-alpha) * r! * (q/(1-q))**r + alpha * r! * (q**2/(1-q**2))**r,

are the single closed-form entry point.  Raw moments follow through Stirling
numbers of the second kind, central moments by binomial recentring, factorial
cumulants by the standard moment-to-cumulant conversion, and the shape
measures from the central moments.  No other published polynomial form is
used as an implementation path.
"""

from __future__ import annotations

import math
import operator
from dataclasses import dataclass

from .core import ParameterError, Params

__all__ = [
    "MomentSet",
    "stirling2",
    "factorial_moment",
    "raw_moment",
    "central_moment",
    "factorial_cumulant",
    "index_of_dispersion",
    "skewness_beta1",
    "kurtosis_beta2",
    "summarize",
]

_STIRLING_MAX = 20
_MAX_ORDER = 4


def stirling2(n: int, k: int) -> int:
    """Stirling number of the second kind S(n, k), exact.

    Guarded at n <= 20 so the recurrence stays in exactly representable
    territory for every downstream float use.
    """
    n = operator.index(n)
    k = operator.index(k)
    if not 0 <= k <= n:
        raise ParameterError(f"stirling2 requires 0 <= k <= n, got n={n}, k={k}")
    if n > _STIRLING_MAX:
        raise ParameterError(f"stirling2 is limited to n <= {_STIRLING_MAX}, got n={n}")
    row = [1]  # S(0, 0)
    for m in range(1, n + 1):
        new = [0] * (m + 1)
        for j in range(1, m + 1):
            new[j] = j * (row[j] if j < len(row) else 0) + row[j - 1]
        row = new
    return row[k]


def _check_order(r: int, lo: int, what: str) -> int:
    r = operator.index(r)
    if not lo <= r <= _MAX_ORDER:
        raise ParameterError(f"{what} order must lie in {lo}..{_MAX_ORDER}, got {r}")
    return r


def factorial_moment(params: Params, r: int) -> float:
    """r-th factorial moment E[Y*(Y-1)*...*(Y-r+1)], any r >= 1.

    OverflowError propagates once r! leaves the double range.
    """
    r = operator.index(r)
    if r < 1:
        raise ParameterError(f"factorial moment order must be >= 1, got {r}")
    q, a = params.q, params.alpha
    fact = float(math.factorial(r))
    ratio1 = q / (1.0 - q)
    ratio2 = (q * q) / (1.0 - q * q)
    value = (1.0 - a) * fact * ratio1**r + a * fact * ratio2**r
    if math.isinf(value):
        raise OverflowError(f"factorial moment of order {r} exceeds the float range")
    return value


def raw_moment(params: Params, r: int) -> float:
    """r-th raw moment E[Y**r] for r in 1..4, via Stirling conversion."""
    r = _check_order(r, 1, "raw moment")
    return sum(stirling2(r, j) * factorial_moment(params, j) for j in range(1, r + 1))


def central_moment(params: Params, r: int) -> float:
    """r-th central moment E[(Y - E[Y])**r] for r in 2..4."""
    r = _check_order(r, 2, "central moment")
    mean = factorial_moment(params, 1)
    total = 0.0
    for j in range(r + 1):
        raw_j = 1.0 if j == 0 else raw_moment(params, j)
        total += math.comb(r, j) * (-mean) ** (r - j) * raw_j
    return total


def factorial_cumulant(params: Params, r: int) -> float:
    """r-th factorial cumulant for r in 1..4, converted from the factorial
    moments by the standard moment-to-cumulant relations."""
    r = _check_order(r, 1, "factorial cumulant")
    m1 = factorial_moment(params, 1)
    if r == 1:
        return m1
    m2 = factorial_moment(params, 2)
    if r == 2:
        return m2 - m1 * m1
    m3 = factorial_moment(params, 3)
    if r == 3:
        return m3 - 3.0 * m2 * m1 + 2.0 * m1**3
    m4 = factorial_moment(params, 4)
    return m4 - 4.0 * m3 * m1 - 3.0 * m2 * m2 + 12.0 * m2 * m1 * m1 - 6.0 * m1**4


def index_of_dispersion(params: Params) -> float:
    """Variance over mean; strictly greater than 1 everywhere on the
    parameter box (the family is always overdispersed)."""
    return central_moment(params, 2) / factorial_moment(params, 1)


def skewness_beta1(params: Params) -> float:
    """Pearson moment-ratio skewness mu3**2 / mu2**3 (non-negative)."""
    return central_moment(params, 3) ** 2 / central_moment(params, 2) ** 3


def kurtosis_beta2(params: Params) -> float:
    """Pearson kurtosis mu4 / mu2**2."""
    return central_moment(params, 4) / central_moment(params, 2) ** 2


@dataclass(frozen=True)
class MomentSet:
    """Bundle of every moment quantity for one parameter pair.

    ``raw``, ``factorial`` and ``factorial_cumulant`` hold orders 1..4;
    ``central`` holds orders 2..4.
    """

    mean: float
    variance: float
    raw: tuple[float, float, float, float]
    central: tuple[float, float, float]
    factorial: tuple[float, float, float, float]
    factorial_cumulant: tuple[float, float, float, float]
    index_of_dispersion: float
    beta1: float
    beta2: float


def summarize(params: Params) -> MomentSet:
    """Evaluate the full moment bundle for one parameter pair."""
    mean = factorial_moment(params, 1)
    variance = central_moment(params, 2)
    return MomentSet(
        mean=mean,
        variance=variance,
        raw=tuple(raw_moment(params, r) for r in (1, 2, 3, 4)),
        central=tuple(central_moment(params, r) for r in (2, 3, 4)),
        factorial=tuple(factorial_moment(params, r) for r in (1, 2, 3, 4)),
        factorial_cumulant=tuple(factorial_cumulant(params, r) for r in (1, 2, 3, 4)),
        index_of_dispersion=variance / mean,
        beta1=skewness_beta1(params),
        beta2=kurtosis_beta2(params),
    )
