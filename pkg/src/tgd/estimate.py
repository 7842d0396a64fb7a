"""Parameter estimation for TGD(q, alpha) from samples of non-negative integers.

Four procedures are implemented:

* proportions  -- match the observed fractions of zeros and ones;
* quantiles    -- match the cdf at two observed points;
* moments      -- least-squares match of the first two raw moments;
* mle          -- maximize the log likelihood.

The first two reduce to one-dimensional root-finding because both defining
equations are linear in alpha; the last two run a multi-start Nelder-Mead
simplex over the closed box (q, alpha) in [1e-6, 1-1e-6] x [-1, 1].

Identifiability caveats, handled explicitly rather than silently:

* alpha = 1 describes the same distribution as (q**2, alpha=0), so fits on
  data from either always report the plain-geometric representation.
* Neither (p0, p1) nor (m1, m2) pins down (q, alpha) everywhere: there is a
  fold region where two distinct interior parameter pairs reproduce the same
  pair of statistics exactly.  The matching fits raise AmbiguousFitError
  carrying every candidate; the optimizing fits return the best point with
  ``converged=False`` and the rivals in ``FitReport.alternatives``.
"""

from __future__ import annotations

import math
import operator
from collections import Counter
from dataclasses import dataclass
from enum import Enum
from typing import Iterable, Mapping, Sequence

import numpy as np
from scipy.optimize import brentq, minimize, minimize_scalar

from .core import Params

__all__ = [
    "EstimationError",
    "AmbiguousFitError",
    "Dataset",
    "Method",
    "FitReport",
    "ingest",
    "dataset_from_counts",
    "fit_proportions",
    "fit_quantiles",
    "moment_objective",
    "fit_moments",
    "log_likelihood",
    "fit_mle",
    "fit",
    "empirical_cdf_anchors",
]

Q_BOX = (1e-6, 1.0 - 1e-6)
ALPHA_BOX = (-1.0, 1.0)
_SCAN_PANELS = 1000
_STARTS_PER_AXIS = 9
_ROOT_XTOL = 1e-13
_ALPHA_CLAMP = 1e-9  # recovered alpha this close to +-1 is clamped, not rejected
_BOUNDARY_TOL = 1e-9
_DUALITY_TOL = 1e-6
_DIP_TOL = 1e-4  # residual dips this small are inspected for tangent roots
_TANGENT_TOL = 1e-11  # a refined dip this close to zero counts as a root


class EstimationError(ValueError):
    """The data cannot be explained, or preconditions are violated."""


class AmbiguousFitError(EstimationError):
    """More than one admissible parameter pair reproduces the inputs exactly.

    ``candidates`` lists every solution found, ordered by increasing alpha.
    """

    def __init__(self, message: str, candidates: Sequence[Params]):
        super().__init__(message)
        self.candidates = tuple(candidates)


# --------------------------------------------------------------------------
# datasets


@dataclass(frozen=True)
class Dataset:
    """Count histogram of a sample with cached raw-moment statistics.

    ``counts`` maps value -> multiplicity.  Multiplicities are floats so that
    population histograms (exact pmf weights) can be fitted; real data always
    arrives through :func:`ingest`, which keeps them integral.
    """

    counts: Mapping[int, float]
    n: float
    mean: float
    m2: float


def ingest(values: Iterable[int]) -> Dataset:
    """Build a dataset from raw observations, validating each one."""
    seq = list(values)
    if not seq:
        raise EstimationError("cannot ingest an empty sample")
    counts: Counter[int] = Counter()
    for i, v in enumerate(seq):
        try:
            iv = operator.index(v)
        except TypeError:
            fv = float(v)
            if not fv.is_integer():
                raise EstimationError(
                    f"non-integer value {v!r} at index {i}"
                ) from None
            iv = int(fv)
        if iv < 0:
            raise EstimationError(f"negative value {v!r} at index {i}")
        counts[iv] += 1
    return dataset_from_counts(counts)


def dataset_from_counts(counts: Mapping[int, float]) -> Dataset:
    """Build a dataset from a value -> count map; counts may be fractional."""
    clean: dict[int, float] = {}
    for value, count in counts.items():
        iv = operator.index(value)
        c = float(count)
        if iv < 0:
            raise EstimationError(f"negative value {value!r} in counts")
        if not c >= 0.0:
            raise EstimationError(f"count for value {value!r} must be >= 0, got {count!r}")
        if c > 0.0:
            clean[iv] = clean.get(iv, 0.0) + c
    if not clean:
        raise EstimationError("counts hold no mass")
    n = math.fsum(clean.values())
    mean = math.fsum(y * c for y, c in clean.items()) / n
    m2 = math.fsum(y * y * c for y, c in clean.items()) / n
    return Dataset(counts=dict(sorted(clean.items())), n=n, mean=mean, m2=m2)


# --------------------------------------------------------------------------
# shared raw-formula helpers (evaluated for arbitrary alpha during
# elimination, so they bypass Params validation on purpose)


def _pmf_formula(q: float, a: float, y: int) -> float:
    qy = q**y
    return (1.0 - q) * qy * ((1.0 - a) + a * qy * (1.0 + q))


def _cdf_formula(q: float, a: float, t: int) -> float:
    z = q ** (t + 1)
    return 1.0 + (a - 1.0) * z - a * z * z


class Method(Enum):
    PROPORTIONS = "proportions"
    QUANTILES = "quantiles"
    MOMENTS = "moments"
    MLE = "mle"


@dataclass(frozen=True)
class FitReport:
    """Estimation outcome.

    ``objective`` is the final residual magnitude (matching fits), sum of
    squared moment errors (moments) or log likelihood (mle);
    ``log_likelihood`` is always evaluated at the fitted parameters so
    methods can be compared.  ``boundary`` names parameters that ended on
    the search box edge; ``alternatives`` lists distribution-distinct
    parameter pairs whose objective ties the reported one.
    """

    params: Params
    method: Method
    objective: float
    converged: bool
    iterations: int
    log_likelihood: float
    boundary: tuple[str, ...] = ()
    alternatives: tuple[Params, ...] = ()


# --------------------------------------------------------------------------
# matching fits: 1-D root finding after eliminating alpha


def _derivative_root(residual, lo: float, hi: float) -> float | None:
    # stationary point of the residual inside (lo, hi), via a bracketed root
    # of the central-difference derivative; well-conditioned even when the
    # residual itself has a double root there.  The step balances rounding
    # against truncation (cube root of double epsilon), clamped so the
    # stencil stays inside the open unit interval.
    h = min(6e-6, lo / 2.0)

    def slope(q: float) -> float:
        return (residual(q + h) - residual(q - h)) / (2.0 * h)

    try:
        s_lo, s_hi = slope(lo), slope(hi)
        if math.isnan(s_lo) or math.isnan(s_hi) or s_lo * s_hi >= 0.0:
            return None
        return float(brentq(slope, lo, hi, xtol=_ROOT_XTOL))
    except (OverflowError, ZeroDivisionError, ValueError):
        return None


def _scan_roots(residual, alpha_of_q) -> tuple[list[tuple[float, float]], int]:
    """All (q, alpha) solving residual(q) = 0 with admissible alpha."""
    lo, hi = Q_BOX
    qs = np.linspace(lo, hi, _SCAN_PANELS + 1)
    vals = np.empty(_SCAN_PANELS + 1)
    for i, q in enumerate(qs):
        try:
            vals[i] = residual(q)
        except (OverflowError, ZeroDivisionError, ValueError):
            vals[i] = math.nan
    roots: list[float] = []
    iterations = 0
    for i in range(_SCAN_PANELS):
        va, vb = vals[i], vals[i + 1]
        if math.isnan(va) or math.isnan(vb):
            continue
        if va == 0.0:
            roots.append(float(qs[i]))
        elif va * vb < 0.0:
            q_root, info = brentq(
                residual, float(qs[i]), float(qs[i + 1]), xtol=_ROOT_XTOL, full_output=True
            )
            roots.append(float(q_root))
            iterations += info.iterations
    if not math.isnan(vals[-1]) and vals[-1] == 0.0:
        roots.append(float(qs[-1]))

    # a same-sign dip of the residual toward zero marks either a tangent
    # (double) root or a root pair inside one panel; the plain sign scan sees
    # neither, so refine the extremum of every such dip
    for i in range(1, _SCAN_PANELS):
        va, vm, vb = vals[i - 1], vals[i], vals[i + 1]
        if math.isnan(va) or math.isnan(vm) or math.isnan(vb) or vm == 0.0:
            continue
        if not (abs(vm) < _DIP_TOL and abs(vm) <= abs(va) and abs(vm) <= abs(vb)):
            continue
        if va * vm <= 0.0 or vm * vb <= 0.0:
            continue  # a sign change already covered above
        sgn = 1.0 if vm > 0.0 else -1.0
        ext = minimize_scalar(
            lambda q: sgn * residual(q),
            bounds=(float(qs[i - 1]), float(qs[i + 1])),
            method="bounded",
            options={"xatol": 1e-12},
        )
        f_ext = sgn * float(ext.fun)
        if abs(f_ext) <= _TANGENT_TOL:
            # tangent (double) root, possibly with a crossing below float
            # noise; the stationary point locates it far more precisely than
            # the sqrt-conditioned crossings would
            q_t = _derivative_root(residual, float(qs[i - 1]), float(qs[i + 1]))
            roots.append(q_t if q_t is not None else float(ext.x))
        elif sgn * f_ext < 0.0:
            # the extremum genuinely crosses zero: two simple roots inside
            # the panel
            for lo_b, hi_b in ((float(qs[i - 1]), float(ext.x)), (float(ext.x), float(qs[i + 1]))):
                try:
                    q_root, info = brentq(
                        residual, lo_b, hi_b, xtol=_ROOT_XTOL, full_output=True
                    )
                    roots.append(float(q_root))
                    iterations += info.iterations
                except ValueError:
                    pass

    # collapse duplicated detections of one root (a node evaluating to a few
    # ulps of noise can flip sign twice)
    roots.sort()
    deduped: list[float] = []
    for q in roots:
        if not deduped or q - deduped[-1] > 1e-7:
            deduped.append(q)

    admissible: list[tuple[float, float]] = []
    for q in deduped:
        a = alpha_of_q(q)
        if abs(a) <= 1.0 + _ALPHA_CLAMP:
            admissible.append((q, min(1.0, max(-1.0, a))))
    return admissible, iterations


def _collapse_duality(cands: list[tuple[float, float]]) -> list[tuple[float, float]]:
    """Drop alpha=1 solutions whose geometric twin (q**2, 0) is also present;
    the two name the same distribution and the plain-geometric form wins."""
    kept = list(cands)
    for high in cands:
        if abs(high[1] - 1.0) > _DUALITY_TOL:
            continue
        for low in cands:
            if low is high or abs(low[1]) > _DUALITY_TOL:
                continue
            if abs(low[0] - high[0] ** 2) <= _DUALITY_TOL and high in kept:
                kept.remove(high)
    return kept


def _solve_matching(residual, alpha_of_q, kind: str) -> tuple[Params, int]:
    candidates, iterations = _scan_roots(residual, alpha_of_q)
    candidates = _collapse_duality(candidates)
    if not candidates:
        raise EstimationError(
            f"inconsistent {kind}: no admissible (q, alpha) reproduces them"
        )
    if len(candidates) > 1:
        ordered = sorted(candidates, key=lambda c: (c[1], c[0]))
        raise AmbiguousFitError(
            f"ambiguous {kind}: {len(candidates)} admissible parameter pairs "
            "reproduce them exactly; supply a different statistic to decide",
            [Params(q, a) for q, a in ordered],
        )
    q, a = candidates[0]
    return Params(q, a), iterations


def _fit_proportions_full(p0: float, p1: float) -> tuple[Params, int]:
    p0, p1 = float(p0), float(p1)
    if not (p0 > 0.0 and p1 > 0.0):
        raise EstimationError(f"proportions must be positive, got p0={p0!r}, p1={p1!r}")
    if not p0 + p1 < 1.0:
        raise EstimationError(f"proportions must satisfy p0 + p1 < 1, got {p0 + p1!r}")

    def alpha_of_q(q: float) -> float:
        return (p0 - (1.0 - q)) / (q * (1.0 - q))

    def residual(q: float) -> float:
        return _pmf_formula(q, alpha_of_q(q), 1) - p1

    return _solve_matching(residual, alpha_of_q, "proportions")


def fit_proportions(p0: float, p1: float) -> Params:
    """Invert the observed fractions of zeros and ones.

    Both defining equations are linear in alpha, so alpha is eliminated via
    alpha(q) = (p0 - (1 - q)) / (q*(1 - q)) and the remaining equation in q
    is solved by bracketed root-finding over (0, 1).
    """
    return _fit_proportions_full(p0, p1)[0]


def _fit_quantiles_full(t1: int, p1: float, t2: int, p2: float) -> tuple[Params, int]:
    t1, t2 = operator.index(t1), operator.index(t2)
    p1, p2 = float(p1), float(p2)
    if t1 < 0 or not t1 < t2:
        raise EstimationError(f"need 0 <= t1 < t2, got t1={t1}, t2={t2}")
    if not 0.0 < p1 < p2 < 1.0:
        raise EstimationError(f"need 0 < p1 < p2 < 1, got p1={p1!r}, p2={p2!r}")

    def alpha_of_q(q: float) -> float:
        z = q ** (t1 + 1)
        return (z + p1 - 1.0) / (z * (1.0 - z))

    def residual(q: float) -> float:
        return _cdf_formula(q, alpha_of_q(q), t2) - p2

    return _solve_matching(residual, alpha_of_q, "quantiles")


def fit_quantiles(t1: int, p1: float, t2: int, p2: float) -> Params:
    """Invert two cdf observations cdf(t1) = p1, cdf(t2) = p2.

    Same alpha-elimination as :func:`fit_proportions`; from the first
    equation alpha(q) = (z + p1 - 1) / (z*(1 - z)) with z = q**(t1+1).
    """
    return _fit_quantiles_full(t1, p1, t2, p2)[0]


# --------------------------------------------------------------------------
# optimizing fits: multi-start Nelder-Mead over the (q, alpha) box


def _mean_raw2(q: float, a: float) -> tuple[float, float]:
    r1 = q / (1.0 - q)
    r2 = (q * q) / (1.0 - q * q)
    fm1 = (1.0 - a) * r1 + a * r2
    fm2 = 2.0 * ((1.0 - a) * r1 * r1 + a * r2 * r2)
    return fm1, fm1 + fm2


def moment_objective(params: Params, m1: float, m2: float) -> float:
    """(E[Y] - m1)**2 + (E[Y**2] - m2)**2 at the given parameters."""
    mean, raw2 = _mean_raw2(params.q, params.alpha)
    return (mean - m1) ** 2 + (raw2 - m2) ** 2


def _log_bracket(q: float, a: float, y: int) -> float:
    # log of (1-alpha) + alpha*q**y*(1+q); at alpha == 1 the bracket is a
    # pure power whose log is formed directly so large y cannot underflow it.
    if a == 1.0:
        return y * math.log(q) + math.log1p(q)
    return math.log((1.0 - a) + a * q**y * (1.0 + q))


def log_likelihood(params: Params, dataset: Dataset) -> float:
    """Count-weighted log likelihood in the factored form
    n*log(1-q) + n*ybar*log(q) + sum log[(1-alpha) + alpha*q**y*(1+q)].
    """
    q, a = params.q, params.alpha
    total = dataset.n * math.log1p(-q) + dataset.n * dataset.mean * math.log(q)
    for y, c in dataset.counts.items():
        total += c * _log_bracket(q, a, y)
    return total


def _multistart(objective) -> tuple[object, list[object]]:
    """Run Nelder-Mead from the 9x9 start grid; return the best result (ties
    keep the earliest start) and every per-start result."""
    results = []
    best = None
    for a0 in np.linspace(ALPHA_BOX[0], ALPHA_BOX[1], _STARTS_PER_AXIS):
        for q0 in np.linspace(Q_BOX[0], Q_BOX[1], _STARTS_PER_AXIS):
            res = minimize(
                objective,
                np.array([q0, a0]),
                method="Nelder-Mead",
                bounds=[Q_BOX, ALPHA_BOX],
                options={
                    "xatol": 1e-10,
                    "fatol": 1e-14,
                    "maxiter": 2000,
                    "maxfev": 4000,
                },
            )
            results.append(res)
            if best is None or res.fun < best.fun:
                best = res
    return best, results


def _boundary_flags(q: float, a: float) -> tuple[str, ...]:
    flags = []
    if q <= Q_BOX[0] + _BOUNDARY_TOL or q >= Q_BOX[1] - _BOUNDARY_TOL:
        flags.append("q")
    if a <= ALPHA_BOX[0] + _BOUNDARY_TOL or a >= ALPHA_BOX[1] - _BOUNDARY_TOL:
        flags.append("alpha")
    return tuple(flags)


def _canonical_and_rivals(best, results, objective, tie_tol):
    """Resolve the best point against the alpha=1 duality and collect
    distribution-distinct rivals whose objective ties it."""
    q, a = float(best.x[0]), float(best.x[1])
    fun = float(best.fun)

    # the alpha = 1 ray duplicates the geometric law GD(q**2); report the
    # geometric form whenever its q stays inside the box
    if a >= 1.0 - _BOUNDARY_TOL and Q_BOX[0] <= q * q <= Q_BOX[1]:
        dual = (q * q, 0.0)
        if objective(dual) <= fun + tie_tol:
            q, a = dual
            fun = float(objective(dual))

    rivals: list[tuple[float, float]] = []
    for res in results:
        if not res.success or res.fun > fun + tie_tol:
            continue
        rq, ra = float(res.x[0]), float(res.x[1])
        if ra >= 1.0 - _BOUNDARY_TOL and Q_BOX[0] <= rq * rq <= Q_BOX[1]:
            if objective((rq * rq, 0.0)) <= res.fun + tie_tol:
                rq, ra = rq * rq, 0.0
        if abs(rq - q) <= 1e-5 and abs(ra - a) <= 1e-5:
            continue
        if any(abs(rq - xq) <= 1e-5 and abs(ra - xa) <= 1e-5 for xq, xa in rivals):
            continue
        rivals.append((rq, ra))
    rivals.sort()
    return (q, a), fun, rivals


def _fit_box(objective, dataset: Dataset, method: Method, sign: float,
             tie_tol_of) -> FitReport:
    best, results = _multistart(objective)
    (q, a), fun, rivals = _canonical_and_rivals(
        best, results, objective, tie_tol=tie_tol_of(float(best.fun))
    )
    params = Params(q, a)
    alternatives = tuple(Params(rq, ra) for rq, ra in rivals)
    return FitReport(
        params=params,
        method=method,
        objective=sign * fun,
        converged=bool(best.success) and not alternatives,
        iterations=int(best.nit),
        log_likelihood=log_likelihood(params, dataset),
        boundary=_boundary_flags(q, a),
        alternatives=alternatives,
    )


def fit_moments(dataset: Dataset) -> FitReport:
    """Least-squares moment matching of (mean, second raw moment).

    Always returns the best point found; ``converged`` is false when the
    simplex failed its tolerances or when a distribution-distinct parameter
    pair matches the data equally well (the fold region of the moment map),
    in which case the rivals are reported in ``alternatives``.
    """
    if dataset.n < 2:
        raise EstimationError("moment fitting needs a sample of size >= 2")
    m1, m2 = dataset.mean, dataset.m2

    def objective(x) -> float:
        mean, raw2 = _mean_raw2(float(x[0]), float(x[1]))
        return (mean - m1) ** 2 + (raw2 - m2) ** 2

    # a rival counts as an equal-quality solution when its objective is
    # within the simplex convergence floor (curvature times xatol**2, which
    # scales like the squared data magnitude) or within relative noise of a
    # non-zero best
    scale = (1.0 + m2) ** 2

    def tie_tol(best_fun: float) -> float:
        return max(3e-20 * scale, 1e-6 * best_fun)

    return _fit_box(objective, dataset, Method.MOMENTS, sign=1.0, tie_tol_of=tie_tol)


def fit_mle(dataset: Dataset) -> FitReport:
    """Maximum likelihood over the box; ``objective`` is the final log
    likelihood.  Best-found semantics, same convergence reporting as
    :func:`fit_moments`."""
    if dataset.n < 2:
        raise EstimationError("maximum likelihood needs a sample of size >= 2")
    items = tuple(dataset.counts.items())
    n, mean = dataset.n, dataset.mean

    def objective(x) -> float:
        q, a = float(x[0]), float(x[1])
        ll = n * math.log1p(-q) + n * mean * math.log(q)
        for y, c in items:
            ll += c * _log_bracket(q, a, y)
        return -ll

    def tie_tol(best_fun: float) -> float:
        return 1e-9 * (1.0 + abs(best_fun))

    return _fit_box(objective, dataset, Method.MLE, sign=-1.0, tie_tol_of=tie_tol)


# --------------------------------------------------------------------------
# dataset-driven dispatch (shared with the CLI)


def empirical_cdf_anchors(
    dataset: Dataset, lo: float = 0.25, hi: float = 0.75
) -> tuple[int, float, int, float]:
    """Default (t1, p1, t2, p2) for the quantile fit: the smallest values at
    which the empirical cdf reaches ``lo`` and ``hi``, with the empirical cdf
    evaluated there."""
    total = 0.0
    t1 = t2 = None
    p1 = p2 = 0.0
    for y, c in dataset.counts.items():
        total += c
        ecdf = total / dataset.n
        if t1 is None and ecdf >= lo:
            t1, p1 = y, ecdf
        if t2 is None and ecdf >= hi:
            t2, p2 = y, ecdf
            break
    if t1 is None or t2 is None or t1 == t2:
        raise EstimationError(
            "sample quantile anchors coincide; choose anchors explicitly"
        )
    return t1, p1, t2, p2


def _report_for_matching(params: Params, method: Method, dataset: Dataset,
                         objective: float, iterations: int) -> FitReport:
    return FitReport(
        params=params,
        method=method,
        objective=objective,
        converged=True,
        iterations=iterations,
        log_likelihood=log_likelihood(params, dataset),
        boundary=_boundary_flags(params.q, params.alpha),
    )


def fit(
    dataset: Dataset,
    method: Method | str,
    quantile_anchors: tuple[int, float, int, float] | None = None,
) -> FitReport:
    """Dispatch a dataset to one of the four estimators and wrap the result
    in a FitReport.  ``quantile_anchors`` overrides the default 25th/75th
    percentile policy of the quantile method."""
    method = Method(method)
    if method is Method.MOMENTS:
        return fit_moments(dataset)
    if method is Method.MLE:
        return fit_mle(dataset)
    if method is Method.PROPORTIONS:
        p0 = dataset.counts.get(0, 0.0) / dataset.n
        p1 = dataset.counts.get(1, 0.0) / dataset.n
        params, iters = _fit_proportions_full(p0, p1)
        resid = max(
            abs(_pmf_formula(params.q, params.alpha, 0) - p0),
            abs(_pmf_formula(params.q, params.alpha, 1) - p1),
        )
        return _report_for_matching(params, method, dataset, resid, iters)
    anchors = quantile_anchors or empirical_cdf_anchors(dataset)
    t1, p1, t2, p2 = anchors
    params, iters = _fit_quantiles_full(t1, p1, t2, p2)
    resid = max(
        abs(_cdf_formula(params.q, params.alpha, t1) - p1),
        abs(_cdf_formula(params.q, params.alpha, t2) - p2),
    )
    return _report_for_matching(params, method, dataset, resid, iters)
