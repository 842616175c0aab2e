"""Empirical convergence orders and the Caputo-Fabrizio/Caputo speed ratio.

``fit_order`` turns an error sweep into a log-log slope.  The ratio
machinery evaluates, for g(t) = t^m on (0, T) with T <= m - 1, the exact L1
errors of both operators in closed form, their quotient at finite beta, and
the beta -> 0 limit ((m-T)/T) / (Psi(m+1) - ln T), from which the
comparison table is generated.
"""

import math
from dataclasses import dataclass

import numpy as np

from . import specfun
from .exceptions import BracketingError, DegenerateFitError, DomainError
from .norms import ErrorReport

__all__ = [
    "OrderFit",
    "RatioResult",
    "fit_order",
    "ratio_cf_over_c_l1",
    "ratio_limit",
    "s_star",
    "t_star",
    "table1",
]

#: a sweep whose log-log residual exceeds this is not a power law
MAX_LOG_RESIDUAL = 0.5
#: a fitted exponent below this means the errors do not decay at all
#: (the Riemann-Liouville case), so no convergence order exists
MIN_DECAY_RATE = 0.05

_T_STAR_TOL = 1e-10
_T_STAR_CAP = 1e6


@dataclass(frozen=True)
class OrderFit:
    """Least-squares power-law fit E(beta) ~ exp(log_c_hat) * beta^r_hat."""

    r_hat: float
    log_c_hat: float
    residual: float
    n_points: int

    def __post_init__(self) -> None:
        if not self.residual >= 0.0:
            raise DomainError(f"residual must be non-negative, got {self.residual!r}")
        if self.n_points < 2:
            raise DomainError("a fit needs at least 2 points")


@dataclass(frozen=True)
class RatioResult:
    """A CF/C error-ratio value, at finite beta or in the beta -> 0 limit."""

    m: int
    T: float
    beta: float | None
    value: float


def fit_order(
    reports: list[ErrorReport],
    *,
    max_residual: float = MAX_LOG_RESIDUAL,
    min_rate: float = MIN_DECAY_RATE,
) -> OrderFit:
    """Fit ln E = r ln beta + ln C through an error sweep.

    Refuses (raises DegenerateFitError) when the data is not a decaying
    power law: zero or negative values, max log-residual above
    ``max_residual``, or a fitted exponent below ``min_rate``.
    """
    if len(reports) < 4:
        raise DomainError(f"need at least 4 sweep points, got {len(reports)}")
    head = reports[0]
    for r in reports[1:]:
        if r.operator_kind is not head.operator_kind or r.p is not head.p or r.interval != head.interval:
            raise DomainError("all sweep reports must share operator kind, norm and interval")
    betas = [r.beta for r in reports]
    if any(x <= y for x, y in zip(betas, betas[1:])):
        raise DomainError("sweep betas must be strictly decreasing")
    values = [r.value for r in reports]
    if any(v <= 0.0 for v in values):
        raise DegenerateFitError(
            "sweep contains non-positive error values; no log-log fit exists"
        )
    x = np.log(betas)
    y = np.log(values)
    slope, intercept = np.polyfit(x, y, 1)
    residual = float(np.max(np.abs(y - (slope * x + intercept))))
    if residual > max_residual:
        raise DegenerateFitError(
            f"errors do not follow a power law (max log-residual {residual:.3g})"
        )
    if slope < min_rate:
        raise DegenerateFitError(
            f"errors do not decay (fitted exponent {slope:.3g} below {min_rate}); "
            "no order of convergence exists"
        )
    return OrderFit(float(slope), float(intercept), residual, len(reports))


def _check_ratio_args(m: int, T: float) -> None:
    if not (isinstance(m, (int, np.integer)) and m >= 2):
        raise DomainError(f"m must be an integer >= 2, got {m!r}")
    if not (0.0 < T <= m - 1):
        raise DomainError(f"T must lie in (0, m-1] = (0, {m - 1}], got {T!r}")


def _check_beta(beta: float) -> float:
    if not (0.0 < beta < 1.0):
        raise DomainError(f"beta must lie in (0, 1), got {beta!r}")
    return float(beta)


def ratio_cf_over_c_l1(m: int, T: float, beta: float) -> RatioResult:
    """Exact finite-beta quotient of the two L1 errors for g(t) = t^m on (0, T).

    numerator   (T^m/(1-beta)) (Gamma(m+1) E_{1,m+1}(-((1-beta)/beta) T) - beta)
    denominator (T^m/Gamma(m+beta+1)) (Gamma(m+beta+1) - Gamma(m+1) T^beta)

    Both hold with fixed sign for T <= m - 1.
    """
    _check_ratio_args(m, T)
    beta = _check_beta(beta)
    rate = (1.0 - beta) / beta
    ml = specfun.mittag_leffler_one(m + 1.0, -rate * T)
    num = T**m / (1.0 - beta) * (specfun.gamma(m + 1.0) * ml - beta)
    # Gamma(m+1+beta) - Gamma(m+1) T^beta cancels to O(beta); factor out
    # Gamma(m+1) and difference the exponentials via expm1
    dg = specfun.ln_gamma(m + 1.0 + beta) - specfun.ln_gamma(m + 1.0)
    bracket = math.expm1(dg) - math.expm1(beta * math.log(T))
    den = T**m / specfun.gamma(m + beta + 1.0) * specfun.gamma(m + 1.0) * bracket
    return RatioResult(int(m), float(T), beta, num / den)


def ratio_limit(m: int, T: float) -> RatioResult:
    """beta -> 0 limit of the CF/C L1 error ratio: ((m-T)/T) / (Psi(m+1) - ln T)."""
    _check_ratio_args(m, T)
    denom = specfun.digamma(m + 1.0) - math.log(T)
    if denom == 0.0:
        # cannot happen for T <= m - 1 since Psi(m+1) > ln(m-1)
        raise DomainError(f"Psi(m+1) equals ln T at m={m}, T={T}")
    return RatioResult(int(m), float(T), None, (m - T) / T / denom)


def t_star(m: int, beta: float) -> float:
    """Root v of Gamma(m) E_{1,m}(-((1-beta)/beta) v) = beta, with v >= m - 1.

    The lower bound m - 1 is a guaranteed bracket end; the upper end is
    found by doubling.  The whole doubling ladder is scanned so that an
    ambiguous (multi-root) bracket is reported instead of silently picking
    one sign change.
    """
    if not (isinstance(m, (int, np.integer)) and m >= 2):
        raise DomainError(f"m must be an integer >= 2, got {m!r}")
    beta = _check_beta(beta)
    rate = (1.0 - beta) / beta
    gm = specfun.gamma(float(m))

    def g(v: float) -> float:
        return gm * specfun.mittag_leffler_one(float(m), -rate * v) - beta

    lo = float(m - 1)
    g_lo = g(lo)
    if g_lo == 0.0:
        return lo
    if g_lo < 0.0:
        if abs(g_lo) < 1e-12:  # root sits at the bound itself, up to rounding
            return lo
        raise BracketingError(
            f"defining function already negative at the lower bound m-1={lo}"
        )
    probes = [lo]
    v = lo
    while v < _T_STAR_CAP:
        v *= 2.0
        probes.append(v)
    signs = [True] + [g(v) > 0.0 for v in probes[1:]]
    flips = [i for i in range(len(signs) - 1) if signs[i] != signs[i + 1]]
    if not flips:
        raise BracketingError(
            f"no sign change found while doubling up to {_T_STAR_CAP} (m={m}, beta={beta})"
        )
    if len(flips) > 1:
        raise BracketingError(
            f"multiple sign changes on the doubling ladder (m={m}, beta={beta})"
        )
    lo = probes[flips[0]]
    hi = probes[flips[0] + 1]
    while hi - lo > _T_STAR_TOL:
        mid = 0.5 * (lo + hi)
        if g(mid) > 0.0:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


def s_star(m: int, beta: float) -> float:
    """Root w of w^beta Gamma(m)/Gamma(m+beta) = 1: w = (Gamma(m+beta)/Gamma(m))^(1/beta)."""
    if not (isinstance(m, (int, np.integer)) and m >= 2):
        raise DomainError(f"m must be an integer >= 2, got {m!r}")
    beta = _check_beta(beta)
    return math.exp((specfun.ln_gamma(m + beta) - specfun.ln_gamma(float(m))) / beta)


def table1() -> list[tuple[int, float, float]]:
    """Limit ratios for m = 3..6 at T = 1 and T = m - 1."""
    return [
        (m, ratio_limit(m, 1.0).value, ratio_limit(m, float(m - 1)).value)
        for m in (3, 4, 5, 6)
    ]
