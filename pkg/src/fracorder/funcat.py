"""Catalog of test functions with exact derivatives and closed fractional forms.

Every entry evaluates itself and its classical derivative exactly, and knows
the closed-form fractional derivatives that exist for it (power functions
under Caputo and Caputo-Fabrizio, piecewise-constant-derivative functions
under both kernels, the exponential under Caputo-Fabrizio).  Where no closed
form exists, ``closed_form_fractional`` returns ``None`` and operators fall
back to quadrature.
"""

import enum
import math
import re
from abc import ABC, abstractmethod
from dataclasses import dataclass

import numpy as np

from . import specfun
from .exceptions import DomainError, NonDifferentiableError

__all__ = [
    "AbsShift",
    "Affine",
    "Cosine",
    "Exponential",
    "Interval",
    "OperatorKind",
    "Power",
    "StepAntiderivative",
    "TestFunction",
    "closed_form_fractional",
    "parse_function",
]


class OperatorKind(enum.Enum):
    """Which fractional derivative an error or closed form refers to."""

    RIEMANN_LIOUVILLE = "RL"
    CAPUTO = "C"
    CAPUTO_FABRIZIO = "CF"


@dataclass(frozen=True)
class Interval:
    """A bounded open interval (a, b)."""

    a: float
    b: float

    def __post_init__(self) -> None:
        if not (math.isfinite(self.a) and math.isfinite(self.b)):
            raise DomainError(f"interval endpoints must be finite, got {self!r}")
        if not self.a < self.b:
            raise DomainError(f"interval requires a < b, got {self!r}")

    @property
    def width(self) -> float:
        return self.b - self.a


def _check_order(alpha: float) -> float:
    alpha = float(alpha)
    if not (0.0 < alpha < 1.0):
        raise DomainError(f"fractional order must lie in (0, 1), got {alpha!r}")
    return alpha


class TestFunction(ABC):
    """A catalog function: exact values, exact derivative, known closed forms."""

    @abstractmethod
    def value(self, t: float) -> float:
        """Pointwise value f(t)."""

    @abstractmethod
    def derivative(self, t: float) -> float:
        """Classical derivative f'(t); raises at breakpoints."""

    def breakpoints(self) -> tuple[float, ...]:
        """Points where f or f' has a kink or jump."""
        return ()

    def value_array(self, ts: np.ndarray) -> np.ndarray:
        return np.array([self.value(float(t)) for t in ts])

    def derivative_array(self, ts: np.ndarray) -> np.ndarray:
        return np.array([self.derivative(float(t)) for t in ts])

    def _closed_form(self, kind: OperatorKind, alpha: float, a: float, t: float) -> float | None:
        return None


def closed_form_fractional(
    f: TestFunction, kind: OperatorKind, alpha, a: float, t: float
) -> float | None:
    """Closed-form fractional derivative of ``f`` at ``t``, or ``None``.

    The Riemann-Liouville form is assembled from the Caputo one via
    RL = f(a) (t-a)^(-alpha) / Gamma(1-alpha) + Caputo, so it exists exactly
    when the Caputo form does.
    """
    alpha = _check_order(getattr(alpha, "alpha", alpha))
    if not t > a:
        raise DomainError(f"evaluation point must satisfy t > a, got t={t}, a={a}")
    if kind is OperatorKind.RIEMANN_LIOUVILLE:
        cap = f._closed_form(OperatorKind.CAPUTO, alpha, a, t)
        if cap is None:
            return None
        sing = f.value(a) * (t - a) ** (-alpha) / specfun.gamma(1.0 - alpha)
        return sing + cap
    return f._closed_form(kind, alpha, a, t)


def _cf_rate(alpha: float) -> float:
    return alpha / (1.0 - alpha)


#: non-integer exponents route E_{1,gamma} through the series, which loses
#: accuracy left of roughly -15; beyond that the caller falls back to quadrature
_ML_SERIES_TRUST = -15.0


@dataclass(frozen=True)
class Power(TestFunction):
    """f(t) = (t - origin)^gamma_exp with gamma_exp > 0."""

    gamma_exp: float
    origin: float = 0.0

    def __post_init__(self) -> None:
        if not (self.gamma_exp > 0 and math.isfinite(self.gamma_exp)):
            raise DomainError(f"power exponent must be positive, got {self.gamma_exp!r}")
        if not math.isfinite(self.origin):
            raise DomainError(f"power origin must be finite, got {self.origin!r}")

    def _is_integer_exp(self) -> bool:
        return self.gamma_exp == round(self.gamma_exp)

    def value(self, t: float) -> float:
        u = t - self.origin
        if u < 0 and not self._is_integer_exp():
            raise DomainError(
                f"(t - origin)^{self.gamma_exp} undefined for t={t} < origin={self.origin}"
            )
        return u**self.gamma_exp

    def derivative(self, t: float) -> float:
        u = t - self.origin
        g = self.gamma_exp
        if u < 0 and not self._is_integer_exp():
            raise DomainError(
                f"derivative of (t - origin)^{g} undefined for t={t} < origin={self.origin}"
            )
        if u == 0.0:
            if g > 1:
                return 0.0
            if g == 1:
                return 1.0
            return math.inf  # integrable singularity of t^(g-1), g < 1
        return g * u ** (g - 1.0)

    def value_array(self, ts: np.ndarray) -> np.ndarray:
        u = np.asarray(ts, dtype=float) - self.origin
        if not self._is_integer_exp() and np.any(u < 0):
            raise DomainError("power function evaluated left of its origin")
        return u**self.gamma_exp

    def derivative_array(self, ts: np.ndarray) -> np.ndarray:
        u = np.asarray(ts, dtype=float) - self.origin
        if not self._is_integer_exp() and np.any(u < 0):
            raise DomainError("power derivative evaluated left of its origin")
        with np.errstate(divide="ignore"):
            return self.gamma_exp * u ** (self.gamma_exp - 1.0)

    def _closed_form(self, kind: OperatorKind, alpha: float, a: float, t: float) -> float | None:
        if a != self.origin:
            return None
        g = self.gamma_exp
        u = t - a
        if kind is OperatorKind.CAPUTO:
            return specfun.gamma(g + 1.0) / specfun.gamma(g - alpha + 1.0) * u ** (g - alpha)
        if kind is OperatorKind.CAPUTO_FABRIZIO:
            z = -_cf_rate(alpha) * u
            if not self._is_integer_exp() and z < _ML_SERIES_TRUST:
                return None
            ml = specfun.mittag_leffler_one(g, z)
            return (g / alpha) * u ** (g - 1.0) * (1.0 - specfun.gamma(g) * ml)
        return None


@dataclass(frozen=True)
class Affine(TestFunction):
    """f(t) = slope * t + intercept."""

    slope: float
    intercept: float

    def __post_init__(self) -> None:
        if not (math.isfinite(self.slope) and math.isfinite(self.intercept)):
            raise DomainError(f"affine coefficients must be finite, got {self!r}")

    def value(self, t: float) -> float:
        return self.slope * t + self.intercept

    def derivative(self, t: float) -> float:
        return self.slope

    def value_array(self, ts: np.ndarray) -> np.ndarray:
        return self.slope * np.asarray(ts, dtype=float) + self.intercept

    def derivative_array(self, ts: np.ndarray) -> np.ndarray:
        return np.full(np.shape(ts), self.slope)

    def _closed_form(self, kind: OperatorKind, alpha: float, a: float, t: float) -> float | None:
        u = t - a
        if kind is OperatorKind.CAPUTO:
            return self.slope * u ** (1.0 - alpha) / specfun.gamma(2.0 - alpha)
        if kind is OperatorKind.CAPUTO_FABRIZIO:
            return -self.slope / alpha * math.expm1(-_cf_rate(alpha) * u)
        return None


@dataclass(frozen=True)
class Exponential(TestFunction):
    """f(t) = e^t."""

    def value(self, t: float) -> float:
        return math.exp(t)

    def derivative(self, t: float) -> float:
        return math.exp(t)

    def value_array(self, ts: np.ndarray) -> np.ndarray:
        return np.exp(np.asarray(ts, dtype=float))

    derivative_array = value_array

    def _closed_form(self, kind: OperatorKind, alpha: float, a: float, t: float) -> float | None:
        if kind is OperatorKind.CAPUTO_FABRIZIO:
            # (1/(1-alpha)) int_a^t e^tau e^(-rate (t-tau)) dtau collapses to
            # e^t - e^a e^(-rate (t-a)); written via expm1 to survive t near a
            u = t - a
            return math.exp(a) * (math.expm1(u) - math.expm1(-_cf_rate(alpha) * u))
        return None


@dataclass(frozen=True)
class Cosine(TestFunction):
    """f(t) = cos t."""

    def value(self, t: float) -> float:
        return math.cos(t)

    def derivative(self, t: float) -> float:
        return -math.sin(t)

    def value_array(self, ts: np.ndarray) -> np.ndarray:
        return np.cos(np.asarray(ts, dtype=float))

    def derivative_array(self, ts: np.ndarray) -> np.ndarray:
        return -np.sin(np.asarray(ts, dtype=float))


@dataclass(frozen=True)
class AbsShift(TestFunction):
    """f(t) = |t - center|."""

    center: float

    def __post_init__(self) -> None:
        if not math.isfinite(self.center):
            raise DomainError(f"center must be finite, got {self.center!r}")

    def value(self, t: float) -> float:
        return abs(t - self.center)

    def derivative(self, t: float) -> float:
        if t == self.center:
            raise NonDifferentiableError(f"|t - {self.center}| has no derivative at t={t}")
        return 1.0 if t > self.center else -1.0

    def breakpoints(self) -> tuple[float, ...]:
        return (self.center,)

    def _closed_form(self, kind: OperatorKind, alpha: float, a: float, t: float) -> float | None:
        c = self.center
        if kind is OperatorKind.CAPUTO:
            unit = (t - a) ** (1.0 - alpha) / specfun.gamma(2.0 - alpha)
            if c <= a:
                return unit
            if t <= c:
                return -unit
            return (2.0 * (t - c) ** (1.0 - alpha) - (t - a) ** (1.0 - alpha)) / specfun.gamma(
                2.0 - alpha
            )
        if kind is OperatorKind.CAPUTO_FABRIZIO:
            rate = _cf_rate(alpha)
            unit = -math.expm1(-rate * (t - a)) / alpha
            if c <= a:
                return unit
            if t <= c:
                return -unit
            return (1.0 - 2.0 * math.exp(-rate * (t - c)) + math.exp(-rate * (t - a))) / alpha
        return None


@dataclass(frozen=True)
class StepAntiderivative(TestFunction):
    """Antiderivative of a step function: f(t) = int sum_i q_i chi_[a_i,b_i].

    ``breaks`` holds the disjoint, ordered subintervals [a_i, b_i] and
    ``heights`` the step values q_i.  The integrand vanishes left of the
    first subinterval, so f is 0 there and piecewise linear afterwards.
    """

    breaks: tuple[tuple[float, float], ...]
    heights: tuple[float, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "breaks", tuple(tuple(map(float, ab)) for ab in self.breaks))
        object.__setattr__(self, "heights", tuple(map(float, self.heights)))
        if len(self.breaks) != len(self.heights) or not self.breaks:
            raise DomainError("breaks and heights must be non-empty and equally long")
        prev_end = -math.inf
        for (lo, hi), q in zip(self.breaks, self.heights):
            if not (math.isfinite(lo) and math.isfinite(hi) and math.isfinite(q)):
                raise DomainError("step data must be finite")
            if not lo < hi:
                raise DomainError(f"subinterval [{lo}, {hi}] is empty")
            if lo < prev_end:
                raise DomainError("subintervals must be ordered and non-overlapping")
            prev_end = hi

    def value(self, t: float) -> float:
        total = 0.0
        for (lo, hi), q in zip(self.breaks, self.heights):
            overlap = min(t, hi) - lo
            if overlap > 0:
                total += q * overlap
        return total

    def derivative(self, t: float) -> float:
        for (lo, hi), q in zip(self.breaks, self.heights):
            if t == lo or t == hi:
                raise NonDifferentiableError(f"step function jumps at t={t}")
            if lo < t < hi:
                return q
        return 0.0

    def breakpoints(self) -> tuple[float, ...]:
        return tuple(sorted({x for ab in self.breaks for x in ab}))

    def _closed_form(self, kind: OperatorKind, alpha: float, a: float, t: float) -> float | None:
        total = 0.0
        if kind is OperatorKind.CAPUTO:
            for (lo, hi), q in zip(self.breaks, self.heights):
                lo = max(lo, a)
                hi = min(hi, t)
                if hi <= lo:
                    continue
                total += q * ((t - lo) ** (1.0 - alpha) - (t - hi) ** (1.0 - alpha))
            return total / specfun.gamma(2.0 - alpha)
        if kind is OperatorKind.CAPUTO_FABRIZIO:
            rate = _cf_rate(alpha)
            for (lo, hi), q in zip(self.breaks, self.heights):
                lo = max(lo, a)
                hi = min(hi, t)
                if hi <= lo:
                    continue
                total += q * (math.exp(-rate * (t - hi)) - math.exp(-rate * (t - lo)))
            return total / alpha
        return None


_AFFINE_RE = re.compile(r"^affine:([^,]+),([^,]+)$")


def parse_function(text: str) -> TestFunction:
    """Build a catalog entry from a string id.

    Supported forms: ``power:<gamma>[,<origin>]``, ``affine:<slope>,<intercept>``,
    ``exp``, ``cos``, ``abs:<center>``, ``step:a1,b1,q1;a2,b2,q2;...``.
    """
    text = text.strip()
    if text == "exp":
        return Exponential()
    if text == "cos":
        return Cosine()
    try:
        if text.startswith("power:"):
            parts = [float(x) for x in text[len("power:"):].split(",")]
            if len(parts) == 1:
                return Power(parts[0])
            if len(parts) == 2:
                return Power(parts[0], parts[1])
        elif text.startswith("abs:"):
            return AbsShift(float(text[len("abs:"):]))
        elif m := _AFFINE_RE.match(text):
            return Affine(float(m.group(1)), float(m.group(2)))
        elif text.startswith("step:"):
            breaks = []
            heights = []
            for piece in text[len("step:"):].split(";"):
                lo, hi, q = (float(x) for x in piece.split(","))
                breaks.append((lo, hi))
                heights.append(q)
            return StepAntiderivative(tuple(breaks), tuple(heights))
    except DomainError:
        raise
    except ValueError as exc:
        raise DomainError(f"malformed function id {text!r}: {exc}") from exc
    raise DomainError(f"unknown function id {text!r}")
