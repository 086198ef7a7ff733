"""Limiting spectral laws of random Steiner complexes and the growth constant.

For dimension d and regularity k the empirical Laplacian spectrum converges
to a high-dimensional Kesten-McKay law supported on

    [(sqrt(k-1) - sqrt(d))^2, (sqrt(k-1) + sqrt(d))^2],

with density  k * sqrt(4(k-1)d - (k-1+d-x)^2) / (2 pi x ((d+1)k - x)); the
adjacency law is its reflection through x -> k - x.  The normalized weighted
spanning-tree count converges to the growth constant

    (k-1)^(k-1) / ((k-1-d)^(k/(d+1)-1) * k^((d(k-1)-1)/(d+1))),

which this module evaluates three independent ways: the closed form, adaptive
quadrature of the log-moment of the law, and a Chebyshev log-series whose
coefficients decay geometrically.  Quadrature always substitutes
x = center - half_width*cos(theta), which turns the square-root edge
singularities into smooth trigonometric factors.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import ceil, cos, exp, log, log10, pi, sin, sqrt

import numpy as np
from scipy.integrate import quad

__all__ = [
    "LimitLaw",
    "ChebyshevPlan",
    "chebyshev_t",
    "series_coefficient",
    "series_coefficient_projection",
    "growth_constant_closed",
    "growth_constant_quadrature",
    "growth_constant_chebyshev",
]

QUAD_EPSABS = 1e-12
SERIES_MATCH_ATOL = 1e-10
MOMENT_MAX = 12


@dataclass(frozen=True)
class LimitLaw:
    """Parameters of the limiting spectral laws for a (d, k) pair.

    Derived constants, all determined by d and k:

      half_width   2 sqrt(d(k-1)), half-width of the spectral support
      center       k-1+d, midpoint of the Laplacian support (also the
                   distance from the density pole at 0)
      upper_gap    d(k-1)+1, distance from the pole at (d+1)k to the center
      weight_zero  sqrt(center^2 - half_width^2) = k-1-d
      weight_upper sqrt(upper_gap^2 - half_width^2) = d(k-1)-1
      ratio_zero   2d / half_width, geometric decay tied to the pole at 0
      ratio_upper  2 / half_width, decay tied to the upper pole
      series_t     evaluation point of the log series; coincides with
                   ratio_zero and lies in (0, 1) whenever k >= d+2
    """

    d: int
    k: int
    half_width: float = field(init=False)
    center: int = field(init=False)
    upper_gap: int = field(init=False)
    weight_zero: int = field(init=False)
    weight_upper: int = field(init=False)
    ratio_zero: float = field(init=False)
    ratio_upper: float = field(init=False)
    series_t: float = field(init=False)

    def __post_init__(self) -> None:
        if self.d < 1:
            raise ValueError("need d >= 1")
        if self.k < self.d + 1:
            raise ValueError(f"need k >= d+1 = {self.d + 1}, got k = {self.k}")
        d, k = self.d, self.k
        object.__setattr__(self, "half_width", 2.0 * sqrt(d * (k - 1)))
        object.__setattr__(self, "center", k - 1 + d)
        object.__setattr__(self, "upper_gap", d * (k - 1) + 1)
        object.__setattr__(self, "weight_zero", k - 1 - d)
        object.__setattr__(self, "weight_upper", d * (k - 1) - 1)
        object.__setattr__(self, "ratio_zero", 2.0 * d / self.half_width)
        object.__setattr__(self, "ratio_upper", 2.0 / self.half_width)
        object.__setattr__(self, "series_t", self.ratio_zero)

    @property
    def laplacian_support(self) -> tuple[float, float]:
        return (self.center - self.half_width, self.center + self.half_width)

    @property
    def adjacency_support(self) -> tuple[float, float]:
        lo, hi = self.laplacian_support
        return (self.k - hi, self.k - lo)

    def laplacian_density(self, x: float) -> float:
        """Density of the limiting Laplacian law at x (0 outside the support)."""
        lo, hi = self.laplacian_support
        if x <= lo or x >= hi:
            return 0.0
        disc = 4.0 * (self.k - 1) * self.d - (self.center - x) ** 2
        return self.k * sqrt(max(disc, 0.0)) / (2.0 * pi * x * ((self.d + 1) * self.k - x))

    def adjacency_density(self, x: float) -> float:
        """Density of the limiting adjacency law: the Laplacian law at k - x."""
        return self.laplacian_density(self.k - x)

    def expectation(self, f, epsabs: float = QUAD_EPSABS) -> float:
        """Integral of f against the Laplacian law, singularities substituted away."""
        d, k, center, w = self.d, self.k, self.center, self.half_width

        def integrand(theta: float) -> float:
            x = center - w * cos(theta)
            s = sin(theta)
            return f(x) * k * w * w * s * s / (2.0 * pi * x * ((d + 1) * k - x))

        value, _ = quad(integrand, 0.0, pi, epsabs=epsabs, limit=400)
        return value

    def laplacian_moment(self, ell: int, epsabs: float = 1e-11) -> float:
        """Moment of the Laplacian law by adaptive quadrature."""
        if not 0 <= ell <= MOMENT_MAX:
            raise ValueError(f"moment order must be in [0, {MOMENT_MAX}]")
        return self.expectation(lambda x: x**ell, epsabs=epsabs)

    def adjacency_moment(self, ell: int, epsabs: float = 1e-11) -> float:
        """Moment of the adjacency law, pushed through x -> k - x."""
        if not 0 <= ell <= MOMENT_MAX:
            raise ValueError(f"moment order must be in [0, {MOMENT_MAX}]")
        k = self.k
        return self.expectation(lambda x: (k - x) ** ell, epsabs=epsabs)

    def normalization(self) -> float:
        """Total mass of the Laplacian law; 1 up to quadrature error."""
        return self.expectation(lambda x: 1.0)


def chebyshev_t(m: int, x):
    """Chebyshev polynomial of the first kind by the three-term recurrence."""
    if m < 0:
        raise ValueError("order must be >= 0")
    x = np.asarray(x, dtype=float) if not np.isscalar(x) else x
    prev = np.ones_like(x) if not np.isscalar(x) else 1.0
    if m == 0:
        return prev
    cur = x
    for _ in range(m - 1):
        prev, cur = cur, 2.0 * x * cur - prev
    return cur


def series_coefficient(law: LimitLaw, n: int) -> float:
    """Closed-form Chebyshev coefficient of the weighted density h = g*sqrt(1-x^2).

    Odd orders: (-weight_zero * ratio_zero^n + weight_upper * ratio_upper^n) / (pi (d+1));
    even orders n >= 2 take the negated sum instead.  Decay is geometric with
    ratio max(ratio_zero, ratio_upper).
    """
    if n < 1:
        raise ValueError("coefficients are defined for n >= 1")
    if law.k < law.d + 2:
        raise ValueError("need k >= d+2 for the series expansion")
    scale = pi * (law.d + 1)
    a = law.weight_zero * law.ratio_zero**n
    b = law.weight_upper * law.ratio_upper**n
    return (-a + b) / scale if n % 2 == 1 else -(a + b) / scale


def series_coefficient_projection(law: LimitLaw, n: int, epsabs: float = QUAD_EPSABS) -> float:
    """Chebyshev coefficient by its defining projection integral (2/pi) int T_n g.

    Independent of the closed form; used to cross-check it.
    """
    if n < 1:
        raise ValueError("coefficients are defined for n >= 1")
    d, k = law.d, law.k
    w, center, upper = law.half_width, law.center, law.upper_gap

    def integrand(theta: float) -> float:
        c = cos(theta)
        s = sin(theta)
        g_times_sin = k * w * w * s * s / (2.0 * pi * (center - w * c) * (upper + w * c))
        return cos(n * theta) * g_times_sin

    value, _ = quad(integrand, 0.0, pi, epsabs=epsabs, limit=400)
    return 2.0 / pi * value


@dataclass(frozen=True)
class ChebyshevPlan:
    """Coefficient rule plus a truncation deep enough for a 1e-15 geometric tail."""

    law: LimitLaw
    truncation: int

    @classmethod
    def for_law(cls, law: LimitLaw) -> "ChebyshevPlan":
        ratio = max(law.ratio_zero, law.ratio_upper)
        if not 0.0 < ratio < 1.0:
            raise ValueError("series requires decay ratio in (0, 1), i.e. k >= d+2")
        truncation = ceil(15.0 / -log10(ratio)) + 5
        return cls(law=law, truncation=truncation)

    def coefficient(self, n: int) -> float:
        return series_coefficient(self.law, n)


def growth_constant_closed(d: int, k: int) -> float:
    """Closed-form limit of the normalized weighted spanning-tree count.

    (k-1)^(k-1) / ((k-1-d)^(k/(d+1)-1) * k^((d(k-1)-1)/(d+1))), evaluated in
    the log domain; requires k >= d+2 so the middle base is positive.
    """
    if k < d + 2:
        raise ValueError(f"growth constant needs k >= d+2, got d={d}, k={k}")
    value = (
        (k - 1) * log(k - 1)
        - (k / (d + 1) - 1.0) * log(k - 1 - d)
        - (d * (k - 1) - 1) / (d + 1) * log(k)
    )
    return exp(value)


def growth_constant_quadrature(d: int, k: int, epsabs: float = 1e-10) -> float:
    """exp of the log-moment of the Laplacian law, by adaptive quadrature."""
    if k < d + 2:
        raise ValueError(f"growth constant needs k >= d+2, got d={d}, k={k}")
    law = LimitLaw(d, k)
    return exp(law.expectation(log, epsabs=epsabs))


def growth_constant_chebyshev(d: int, k: int) -> float:
    """Growth constant through the Chebyshev log-series machinery.

    The log-moment of the law reduces to

        log(center) - log(1 + t^2)
        - weight_zero/(d+1) * log(1 - ratio_zero * t)
        - weight_upper/(d+1) * log(1 + ratio_upper * t)

    at t = series_t, which is also the sum -pi * sum_n alpha_n t^n / n of the
    coefficient series.  Both are evaluated and must agree to 1e-10; a
    mismatch means a coefficient bug, not a numerical artifact.
    """
    if k < d + 2:
        raise ValueError(f"growth constant needs k >= d+2, got d={d}, k={k}")
    law = LimitLaw(d, k)
    plan = ChebyshevPlan.for_law(law)
    t = law.series_t
    head = log(law.center) - log(1.0 + t * t)
    closed = (
        head
        - law.weight_zero / (d + 1) * log(1.0 - law.ratio_zero * t)
        - law.weight_upper / (d + 1) * log(1.0 + law.ratio_upper * t)
    )
    tail = 0.0
    t_pow = 1.0
    for n in range(1, plan.truncation + 1):
        t_pow *= t
        tail += plan.coefficient(n) * t_pow / n
    series = head - pi * tail
    if abs(closed - series) > SERIES_MATCH_ATOL:
        raise RuntimeError(
            f"series/closed mismatch for d={d}, k={k}: {closed!r} vs {series!r}"
        )
    return exp(closed)
