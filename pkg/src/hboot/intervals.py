"""Normal, percentile, basic and bias-corrected bootstrap confidence intervals.

All four constructions read order statistics of a ``BootstrapDistribution``.
Ranks follow the nearest-rank rule: a real rank ``k`` maps to the
``ceil(k)``-th smallest replicate, so percentile-type endpoints are always
replicate values.  Ranks within ``1e-9 * B`` of an integer are snapped to it
first; otherwise ``1000 * (1 - 0.95) / 2 = 25.000000000000004`` would select
rank 26.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError, InfeasibleConfigError
from .resampling import BootstrapDistribution, statistic, std_error

__all__ = [
    "IntervalMethod",
    "ConfidenceInterval",
    "inverse_normal_cdf",
    "normal_cdf",
    "nearest_rank",
    "normal_interval",
    "percentile_interval",
    "basic_interval",
    "bias_corrected_interval",
    "jackknife_acceleration",
    "check_feasible",
    "interval",
]


class IntervalMethod(str, enum.Enum):
    NORMAL = "normal_bootstrap"
    PERCENTILE = "percentile_bootstrap"
    BASIC = "basic_bootstrap"
    BIAS_CORRECTED = "bias_corrected"

    @property
    def label(self) -> str:
        return _LABELS[self]

    @classmethod
    def parse(cls, text: str) -> "IntervalMethod":
        key = text.strip().lower()
        for method in cls:
            if key in (method.value, method.label.lower(), method.name.lower()):
                return method
        if key in ("bc", "bias_corrected_accelerated"):
            return cls.BIAS_CORRECTED
        raise ValueError(f"unknown interval method {text!r}")


_LABELS = {
    IntervalMethod.NORMAL: "NB",
    IntervalMethod.PERCENTILE: "PB",
    IntervalMethod.BASIC: "BB",
    IntervalMethod.BIAS_CORRECTED: "BCa",
}


@dataclass(frozen=True)
class ConfidenceInterval:
    method: IntervalMethod
    level: float
    lower: float
    upper: float
    # True when a bias-corrected rank fell outside [1, B] and was clamped.
    clamped: bool = False

    def __post_init__(self):
        if not self.lower <= self.upper:
            raise DomainError(f"interval bounds out of order: {self.lower} > {self.upper}")

    def contains(self, value: float) -> bool:
        return self.lower <= value <= self.upper


# -- standard normal -----------------------------------------------------------

# Wichura (1988), algorithm AS 241 (PPND16); relative accuracy about 1e-16.
_A = (3.3871328727963666080e0, 1.3314166789178437745e2, 1.9715909503065514427e3,
      1.3731693765509461125e4, 4.5921953931549871457e4, 6.7265770927008700853e4,
      3.3430575583588128105e4, 2.5090809287301226727e3)
_B = (1.0, 4.2313330701600911252e1, 6.8718700749205790830e2, 5.3941960214247511077e3,
      2.1213794301586595867e4, 3.9307895800092710610e4, 2.8729085735721942674e4,
      5.2264952788528545610e3)
_C = (1.42343711074968357734e0, 4.63033784615654529590e0, 5.76949722146069140550e0,
      3.64784832476320460504e0, 1.27045825245236838258e0, 2.41780725177450611770e-1,
      2.27238449892691845833e-2, 7.74545014278341407640e-4)
_D = (1.0, 2.05319162663775882187e0, 1.67638483018380384940e0, 6.89767334985100004550e-1,
      1.48103976427480074590e-1, 1.51986665636164571966e-2, 5.47593808499534494600e-4,
      1.05075007164441684324e-9)
_E = (6.65790464350110377720e0, 5.46378491116411436990e0, 1.78482653991729133580e0,
      2.96560571828504891230e-1, 2.65321895265761230930e-2, 1.24266094738807843860e-3,
      2.71155556874348757815e-5, 2.01033439929228813265e-7)
_F = (1.0, 5.99832206555887937690e-1, 1.36929880922735805310e-1, 1.48753612908506148525e-2,
      7.86869131145613259100e-4, 1.84631831751005468180e-5, 1.42151175831644588870e-7,
      2.04426310338993978564e-15)


def _poly(coef, x):
    acc = 0.0
    for c in reversed(coef):
        acc = acc * x + c
    return acc


def inverse_normal_cdf(p: float) -> float:
    """Standard normal quantile, ``z`` with ``Phi(z) = p``.

    >>> inverse_normal_cdf(0.5)
    0.0
    >>> round(inverse_normal_cdf(0.975), 6)
    1.959964
    """
    p = float(p)
    if not 0.0 < p < 1.0:
        raise DomainError(f"probability must lie in (0, 1), got {p!r}")
    q = p - 0.5
    if abs(q) <= 0.425:
        r = 0.180625 - q * q
        return q * _poly(_A, r) / _poly(_B, r)
    r = p if q < 0 else 1.0 - p
    r = math.sqrt(-math.log(r))
    if r <= 5.0:
        r -= 1.6
        z = _poly(_C, r) / _poly(_D, r)
    else:
        r -= 5.0
        z = _poly(_E, r) / _poly(_F, r)
    return -z if q < 0 else z


def normal_cdf(x: float) -> float:
    return 0.5 * math.erfc(-x / math.sqrt(2.0))


# -- ranks ---------------------------------------------------------------------


def _snap(k: float, b: int) -> float:
    nearest = round(k)
    if abs(k - nearest) <= 1e-9 * b:
        return float(nearest)
    return k


def nearest_rank(dist: BootstrapDistribution, k: float) -> float:
    """Replicate at 1-based rank ``ceil(k)``; an integer ``k`` selects rank ``k``."""
    b = dist.b
    k = _snap(float(k), b)
    if not 0 < k <= b:
        raise DomainError(f"rank {k} outside (0, {b}]")
    return float(dist.replicates[math.ceil(k) - 1])


def _alpha(level: float) -> float:
    if not 0.0 < level < 1.0:
        raise DomainError(f"confidence level must lie in (0, 1), got {level!r}")
    return 1.0 - level


def check_feasible(method: IntervalMethod, level: float, b: int) -> None:
    """Raise ``InfeasibleConfigError`` if ``method`` at ``level`` cannot use ``b`` replicates."""
    method = IntervalMethod(method)
    alpha = _alpha(level)
    if method in (IntervalMethod.NORMAL, IntervalMethod.BIAS_CORRECTED) and b < 2:
        raise InfeasibleConfigError(f"{method.label} needs at least 2 bootstrap samples, got B={b}")
    if method is not IntervalMethod.NORMAL and _snap(b * alpha / 2, b) < 1:
        raise InfeasibleConfigError(
            f"{method.label} at level {level} needs B*alpha/2 >= 1; B={b} gives {b * alpha / 2:g}")


# -- constructions -------------------------------------------------------------


def normal_interval(dist: BootstrapDistribution, level: float = 0.95) -> ConfidenceInterval:
    """``estimate -/+ z_{1-alpha/2} * se`` with the bootstrap standard error."""
    check_feasible(IntervalMethod.NORMAL, level, dist.b)
    alpha = _alpha(level)
    half = -inverse_normal_cdf(alpha / 2) * std_error(dist)
    est = dist.original_estimate
    return ConfidenceInterval(IntervalMethod.NORMAL, level, est - half, est + half)


def _percentile_bounds(dist: BootstrapDistribution, level: float) -> tuple[float, float]:
    alpha = _alpha(level)
    b = dist.b
    return nearest_rank(dist, b * alpha / 2), nearest_rank(dist, b * (1 - alpha / 2))


def percentile_interval(dist: BootstrapDistribution, level: float = 0.95) -> ConfidenceInterval:
    check_feasible(IntervalMethod.PERCENTILE, level, dist.b)
    lo, hi = _percentile_bounds(dist, level)
    return ConfidenceInterval(IntervalMethod.PERCENTILE, level, lo, hi)


def basic_interval(dist: BootstrapDistribution, level: float = 0.95) -> ConfidenceInterval:
    """Percentile interval reflected about the original estimate."""
    check_feasible(IntervalMethod.BASIC, level, dist.b)
    lo, hi = _percentile_bounds(dist, level)
    two_est = 2.0 * dist.original_estimate
    return ConfidenceInterval(IntervalMethod.BASIC, level, two_est - hi, two_est - lo)


def jackknife_acceleration(sample, kind) -> float:
    """Acceleration constant from the skewness of leave-one-out estimates."""
    arr = np.asarray(sample, dtype=np.float64)
    n = arr.size
    if n < 2:
        return 0.0
    loo = np.array([statistic(np.delete(arr, i), kind) for i in range(n)])
    d = loo.mean() - loo
    ss = float(np.dot(d, d))
    if ss == 0.0:
        return 0.0
    return float(np.sum(d ** 3)) / (6.0 * ss ** 1.5)


def bias_correction_rank(dist: BootstrapDistribution) -> int:
    """Count ``i`` of replicates below the estimate; ties with it count half (floored).

    Clamped to ``[1, B - 1]`` so that ``i / B`` stays strictly inside (0, 1).
    """
    reps = dist.replicates
    est = dist.original_estimate
    below = int(np.searchsorted(reps, est, side="left"))
    equal = int(np.searchsorted(reps, est, side="right")) - below
    return min(max(below + equal // 2, 1), dist.b - 1)


def bias_corrected_interval(dist: BootstrapDistribution, level: float = 0.95,
                            accelerate: bool = False) -> ConfidenceInterval:
    """Bias-corrected percentile interval.

    With ``z0 = inverse_normal_cdf(i / B)`` the endpoints are the replicates at
    ranks ``B * Phi(2 z0 + z_{alpha/2})`` and ``B * Phi(2 z0 + z_{1-alpha/2})``.
    ``accelerate=True`` replaces ``2 z0 + z`` by the BCa adjustment
    ``z0 + (z0 + z) / (1 - a (z0 + z))`` with a jackknife estimate of ``a``;
    that needs ``dist.sample``.
    """
    check_feasible(IntervalMethod.BIAS_CORRECTED, level, dist.b)
    reps = dist.replicates
    est = dist.original_estimate
    method = IntervalMethod.BIAS_CORRECTED
    if reps[0] == est and reps[-1] == est:
        return ConfidenceInterval(method, level, est, est)

    b = dist.b
    z0 = inverse_normal_cdf(bias_correction_rank(dist) / b)
    z_lo = inverse_normal_cdf(_alpha(level) / 2)
    a = 0.0
    if accelerate:
        if dist.sample is None:
            raise DomainError("acceleration needs the resampled values (dist.sample)")
        a = jackknife_acceleration(dist.sample, dist.statistic)

    clamped = False
    bounds = []
    for z in (z_lo, -z_lo):
        if a == 0.0:
            p = normal_cdf(2.0 * z0 + z)
        else:
            p = normal_cdf(z0 + (z0 + z) / (1.0 - a * (z0 + z)))
        k = _snap(b * p, b)
        if p <= 0.0 or p >= 1.0 or k < 1:
            clamped = True
        k = min(max(k, 1.0), float(b))
        bounds.append(float(reps[math.ceil(k) - 1]))
    lo, hi = min(bounds), max(bounds)
    return ConfidenceInterval(method, level, lo, hi, clamped)


def interval(dist: BootstrapDistribution, method: IntervalMethod | str, level: float = 0.95,
             accelerate: bool = False) -> ConfidenceInterval:
    method = IntervalMethod(method)
    if method is IntervalMethod.NORMAL:
        return normal_interval(dist, level)
    if method is IntervalMethod.PERCENTILE:
        return percentile_interval(dist, level)
    if method is IntervalMethod.BASIC:
        return basic_interval(dist, level)
    return bias_corrected_interval(dist, level, accelerate)
