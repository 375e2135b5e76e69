"""Critical constants and inverse-temperature schedules for the b = s window.

Two interchangeable schedule modes: a closed-form expansion in 1/n, and an
exact-variance mode that pins the tilted one-vertex variance to
kappa_hat^2 / n_eff^2 by a root solve.  Both agree to the order the window
is defined at; the exact-variance mode is what the deterministic flow
checks use.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from scipy.optimize import brentq

from .disorder import DisorderLaw, Gaussian, tilt_variance
from .errors import NumericError


@dataclass(frozen=True)
class CriticalConstants:
    kappa_hat: float    # pi sqrt(b) / (sqrt(2) (b-1))
    kappa_sq: float     # 2 / (b-1)
    eta: float          # (b+1) / (3 (b-1))
    varsigma: float     # (log(pi/2) + 2) eta
    epsilon: float      # eta log b


def constants(b: int) -> CriticalConstants:
    if b < 2:
        raise ValueError(f"need b >= 2, got {b}")
    eta = (b + 1) / (3.0 * (b - 1))
    return CriticalConstants(
        kappa_hat=math.pi * math.sqrt(b) / (math.sqrt(2.0) * (b - 1)),
        kappa_sq=2.0 / (b - 1),
        eta=eta,
        varsigma=(math.log(math.pi / 2.0) + 2.0) * eta,
        epsilon=eta * math.log(b),
    )


def n_eff(b: int, n: int, r: float) -> float:
    """Effective window depth n - eta log n - r + varsigma."""
    if n < 2:
        raise ValueError(f"need n >= 2, got {n}")
    c = constants(b)
    value = n - c.eta * math.log(n) - r + c.varsigma
    if value <= 0.0:
        raise ValueError(f"effective depth is not positive at n={n}, r={r}")
    return value


@dataclass(frozen=True)
class TemperatureSchedule:
    """mode 'closed' (1/n expansion) or 'exactv' (variance pinned exactly)."""

    mode: str
    r: float
    law: DisorderLaw = Gaussian()

    def __post_init__(self):
        if self.mode not in ("closed", "exactv"):
            raise ValueError(f"schedule mode must be 'closed' or 'exactv', got {self.mode!r}")


def beta(schedule: TemperatureSchedule, b: int, n: int) -> float:
    """Inverse temperature for generation n under the given schedule."""
    c = constants(b)
    if schedule.mode == "closed":
        if n < 2:
            raise ValueError(f"need n >= 2, got {n}")
        tau = schedule.law.third_moment
        bracket = 1.0 + (c.eta * math.log(n)) / n \
            + (schedule.r - c.varsigma - c.kappa_hat * tau / 2.0) / n
        if bracket <= 0.0:
            raise ValueError(f"closed-form bracket is not positive at n={n}, r={schedule.r}")
        return c.kappa_hat / n * bracket
    return beta_for_variance(schedule.law, c.kappa_hat ** 2 / n_eff(b, n, schedule.r) ** 2)


def beta_for_variance(law: DisorderLaw, target: float) -> float:
    """The unique beta >= 0 with tilt_variance(law, beta) = target."""
    if target < 0.0:
        raise ValueError(f"target variance must be >= 0, got {target}")
    if target == 0.0:
        return 0.0
    hi = 1.0
    for _ in range(80):
        if tilt_variance(law, hi) >= target:
            break
        hi *= 2.0
    else:
        raise NumericError(f"could not bracket tilt variance {target}")
    return float(brentq(lambda x: tilt_variance(law, x) - target,
                        0.0, hi, xtol=1e-300, rtol=1e-14))


def upsilon(b: int, beta_hat: float) -> float:
    """Subcritical variance limit; finite only on 0 <= beta_hat < kappa_hat."""
    c = constants(b)
    if not 0.0 <= beta_hat < c.kappa_hat:
        raise ValueError(f"need 0 <= beta_hat < kappa_hat = {c.kappa_hat}, got {beta_hat}")
    return beta_hat * math.sqrt(2.0 / b) * math.tan(math.pi / 2.0 * beta_hat / c.kappa_hat)
