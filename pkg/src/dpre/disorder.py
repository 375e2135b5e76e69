"""Mean-zero, unit-variance disorder laws with finite exponential moments.

Each law exposes its cumulant generating function in closed form and a
fixed one-uniform-per-draw transform, so sampled values are a pure
function of the stream position they are drawn from.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.special import ndtri

from .rng import RngStream

_LOG2 = math.log(2.0)


class DisorderLaw:
    """Base class; concrete laws implement cgf, third_moment, from_uniform."""

    name = "abstract"

    def cgf(self, beta: float) -> float:
        raise NotImplementedError

    @property
    def third_moment(self) -> float:
        raise NotImplementedError

    def from_uniform(self, u):
        """Map uniform(0,1) values to draws; one uniform consumed per draw."""
        raise NotImplementedError

    def spec_string(self) -> str:
        return self.name

    def __repr__(self) -> str:
        return self.spec_string()


@dataclass(frozen=True, repr=False)
class Gaussian(DisorderLaw):
    name = "gaussian"

    def cgf(self, beta: float) -> float:
        return 0.5 * beta * beta

    @property
    def third_moment(self) -> float:
        return 0.0

    def from_uniform(self, u):
        return ndtri(u)


@dataclass(frozen=True, repr=False)
class Rademacher(DisorderLaw):
    name = "rademacher"

    def cgf(self, beta: float) -> float:
        # log cosh, written to stay finite for large |beta|
        return float(np.logaddexp(beta, -beta)) - _LOG2

    @property
    def third_moment(self) -> float:
        return 0.0

    def from_uniform(self, u):
        return np.where(np.asarray(u) < 0.5, -1.0, 1.0)


@dataclass(frozen=True, repr=False)
class TwoPoint(DisorderLaw):
    """Takes sqrt((1-p)/p) with probability p, else -sqrt(p/(1-p))."""

    p: float

    def __post_init__(self):
        if not 0.0 < self.p < 1.0:
            raise ValueError(f"two-point parameter must lie in (0, 1), got {self.p}")

    @property
    def name(self) -> str:  # type: ignore[override]
        return f"twopoint:{self.p:g}"

    @property
    def hi(self) -> float:
        return math.sqrt((1.0 - self.p) / self.p)

    @property
    def lo(self) -> float:
        return -math.sqrt(self.p / (1.0 - self.p))

    def cgf(self, beta: float) -> float:
        a = math.log(self.p) + beta * self.hi
        b = math.log1p(-self.p) + beta * self.lo
        return float(np.logaddexp(a, b))

    @property
    def third_moment(self) -> float:
        return (1.0 - 2.0 * self.p) / math.sqrt(self.p * (1.0 - self.p))

    def from_uniform(self, u):
        return np.where(np.asarray(u) < self.p, self.hi, self.lo)


def parse_law(text: str) -> DisorderLaw:
    """Parse 'gaussian', 'rademacher', or 'twopoint:<p>'."""
    t = text.strip().lower()
    if t == "gaussian":
        return Gaussian()
    if t == "rademacher":
        return Rademacher()
    if t.startswith("twopoint:"):
        try:
            p = float(t.split(":", 1)[1])
        except ValueError as exc:
            raise ValueError(f"bad two-point parameter in {text!r}") from exc
        return TwoPoint(p)
    raise ValueError(f"unknown disorder law {text!r}")


def tilt_variance(law: DisorderLaw, beta: float) -> float:
    """Variance of exp(beta*omega - cgf(beta)); zero at beta = 0."""
    return math.expm1(law.cgf(2.0 * beta) - 2.0 * law.cgf(beta))


def tilt_moment(law: DisorderLaw, beta: float, m: int) -> float:
    """m-th moment of exp(beta*omega - cgf(beta)); equals 1 for m = 1."""
    if m < 1:
        raise ValueError(f"moment order must be >= 1, got {m}")
    return math.exp(law.cgf(m * beta) - m * law.cgf(beta))


def third_moment(law: DisorderLaw) -> float:
    return law.third_moment


def sample(law: DisorderLaw, stream: RngStream, count: int | None = None):
    """Draw from the law; a scalar when count is None, else an array."""
    if count is None:
        return float(law.from_uniform(stream.uniforms(1))[0])
    return law.from_uniform(stream.uniforms(count))
