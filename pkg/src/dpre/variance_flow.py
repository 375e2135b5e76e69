"""Deterministic variance-map dynamical systems and their scaling checks.

The one-step map M_v(x) = [(1+x)^s (1+v)^(s-1) - 1] / b drives the
partition-function variance; v = 0 gives the disorder-free map M.  All
iteration is done in increment form, x <- x + (M_v(x) - x) with the
increment expanded algebraically: near the marginal fixed point the naive
form loses the increment to cancellation, and the per-step 1e-16 jitter
integrates into a phase lag of thousands of steps over 1e6+ iterations.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from math import comb
from typing import Callable, Sequence

import numpy as np

from .disorder import DisorderLaw, Gaussian, tilt_variance
from .errors import NumericError
from .scaling import constants, n_eff

OVERFLOW_CAP = 1e300


def map_m(b: int, s: int, x: float) -> float:
    """M(x) = ((1+x)^s - 1)/b, the disorder-free variance map."""
    if x < 0.0:
        raise ValueError(f"need x >= 0, got {x}")
    return ((1.0 + x) ** s - 1.0) / b


def map_m_v(b: int, s: int, v: float, x: float) -> float:
    """M_v(x) = ((1+x)^s (1+v)^(s-1) - 1)/b; reduces to M at v = 0."""
    if x < 0.0 or v < 0.0:
        raise ValueError(f"need x, v >= 0, got x={x}, v={v}")
    return ((1.0 + x) ** s * (1.0 + v) ** (s - 1) - 1.0) / b


def map_m_inverse(b: int, y: float) -> float:
    """Inverse of M for b = s: (1 + b y)^(1/b) - 1."""
    if y < 0.0:
        raise ValueError(f"need y >= 0, got {y}")
    return math.expm1(math.log1p(b * y) / b)


def _increment_fn(b: int, s: int, v: float) -> Callable[[float], float]:
    """M_v(x) - x as a cancellation-free positive-term expression."""
    # (1+v)^(s-1) - 1, exact at v = 0
    u = math.expm1((s - 1) * math.log1p(v)) if v != 0.0 else 0.0
    if b == 2 and s == 2:
        w = 1.0 + v

        def inc2(x: float) -> float:
            return (x * x * w + v * (1.0 + 2.0 * x)) * 0.5

        return inc2
    if b == 3 and s == 3:
        third = 1.0 / 3.0

        def inc3(x: float) -> float:
            t = 1.0 + x
            return x * x * (1.0 + x * third) + u * t * t * t * third

        return inc3
    coeffs = [comb(s, j) for j in range(2, s + 1)]
    lin = (s - b) / b

    def inc(x: float) -> float:
        # Horner over the j >= 2 binomial tail of (1+x)^s
        p = 0.0
        for cj in reversed(coeffs):
            p = p * x + cj
        return lin * x + (p * x * x + u * (1.0 + x) ** s) / b

    return inc


def _flow_final(b: int, s: int, v: float, steps: int, x0: float = 0.0,
                on_overflow: str = "raise") -> float:
    """Iterate M_v `steps` times from x0, returning only the final value."""
    inc = _increment_fn(b, s, v)
    x = x0
    for k in range(steps):
        x += inc(x)
        if x > OVERFLOW_CAP:
            if on_overflow == "inf":
                return math.inf
            raise NumericError(f"variance flow overflowed at step {k + 1}")
    return x


def _flow_trace(b: int, s: int, v: float, steps: int, x0: float = 0.0) -> np.ndarray:
    inc = _increment_fn(b, s, v)
    out = np.empty(steps + 1)
    x = x0
    out[0] = x
    for k in range(1, steps + 1):
        x += inc(x)
        if x > OVERFLOW_CAP:
            raise NumericError(f"variance flow overflowed at step {k}")
        out[k] = x
    return out


@dataclass(frozen=True)
class FlowTrace:
    """Variance values rho_0..rho_K of the flow, plus optional [0,1) coordinates."""

    b: int
    s: int
    v: float
    values: np.ndarray
    coords: np.ndarray | None = None

    @property
    def steps(self) -> int:
        return len(self.values) - 1


def iterate_variance(b: int, s: int, v: float, steps: int) -> FlowTrace:
    """Trace rho_k = M_v^k(0) for k = 0..steps."""
    if steps < 0:
        raise ValueError(f"need steps >= 0, got {steps}")
    if v < 0.0:
        raise ValueError(f"need v >= 0, got {v}")
    return FlowTrace(b=b, s=s, v=v, values=_flow_trace(b, s, v, steps))


def arctan_coords(trace: FlowTrace, depth: float) -> FlowTrace:
    """Attach coordinates r_k = (2/pi) arctan(2*depth*rho_k / (pi kappa^2))."""
    if trace.b != trace.s:
        raise ValueError("arctan coordinates are defined for the critical case b == s")
    if depth <= 0.0:
        raise ValueError(f"need a positive effective depth, got {depth}")
    kappa_sq = constants(trace.b).kappa_sq
    coords = (2.0 / math.pi) * np.arctan(2.0 * depth / (math.pi * kappa_sq) * trace.values)
    return FlowTrace(b=trace.b, s=trace.s, v=trace.v, values=trace.values, coords=coords)


def lemma32_residual(b: int, n: int, r: float) -> float:
    """Window-depth residual: L*rho/kappa^2 - (1 + eta log L / L + r / L).

    Here L = floor(log n), v is pinned to kappa_hat^2 / n_eff^2, and
    rho = M_v^(n-L)(0); the residual is o(1/L) as n grows.
    """
    if n < 8:
        raise ValueError(f"need n >= 8 so that floor(log n) >= 2, got {n}")
    c = constants(b)
    ell = math.floor(math.log(n))
    v = (c.kappa_hat / n_eff(b, n, r)) ** 2
    rho = _flow_final(b, b, v, n - ell)
    return ell * rho / c.kappa_sq - (1.0 + c.eta * math.log(ell) / ell + r / ell)


@dataclass(frozen=True)
class RLimitResult:
    """Limit value of M^N(V_{N,r}) with its convergence sequence."""

    value: float
    sequence: tuple[tuple[int, float], ...]


def window_variance(b: int, big_n: int, r: float) -> float:
    """V_{N,r} = (kappa^2/N)(1 + eta log N / N + r / N), the regular-window seed."""
    c = constants(b)
    v = (c.kappa_sq / big_n) * (1.0 + c.eta * math.log(big_n) / big_n + r / big_n)
    if v <= 0.0:
        raise ValueError(f"window variance is not positive at N={big_n}, r={r}")
    return v


def r_function(b: int, r: float, n_grid: Sequence[int]) -> RLimitResult:
    """Approximate R(r) by M^N(V_{N,r}) along an increasing grid of N."""
    grid = [int(x) for x in n_grid]
    if not grid or any(y <= x for x, y in zip(grid, grid[1:])):
        raise ValueError("n_grid must be a strictly increasing, nonempty sequence")
    seq = []
    for big_n in grid:
        x = _flow_final(b, b, 0.0, big_n, x0=window_variance(b, big_n, r))
        if x > 1e6:
            raise NumericError(f"M^N(V_N) exceeded 1e6 at N={big_n}; r={r} too large for grid")
        seq.append((big_n, x))
    return RLimitResult(value=seq[-1][1], sequence=tuple(seq))


def r_function_subcritical(b: int, s: int, r: float, steps: int | None = None) -> float:
    """Subcritical variance function via its scaling relation.

    Seeds x = (b/s)^K r, where R(r)/r -> 1 as r -> 0, then applies the map
    K times; K is chosen so the seed is below 1e-6 unless given explicitly.
    """
    if b >= s:
        raise ValueError(f"subcritical branch requires b < s, got b={b}, s={s}")
    if r < 0.0:
        raise ValueError(f"need r >= 0, got {r}")
    if r == 0.0:
        return 0.0
    if steps is None:
        steps = max(0, math.ceil(math.log(r / 1e-6) / math.log(s / b)))
    x = (b / s) ** steps * r
    inc = _increment_fn(b, s, 0.0)
    for _ in range(steps):
        x += inc(x)
    return x


def l2_gap(b: int, n: int, r: float) -> float:
    """M_v^n(0) - M^L(M_v^(n-L)(0)) with L = floor(log n); squared L2 distance
    between the full partition function and its low-generation conditional."""
    if n < 8:
        raise ValueError(f"need n >= 8, got {n}")
    c = constants(b)
    ell = math.floor(math.log(n))
    v = (c.kappa_hat / n_eff(b, n, r)) ** 2
    base = _flow_final(b, b, v, n - ell)
    full = _flow_final(b, b, v, ell, x0=base)
    approx = _flow_final(b, b, 0.0, ell, x0=base)
    return full - approx


def prop22_check(b: int, beta_hat: float, n_grid: Sequence[int],
                 law: DisorderLaw = Gaussian()) -> list[tuple[int, float]]:
    """Scaled long-run variances of the flow at inverse temperature beta_hat/n.

    Reports n*rho_n below the critical coupling (converging to upsilon),
    log(n)*rho_n at it (converging to 6/(b+1)), and raw rho_n above it
    (divergent; saturates to inf).
    """
    if beta_hat < 0.0:
        raise ValueError(f"need beta_hat >= 0, got {beta_hat}")
    kappa_hat = constants(b).kappa_hat
    out = []
    for n in n_grid:
        n = int(n)
        v = tilt_variance(law, beta_hat / n)
        rho = _flow_final(b, b, v, n, on_overflow="inf")
        if beta_hat < kappa_hat:
            scaled = n * rho
        elif beta_hat == kappa_hat:
            scaled = math.log(n) * rho
        else:
            scaled = rho
        out.append((n, scaled))
    return out
