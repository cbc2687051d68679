"""Lobachevsky function, hyperbolic Gamma integral and the angle functions.

Two evaluation routes are kept for both integrals: a fast series route (the
default) and direct adaptive quadrature of the defining integral, which the
tests use as an independent oracle.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import mpmath

__all__ = [
    "DomainError",
    "PrecisionConfig",
    "DEFAULT_PRECISION",
    "lobachevsky",
    "lobachevsky_quadrature",
    "hyperbolic_gamma",
    "hyperbolic_gamma_quadrature",
    "dilog_unit_interval",
    "theta",
    "phi",
    "phi_hyperbolic",
    "ARCCOSH_THREE_HALVES",
]

# Arguments of arccos/arccosh this close to the domain edge are clamped.
_ENDPOINT_SLACK = 1e-12

ARCCOSH_THREE_HALVES = math.acosh(1.5)


class DomainError(ValueError):
    """Argument outside the domain of a special function."""


@dataclass(frozen=True)
class PrecisionConfig:
    working_bits: int = 128
    abs_tol: float = 1e-14

    def __post_init__(self):
        if int(self.working_bits) != self.working_bits or self.working_bits < 53:
            raise ValueError(f"working_bits must be an integer >= 53, got {self.working_bits!r}")
        if not (self.abs_tol > 0 and math.isfinite(self.abs_tol)):
            raise ValueError(f"abs_tol must be a positive finite number, got {self.abs_tol!r}")


DEFAULT_PRECISION = PrecisionConfig()


def _check_finite(x, name="x"):
    try:
        ok = math.isfinite(x)
    except (TypeError, OverflowError):
        ok = mpmath.isfinite(x)
    if not ok:
        raise DomainError(f"{name} must be finite, got {x!r}")


@lru_cache(maxsize=None)
def _clausen_coefficient(k: int, bits: int):
    # |B_2k| / (2k (2k+1) (2k)!)
    with mpmath.workprec(bits):
        b = abs(mpmath.bernoulli(2 * k))
        return b / (2 * k * (2 * k + 1) * mpmath.factorial(2 * k))


def _clausen2(t, cfg: PrecisionConfig):
    """Cl_2(t) for 0 <= t <= pi via the Bernoulli expansion around 0.

    The expansion converges for |t| < 2 pi with ratio (t / 2 pi)^2 <= 1/4 on
    the reduced range, so a few dozen terms reach any sane tolerance.
    """
    if t == 0:
        return mpmath.mpf(0)
    total = t - t * mpmath.log(t)
    t2 = t * t
    power = t * t2
    # the remaining tail is at most a third of the last term added
    eps = mpmath.mpf(cfg.abs_tol) / 4
    k = 1
    while True:
        term = _clausen_coefficient(k, cfg.working_bits) * power
        total += term
        if term < eps:
            break
        power *= t2
        k += 1
    return total


def lobachevsky(x, cfg: PrecisionConfig = DEFAULT_PRECISION) -> float:
    """Lobachevsky function  -int_0^x log|2 sin u| du.

    The argument is reduced modulo pi to [0, pi/2] (the function is odd and
    pi-periodic) and evaluated as Cl_2(2x)/2.
    """
    _check_finite(x)
    with mpmath.workprec(cfg.working_bits):
        pi = mpmath.pi
        y = mpmath.fmod(mpmath.mpf(x), pi)
        if y < 0:
            y += pi
        sign = 1
        if y > pi / 2:
            y = pi - y
            sign = -1
        return float(sign * _clausen2(2 * y, cfg) / 2)


def lobachevsky_quadrature(x, cfg: PrecisionConfig = DEFAULT_PRECISION) -> float:
    """Oracle route: adaptive quadrature of -int_0^x log|2 sin u| du.

    The integrand has log singularities at integer multiples of pi, so the
    range is split there and each piece is handed to tanh-sinh quadrature.
    """
    _check_finite(x)
    with mpmath.workprec(cfg.working_bits):
        x = mpmath.mpf(x)
        if x == 0:
            return 0.0
        lo, hi = (0, x) if x > 0 else (x, 0)
        points = [mpmath.mpf(lo)]
        k = int(mpmath.floor(lo / mpmath.pi)) + 1
        while k * mpmath.pi < hi:
            points.append(k * mpmath.pi)
            k += 1
        points.append(mpmath.mpf(hi))
        integral = mpmath.quad(lambda u: mpmath.log(abs(2 * mpmath.sin(u))), points)
        return float(-integral if x > 0 else integral)


def dilog_unit_interval(u, cfg: PrecisionConfig = DEFAULT_PRECISION):
    """Li_2(u) for 0 <= u <= 1, returned as an mpf at the working precision.

    Power series for u <= 1/2, Euler reflection above.
    """
    with mpmath.workprec(cfg.working_bits):
        u = mpmath.mpf(u)
        if u < 0 or u > 1:
            raise DomainError(f"dilog_unit_interval needs 0 <= u <= 1, got {u}")
        if u == 0:
            return mpmath.mpf(0)
        if u == 1:
            return mpmath.pi ** 2 / 6
        if u > 0.5:
            v = 1 - u
            return mpmath.pi ** 2 / 6 - mpmath.log(u) * mpmath.log(v) - dilog_unit_interval(v, cfg)
        eps = mpmath.mpf(cfg.abs_tol) / 4
        total = mpmath.mpf(0)
        power = u
        n = 1
        while True:
            term = power / (n * n)
            total += term
            # geometric tail with ratio u <= 1/2
            if term < eps:
                break
            power *= u
            n += 1
        return total


def hyperbolic_gamma(z, cfg: PrecisionConfig = DEFAULT_PRECISION) -> float:
    """int_0^z log(2 sinh x) dx for z >= 0.

    Uses log(2 sinh x) = x + log(1 - e^{-2x}) integrated termwise, which
    gives z^2/2 - pi^2/12 + Li_2(e^{-2z})/2 with no singularity at 0.
    """
    _check_finite(z, "z")
    if z < 0:
        raise DomainError(f"hyperbolic_gamma needs z >= 0, got {z!r}")
    with mpmath.workprec(cfg.working_bits):
        z = mpmath.mpf(z)
        if z == 0:
            return 0.0
        li2 = dilog_unit_interval(mpmath.exp(-2 * z), cfg)
        return float(z * z / 2 - mpmath.pi ** 2 / 12 + li2 / 2)


def hyperbolic_gamma_quadrature(z, cfg: PrecisionConfig = DEFAULT_PRECISION) -> float:
    """Oracle route: tanh-sinh quadrature of int_0^z log(2 sinh x) dx."""
    _check_finite(z, "z")
    if z < 0:
        raise DomainError(f"hyperbolic_gamma needs z >= 0, got {z!r}")
    with mpmath.workprec(cfg.working_bits):
        z = mpmath.mpf(z)
        if z == 0:
            return 0.0
        return float(mpmath.quad(lambda x: mpmath.log(2 * mpmath.sinh(x)), [0, z]))


def _cos_two_pi(r: float) -> float:
    # reduce first so that r and 2 - r give bitwise-identical cosines
    frac = math.fmod(abs(r), 1.0)
    if frac > 0.5:
        frac = 1.0 - frac
    return math.cos(2.0 * math.pi * frac)


def _clamped_acos(arg: float, what: str) -> float:
    if arg > 1.0:
        if arg - 1.0 > _ENDPOINT_SLACK:
            raise DomainError(f"{what}: arccos argument {arg!r} > 1")
        arg = 1.0
    elif arg < -1.0:
        if -1.0 - arg > _ENDPOINT_SLACK:
            raise DomainError(f"{what}: arccos argument {arg!r} < -1")
        arg = -1.0
    return math.acos(arg)


def theta(r: float) -> float:
    """arccos(cos(2 pi r) - 1/2), defined for r mod 1 in [0, 1/3] or [2/3, 1]."""
    _check_finite(r, "r")
    return _clamped_acos(_cos_two_pi(r) - 0.5, f"theta({r!r})")


def phi(r: float) -> float:
    """arccos(cos(2 pi r) + 1/2), defined for r mod 1 in [1/6, 5/6]."""
    _check_finite(r, "r")
    return _clamped_acos(_cos_two_pi(r) + 0.5, f"phi({r!r})")


def phi_hyperbolic(s: float) -> float:
    """arccosh(cosh(2 pi s) - 1/2); needs 2 pi s >= arccosh(3/2)."""
    _check_finite(s, "s")
    if s <= 0:
        raise DomainError(f"phi_hyperbolic needs s > 0, got {s!r}")
    arg = math.cosh(2.0 * math.pi * s) - 0.5
    if arg < 1.0:
        if 1.0 - arg > _ENDPOINT_SLACK:
            raise DomainError(
                f"phi_hyperbolic({s!r}): 2*pi*s is below arccosh(3/2), the zero-growth regime"
            )
        arg = 1.0
    return math.acosh(arg)
