"""Regime classification and closed-form growth constants.

For circular parameters the growth constant is

    vhat(r) = 2 (Lambda(pi r + theta/2) - Lambda(pi r - theta/2)) / r = 2 V(r) / r,

the predicted value of 2 pi lim log|J_N| / N.  For purely imaginary parameters
the prediction is the un-normalized lim log J_N / N built from the hyperbolic
Gamma integral.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .evaluator import CIRCULAR_RATIONAL, IMAGINARY, Parameter
from .special import (
    ARCCOSH_THREE_HALVES,
    DEFAULT_PRECISION,
    DomainError,
    PrecisionConfig,
    hyperbolic_gamma,
    lobachevsky,
    phi,
    phi_hyperbolic,
    theta,
)

__all__ = [
    "Regime",
    "GrowthPrediction",
    "REGIME_TAGS",
    "classify",
    "vhat",
    "vhat_value",
    "cone_manifold_volume",
    "delta_gap",
    "imaginary_growth",
    "appendix_V",
    "appendix_W",
    "appendix_dV",
    "appendix_dW",
]

ZERO_SMALL_R = "zero-small-r"
MAIN_IRRATIONAL = "main-irrational"
MAIN_RATIONAL = "main-rational"
NEAR_MAIN_IRRATIONAL = "near-main-irrational"
IMAGINARY_ABOVE = "imaginary-above"
IMAGINARY_AT_OR_BELOW = "imaginary-at-or-below"
UNCOVERED = "uncovered"

REGIME_TAGS = (
    ZERO_SMALL_R,
    MAIN_IRRATIONAL,
    MAIN_RATIONAL,
    NEAR_MAIN_IRRATIONAL,
    IMAGINARY_ABOVE,
    IMAGINARY_AT_OR_BELOW,
    UNCOVERED,
)

# scale of the predictions carried by a Regime
NORMALIZED = "2pi*log|J_N|/N"
UNNORMALIZED = "log|J_N|/N"


@dataclass(frozen=True)
class Regime:
    tag: str
    limsup_prediction: Optional[float]
    liminf_prediction: Optional[float]
    limit_exists: bool
    scale: str = NORMALIZED

    def __post_init__(self):
        if self.tag not in REGIME_TAGS:
            raise ValueError(f"unknown regime {self.tag!r}")
        lo, hi = self.liminf_prediction, self.limsup_prediction
        if lo is not None and hi is not None and lo > hi:
            raise ValueError("liminf prediction exceeds limsup prediction")
        if self.limit_exists and lo != hi:
            raise ValueError("a regime with a limit needs equal predictions")

    @property
    def prediction(self) -> Optional[float]:
        """The limsup prediction, which is the limit when one exists."""
        return self.limsup_prediction


@dataclass(frozen=True)
class GrowthPrediction:
    vhat: float
    theta_used: float
    regime: Optional[Regime] = None


def appendix_V(r: float, cfg: PrecisionConfig = DEFAULT_PRECISION) -> float:
    """V(r) = Lambda(pi r + theta(r)/2) - Lambda(pi r - theta(r)/2)."""
    th = theta(r)
    x = math.pi * r
    return lobachevsky(x + th / 2, cfg) - lobachevsky(x - th / 2, cfg)


def _phi_part(r: float, cfg: PrecisionConfig) -> float:
    ph = phi(r)
    x = math.pi * r
    return lobachevsky(x + ph / 2, cfg) - lobachevsky(x - ph / 2, cfg)


def appendix_W(r: float, cfg: PrecisionConfig = DEFAULT_PRECISION) -> float:
    """W(r) = V(r) + Lambda(pi r + phi(r)/2) - Lambda(pi r - phi(r)/2)."""
    return appendix_V(r, cfg) + _phi_part(r, cfg)


def appendix_dV(r: float, cfg: PrecisionConfig = DEFAULT_PRECISION) -> float:
    """Closed-form dV/dr = 2 pi log|2 sin(pi r - theta(r)/2)|."""
    s = 2.0 * math.sin(math.pi * r - theta(r) / 2)
    if s == 0:
        raise DomainError(f"dV/dr is singular at r={r!r}")
    return 2.0 * math.pi * math.log(abs(s))


def appendix_dW(r: float, cfg: PrecisionConfig = DEFAULT_PRECISION) -> float:
    """dW/dr = 2 pi (log|2 sin(pi r - theta/2)| + log|2 sin(pi r - phi/2)|).

    The phi terms obey 4 sin(pi r + phi/2) sin(pi r - phi/2) = 1, so they
    differentiate the same way as the theta terms, 2 pi factor included.
    """
    s = 2.0 * math.sin(math.pi * r - phi(r) / 2)
    if s == 0:
        raise DomainError(f"dW/dr is singular at r={r!r}")
    return appendix_dV(r, cfg) + 2.0 * math.pi * math.log(abs(s))


def vhat_value(r: float, cfg: PrecisionConfig = DEFAULT_PRECISION) -> float:
    """2 V(r) / r as a bare float."""
    if r == 0:
        raise DomainError("vhat is undefined at r = 0")
    return 2.0 * appendix_V(r, cfg) / r


def vhat(r: float, cfg: PrecisionConfig = DEFAULT_PRECISION) -> GrowthPrediction:
    """Predicted 2 pi limsup log|J_N| / N for circular r where theta(r) exists."""
    return GrowthPrediction(vhat=vhat_value(r, cfg), theta_used=theta(r))


def cone_manifold_volume(cone_angle: float, cfg: PrecisionConfig = DEFAULT_PRECISION) -> float:
    """Volume of the figure-eight cone-manifold with the given cone angle.

    Equals 2 V(r) at r = 1 - angle / (2 pi).  This is the un-divided
    Lambda difference: it agrees with vhat only at angle 0.
    """
    if not math.isfinite(cone_angle) or cone_angle < 0 or cone_angle > 2 * math.pi / 3 + 1e-12:
        raise DomainError(f"cone angle must lie in [0, 2pi/3], got {cone_angle!r}")
    r = 1.0 - cone_angle / (2.0 * math.pi)
    return 2.0 * appendix_V(r, cfg)


def delta_gap(r: float, cfg: PrecisionConfig = DEFAULT_PRECISION) -> float:
    """Exponential gap between |f(floor D)| and |f(floor A)|, scaled by pi r; equals W(r)."""
    return appendix_W(r, cfg)


def imaginary_growth(s: float, cfg: PrecisionConfig = DEFAULT_PRECISION) -> float:
    """Predicted lim log J_N / N at t = exp(2 pi s / N).

    Zero at or below the threshold 2 pi s = arccosh(3/2).
    """
    if not (math.isfinite(s) and s > 0):
        raise DomainError(f"imaginary magnitude must be finite and > 0, got {s!r}")
    if 2.0 * math.pi * s <= ARCCOSH_THREE_HALVES:
        return 0.0
    ph = phi_hyperbolic(s)
    x = math.pi * s
    return (2.0 * hyperbolic_gamma(x + ph / 2, cfg) - 2.0 * hyperbolic_gamma(x - ph / 2, cfg)) / (2.0 * x)


def _circular_r(param: Parameter):
    return param.fraction if param.fraction is not None else param.value


def classify(param: Parameter, cfg: PrecisionConfig = DEFAULT_PRECISION) -> Regime:
    """Sort a parameter into the growth regime that covers it."""
    if param.kind == IMAGINARY:
        s = param.value
        if 2.0 * math.pi * s > ARCCOSH_THREE_HALVES:
            v = imaginary_growth(s, cfg)
            return Regime(IMAGINARY_ABOVE, v, v, True, UNNORMALIZED)
        return Regime(IMAGINARY_AT_OR_BELOW, 0.0, 0.0, True, UNNORMALIZED)

    r = _circular_r(param)
    exact = param.kind == CIRCULAR_RATIONAL
    if 0 <= r < Fraction(1, 6):
        return Regime(ZERO_SMALL_R, 0.0, 0.0, True)
    gap = abs(1 - r)
    if gap < Fraction(1, 6):
        v = vhat_value(float(r), cfg)
        if exact and r != 1:
            return Regime(MAIN_RATIONAL, v, 0.0, False)
        return Regime(MAIN_IRRATIONAL, v, v, True)
    if Fraction(1, 6) <= gap < Fraction(1, 4) and not exact:
        v = vhat_value(float(r), cfg)
        return Regime(NEAR_MAIN_IRRATIONAL, v, v, True)
    return Regime(UNCOVERED, None, None, False)
