"""Habiro-Le sum for the figure-eight knot at t = exp(2 pi r i / N) or exp(2 pi s / N).

Every factor of the sum is real:

    g(j) = 2 cos(2 pi r) - 2 cos(2 pi r j / N)          (circular)
    g(j) = 2 cosh(2 pi s) - 2 cosh(2 pi s j / N)        (imaginary)

and J_N = sum_{k<N} f(k) with f(k) = g(1) ... g(k).

Two evaluation paths are provided.  ``partial_products`` works in log space at
double precision and scales to N ~ 10^7; ``jones_value`` accumulates the sum
multiplicatively with mpmath at a configurable significand width (mpmath's
exponent is unbounded, so magnitudes up to 4^N are fine).
"""
from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field
from fractions import Fraction
from typing import NamedTuple, Optional

import mpmath
import numpy as np
from scipy.special import logsumexp

from .special import DEFAULT_PRECISION, DomainError, PrecisionConfig, phi, theta

__all__ = [
    "Parameter",
    "TermSequence",
    "CriticalIndices",
    "JonesEvaluation",
    "FMax",
    "SignTableReport",
    "PrecisionError",
    "UndefinedGrowthError",
    "NearZeroWarning",
    "g_factor",
    "g_factor_product_form",
    "g_values",
    "partial_products",
    "jones_value",
    "jones_log_abs_fast",
    "term_values_mp",
    "jones_log_growth",
    "critical_indices",
    "f_max",
    "sign_table_check",
]

CIRCULAR_RATIONAL = "circular-rational"
CIRCULAR_REAL = "circular-real"
IMAGINARY = "imaginary"

# real-kind factors closer than this to zero are flagged, never zeroed
NEAR_ZERO = 1e-13
# relative distance under which a critical index is taken to be an integer
_SNAP = 1e-12
# log-magnitudes this close count as a tie in f_max
TIE_TOL = 1e-12


class PrecisionError(ArithmeticError):
    """The working precision could not represent the result."""


class UndefinedGrowthError(ArithmeticError):
    """log|J_N| requested but J_N evaluated to exactly zero."""


class NearZeroWarning(RuntimeWarning):
    """A real-kind factor g(j) is numerically indistinguishable from 0."""


@dataclass(frozen=True)
class Parameter:
    """Deformation parameter.

    ``circular-rational`` carries an exact reduced fraction q/p, ``circular-real``
    a float r >= 0 (treated as irrational), ``imaginary`` the magnitude s > 0 of
    a purely imaginary r.
    """

    kind: str
    value: float
    fraction: Optional[Fraction] = None

    def __post_init__(self):
        if self.kind not in (CIRCULAR_RATIONAL, CIRCULAR_REAL, IMAGINARY):
            raise ValueError(f"unknown parameter kind {self.kind!r}")
        if not math.isfinite(self.value):
            raise ValueError("parameter must be finite")
        if self.kind == CIRCULAR_RATIONAL:
            if self.fraction is None or float(self.fraction) != self.value:
                raise ValueError("rational parameter needs a matching fraction")
            if self.fraction < 0:
                raise ValueError("rational parameter must be >= 0")
        elif self.kind == CIRCULAR_REAL and self.value < 0:
            raise ValueError("real parameter must be >= 0")
        elif self.kind == IMAGINARY and self.value <= 0:
            raise ValueError("imaginary magnitude must be > 0")

    @classmethod
    def rational(cls, q: int, p: int = 1) -> "Parameter":
        if p <= 0:
            raise ValueError("denominator must be positive")
        frac = Fraction(q, p)
        return cls(CIRCULAR_RATIONAL, float(frac), frac)

    @classmethod
    def real(cls, r: float) -> "Parameter":
        return cls(CIRCULAR_REAL, float(r))

    @classmethod
    def imaginary(cls, s: float) -> "Parameter":
        return cls(IMAGINARY, float(s))

    @property
    def is_circular(self) -> bool:
        return self.kind != IMAGINARY

    @property
    def q(self) -> Optional[int]:
        return None if self.fraction is None else self.fraction.numerator

    @property
    def p(self) -> Optional[int]:
        return None if self.fraction is None else self.fraction.denominator

    def label(self) -> str:
        if self.kind == CIRCULAR_RATIONAL:
            return f"{self.q}/{self.p}"
        if self.kind == IMAGINARY:
            return f"i{self.value!r}"
        return repr(self.value)

    def mp_value(self):
        """The parameter as an mpf at the current mpmath precision."""
        if self.fraction is not None:
            return mpmath.mpf(self.fraction.numerator) / self.fraction.denominator
        return mpmath.mpf(self.value)


@dataclass(frozen=True)
class TermSequence:
    """Signs and log-magnitudes of f(0), ..., f(N-1)."""

    N: int
    sign: np.ndarray
    log_abs: np.ndarray
    zero_from: Optional[int] = None
    near_zero: tuple = ()

    def __post_init__(self):
        self.sign.setflags(write=False)
        self.log_abs.setflags(write=False)

    def values(self) -> np.ndarray:
        """f(k) as doubles; overflows to inf once log|f| > ~709."""
        with np.errstate(over="ignore"):
            out = self.sign * np.exp(np.where(self.sign == 0, -np.inf, self.log_abs))
        return out


@dataclass(frozen=True)
class JonesEvaluation:
    value: mpmath.mpf
    log_abs: float
    N: int
    parameter: Parameter
    precision_bits_used: int


class FMax(NamedTuple):
    argmax: int
    log_F_N: float
    degenerate: bool = False


_INDEX_NAMES = ("A", "B", "C", "D", "B_prime", "A_prime", "A_double_prime")


@dataclass(frozen=True)
class CriticalIndices:
    """Real thresholds where g crosses -1, 0 or +1, restricted to [0, N).

    A, A', A'' are the crossings of -1, B, B' the zeros, C, D the crossings of +1.
    """

    N: int
    A: Optional[float] = None
    B: Optional[float] = None
    C: Optional[float] = None
    D: Optional[float] = None
    B_prime: Optional[float] = None
    A_prime: Optional[float] = None
    A_double_prime: Optional[float] = None
    notes: tuple = ()

    def present(self) -> dict:
        return {n: getattr(self, n) for n in _INDEX_NAMES if getattr(self, n) is not None}

    def floors(self) -> dict:
        return {n: math.floor(v) for n, v in self.present().items()}


@dataclass
class SignTableReport:
    passed: bool
    table: str
    checked: int = 0
    first_violation: Optional[str] = None
    boundary_hits: list = field(default_factory=list)


def _validate_N(N):
    if int(N) != N or N < 1:
        raise ValueError(f"N must be a positive integer, got {N!r}")


def _rational_zero_mask(frac: Fraction, N: int, js: np.ndarray) -> np.ndarray:
    """Exact test for g(j) == 0 with r = q/p.

    g(j) = 0 iff q j / (p N) = +-q/p mod 1, i.e. p N divides q (j -+ N).
    With d = gcd(q, p N) that is j = +-N modulo p N / d.
    """
    q, p = frac.numerator, frac.denominator
    if q == 0:
        return np.ones(js.shape, dtype=bool)
    modulus = (p * N) // math.gcd(q, p * N)
    m = js % modulus
    return (m == N % modulus) | (m == (-N) % modulus)


def g_values(param: Parameter, N: int):
    """g(1), ..., g(N-1) as doubles together with the exact-zero mask."""
    _validate_N(N)
    js = np.arange(1, N, dtype=np.int64)
    if param.kind == IMAGINARY:
        a = 2.0 * math.pi * param.value
        g = 2.0 * math.cosh(a) - 2.0 * np.cosh(a * js / N)
        return g, np.zeros(js.shape, dtype=bool)
    if param.fraction is not None:
        zero = _rational_zero_mask(param.fraction, N, js)
        # reduce r mod 1 before scaling to keep the cosine arguments small
        frac = param.fraction
        r_red = float(frac - math.floor(frac))
    else:
        r_red = math.fmod(param.value, 1.0)
        zero = None
    c0 = 2.0 * math.cos(2.0 * math.pi * r_red)
    # r j / N mod 1 computed in two pieces to avoid losing bits for large N
    if param.fraction is not None:
        num = (param.fraction.numerator * js) % (param.fraction.denominator * N)
        angle = 2.0 * math.pi * (num / float(param.fraction.denominator * N))
    else:
        angle = 2.0 * math.pi * np.fmod(param.value * js / N, 1.0)
    g = c0 - 2.0 * np.cos(angle)
    if zero is None:
        zero = g == 0.0
    else:
        g = np.where(zero, 0.0, g)
    return g, zero


def g_factor(j: int, param: Parameter, N: int) -> float:
    """One factor g(j), 0 <= j <= N, by the cosine (cosh) difference form."""
    _validate_N(N)
    if not 0 <= j <= N:
        raise ValueError(f"j must lie in [0, N], got j={j}, N={N}")
    if param.kind == IMAGINARY:
        a = 2.0 * math.pi * param.value
        return 2.0 * math.cosh(a) - 2.0 * math.cosh(a * j / N)
    if param.fraction is not None:
        if bool(_rational_zero_mask(param.fraction, N, np.array([j]))[0]):
            return 0.0
        frac = param.fraction
        rj = (frac * j / N) % 1
        return 2.0 * math.cos(2.0 * math.pi * float(frac % 1)) - 2.0 * math.cos(2.0 * math.pi * float(rj))
    r = param.value
    return 2.0 * math.cos(2.0 * math.pi * r) - 2.0 * math.cos(2.0 * math.pi * r * j / N)


def g_factor_product_form(j: int, param: Parameter, N: int) -> float:
    """4 sin(pi r j/N + pi r) sin(pi r j/N - pi r); sinh analogue for imaginary."""
    x = math.pi * param.value
    if param.kind == IMAGINARY:
        return -4.0 * math.sinh(x * j / N + x) * math.sinh(x * j / N - x)
    return 4.0 * math.sin(x * j / N + x) * math.sin(x * j / N - x)


def partial_products(param: Parameter, N: int) -> TermSequence:
    """Log-space running products f(0..N-1) at double precision."""
    g, zero = g_values(param, N)
    sign = np.ones(N, dtype=np.int8)
    log_abs = np.zeros(N, dtype=np.float64)
    zero_from = None
    near = ()
    if N > 1:
        gs = np.sign(g).astype(np.int8)
        gs[zero] = 0
        with np.errstate(divide="ignore"):
            lg = np.log(np.abs(g))
        lg[zero] = 0.0
        hits = np.flatnonzero(zero)
        if hits.size:
            zero_from = int(hits[0]) + 1
        neg = np.cumsum(gs < 0)
        sign[1:] = np.where(neg % 2 == 0, 1, -1)
        log_abs[1:] = np.cumsum(lg)
        if zero_from is not None:
            sign[zero_from:] = 0
            log_abs[zero_from:] = np.nan
        if param.kind == CIRCULAR_REAL:
            close = np.flatnonzero((~zero) & (np.abs(g) < NEAR_ZERO))
            if close.size:
                near = tuple(int(i) + 1 for i in close)
                warnings.warn(
                    f"g(j) within {NEAR_ZERO:g} of 0 at j={list(near)[:5]} for real-kind r={param.value!r}, "
                    f"N={N}; use a rational parameter for exact zeros",
                    NearZeroWarning,
                    stacklevel=2,
                )
    return TermSequence(N=N, sign=sign, log_abs=log_abs, zero_from=zero_from, near_zero=near)


def _mp_g_factors(param: Parameter, N: int):
    """Yield g(1..N-1) as mpf values at the current mpmath precision."""
    if param.kind == IMAGINARY:
        a = 2 * mpmath.pi * mpmath.mpf(param.value)
        c0 = 2 * mpmath.cosh(a)
        for j in range(1, N):
            yield c0 - 2 * mpmath.cosh(a * j / N)
        return
    zero = None
    if param.fraction is not None:
        zero = _rational_zero_mask(param.fraction, N, np.arange(1, N, dtype=np.int64))
        frac = param.fraction
        c0 = 2 * mpmath.cospi(2 * mpmath.mpf(frac.numerator) / frac.denominator)
        for j in range(1, N):
            if zero[j - 1]:
                yield mpmath.mpf(0)
                continue
            x = Fraction(2 * frac.numerator * j, frac.denominator * N) % 2
            yield c0 - 2 * mpmath.cospi(mpmath.mpf(x.numerator) / x.denominator)
        return
    r = mpmath.mpf(param.value)
    c0 = 2 * mpmath.cospi(2 * r)
    for j in range(1, N):
        yield c0 - 2 * mpmath.cospi(2 * r * j / N)


def jones_value(param: Parameter, N: int, cfg: PrecisionConfig = DEFAULT_PRECISION) -> JonesEvaluation:
    """J_N(E; t) as the Habiro-Le sum, accumulated at ``cfg.working_bits``."""
    _validate_N(N)
    bits = int(cfg.working_bits)
    if bits < 53:
        raise ValueError("working_bits must be >= 53")
    with mpmath.workprec(bits):
        total = mpmath.mpf(1)
        f = mpmath.mpf(1)
        for gj in _mp_g_factors(param, N):
            if gj == 0:
                break
            f *= gj
            total += f
        if not mpmath.isfinite(total):
            raise PrecisionError(
                f"J_N overflowed at {bits} bits for N={N}, r={param.label()}; raise the exponent budget"
            )
        log_abs = float(mpmath.log(abs(total))) if total != 0 else -math.inf
    return JonesEvaluation(value=total, log_abs=log_abs, N=N, parameter=param, precision_bits_used=bits)


def term_values_mp(param: Parameter, N: int, cfg: PrecisionConfig = DEFAULT_PRECISION) -> list:
    """f(0), ..., f(N-1) as mpf values at ``cfg.working_bits``."""
    _validate_N(N)
    with mpmath.workprec(int(cfg.working_bits)):
        out = [mpmath.mpf(1)]
        f = out[0]
        for gj in _mp_g_factors(param, N):
            f = f * gj
            out.append(f)
    return out


def jones_log_abs_fast(param: Parameter, N: int) -> float:
    """log|J_N| at double precision via a signed log-sum-exp over the term sequence.

    Exact when all terms share a sign (imaginary parameters); otherwise the
    relative cancellation must stay small, which holds whenever |J_N| is
    comparable to max|f|.
    """
    ts = partial_products(param, N)
    live = ts.sign != 0
    lse, sgn = logsumexp(ts.log_abs[live], b=ts.sign[live].astype(np.float64), return_sign=True)
    if sgn == 0:
        return -math.inf
    return float(lse)


def jones_log_growth(param: Parameter, N: int, cfg: PrecisionConfig = DEFAULT_PRECISION) -> float:
    """2 pi log|J_N| / N."""
    ev = jones_value(param, N, cfg)
    if ev.value == 0:
        raise UndefinedGrowthError(f"J_N = 0 for N={N}, r={param.label()}")
    return 2.0 * math.pi * ev.log_abs / N


def _zero_indices(param: Parameter, N: int):
    """B = N|1-r|/r and B' = N(2-r)/r; exact for rational parameters."""
    r = param.fraction if param.fraction is not None else param.value
    if r == 0:
        return None, None
    B = N * abs(1 - r) / r
    Bp = N * (2 - r) / r
    return float(B), float(Bp)


def critical_indices(param: Parameter, N: int) -> CriticalIndices:
    """Crossing indices of g for a circular parameter, those lying in [0, N)."""
    _validate_N(N)
    if not param.is_circular:
        raise ValueError("critical indices are defined for circular parameters only")
    r = param.value
    if r == 0:
        return CriticalIndices(N=N, notes=("r = 0: g vanishes identically",))
    notes = []
    vals = {}
    vals["B"], vals["B_prime"] = _zero_indices(param, N)
    scale = N / (2.0 * math.pi * r)
    try:
        th = theta(r)
        vals["C"] = scale * th
        vals["D"] = scale * (2.0 * math.pi - th)
    except DomainError:
        notes.append("theta(r) undefined: C, D absent")
    try:
        ph = phi(r)
        vals["A"] = scale * ph
        vals["A_prime"] = scale * (2.0 * math.pi - ph)
        vals["A_double_prime"] = scale * (2.0 * math.pi + ph)
    except DomainError:
        notes.append("phi(r) undefined: A, A', A'' absent")
    kept = {}
    for k, v in vals.items():
        if v is None:
            continue
        # thresholds sitting on an integer up to rounding are snapped, so floors are exact
        near = round(v)
        if abs(v - near) <= _SNAP * max(1.0, N):
            v = float(near)
        if 0 <= v < N:
            kept[k] = v
    return CriticalIndices(N=N, notes=tuple(notes), **kept)


def f_max(param: Parameter, N: int, terms: Optional[TermSequence] = None) -> FMax:
    """Index (smallest on ties) and log of the largest |f(k)|, 0 <= k < N."""
    ts = terms if terms is not None else partial_products(param, N)
    if ts.zero_from == 1:
        return FMax(0, 0.0, True)
    la = np.where(ts.sign == 0, -np.inf, ts.log_abs)
    top = float(np.max(la))
    k = int(np.flatnonzero(la >= top - TIE_TOL * max(1.0, abs(top)))[0])
    return FMax(k, float(la[k]), False)


# Band tables: (lower index, upper index, interval of g) in increasing j.
# None stands for 0 on the left and N on the right.
_INF = math.inf
_TABLES = {
    "main r<=1": [
        (None, "B", (-1.0, 0.0)),
        ("B", "C", (0.0, 1.0)),
        ("C", "D", (1.0, _INF)),
        ("D", None, (0.0, 1.0)),
    ],
    "main r>1": [
        (None, "B", (-1.0, 0.0)),
        ("B", "C", (0.0, 1.0)),
        ("C", "D", (1.0, _INF)),
        ("D", "B_prime", (0.0, 1.0)),
        ("B_prime", None, (-1.0, 0.0)),
    ],
    "near-main r<1": [
        (None, "A", (-_INF, -1.0)),
        ("A", "B", (-1.0, 0.0)),
        ("B", "C", (0.0, 1.0)),
        ("C", "D", (1.0, _INF)),
        ("D", None, (0.0, 1.0)),
    ],
    "near-main r>1": [
        (None, "A", (-_INF, -1.0)),
        ("A", "B", (-1.0, 0.0)),
        ("B", "C", (0.0, 1.0)),
        ("C", "D", (1.0, _INF)),
        ("D", "B_prime", (0.0, 1.0)),
        ("B_prime", "A_prime", (-1.0, 0.0)),
        ("A_prime", "A_double_prime", (-_INF, -1.0)),
        ("A_double_prime", None, (-1.0, 0.0)),
    ],
    "small r": [
        (None, None, (-1.0, 0.0)),
    ],
}

_BOUNDARY_VALUE = {"A": -1.0, "A_prime": -1.0, "A_double_prime": -1.0,
                   "B": 0.0, "B_prime": 0.0, "C": 1.0, "D": 1.0}


def _table_for(r: float) -> Optional[str]:
    if 5 / 6 < r <= 1:
        return "main r<=1"
    if 1 < r < 7 / 6:
        return "main r>1"
    if 3 / 4 < r <= 5 / 6:
        return "near-main r<1"
    if 7 / 6 <= r < 5 / 4:
        return "near-main r>1"
    if 0 < r < 1 / 6:
        return "small r"
    return None


def sign_table_check(param: Parameter, N: int, boundary_tol: float = 1e-9) -> SignTableReport:
    """Check every g(j), 0 < j < N, against the band table of its regime.

    An integer j sitting on a threshold (rational parameters) must hit the
    threshold value; elsewhere g(j) must lie strictly inside its band.
    """
    if not param.is_circular:
        raise ValueError("sign tables exist for circular parameters only")
    name = _table_for(param.value)
    if name is None:
        return SignTableReport(False, "none", first_violation=f"no band table covers r={param.label()}")
    idx = critical_indices(param, N).present()
    g, _ = g_values(param, N)
    report = SignTableReport(True, name)
    bands = _TABLES[name]
    for lo, hi, _ in bands:
        for key in (lo, hi):
            if key is not None and key not in idx:
                report.passed = False
                report.first_violation = f"index {key} undefined for r={param.label()}, N={N}"
                return report
    for j in range(1, N):
        gj = float(g[j - 1])
        on_edge = [k for k, v in idx.items() if abs(j - v) <= boundary_tol]
        report.checked += 1
        if on_edge:
            target = _BOUNDARY_VALUE[on_edge[0]]
            report.boundary_hits.append((j, on_edge[0], gj))
            if abs(gj - target) > 1e-12:
                report.passed = False
                report.first_violation = f"g({j}) = {gj!r} but j = {on_edge[0]} requires {target}"
                return report
            continue
        for lo, hi, (glo, ghi) in bands:
            left = 0.0 if lo is None else idx[lo]
            right = float(N) if hi is None else idx[hi]
            if left < j < right:
                if not glo < gj < ghi:
                    report.passed = False
                    report.first_violation = (
                        f"g({j}) = {gj!r} outside ({glo}, {ghi}) required on ({lo or 0}, {hi or 'N'})"
                    )
                    return report
                break
        else:
            report.passed = False
            report.first_violation = f"j = {j} falls in no band"
            return report
    return report
