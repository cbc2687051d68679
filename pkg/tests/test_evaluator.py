import math
import warnings
from fractions import Fraction

import mpmath
import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import oracles
from fig8jones.evaluator import (
    NearZeroWarning,
    Parameter,
    PrecisionError,
    UndefinedGrowthError,
    critical_indices,
    f_max,
    g_factor,
    g_factor_product_form,
    g_values,
    jones_log_abs_fast,
    jones_log_growth,
    jones_value,
    partial_products,
    sign_table_check,
    term_values_mp,
)
from fig8jones.special import PrecisionConfig, phi_hyperbolic

R1 = Parameter.rational(1)
R9_10 = Parameter.rational(9, 10)


def test_parameter_construction():
    p = Parameter.rational(18, 20)
    assert (p.q, p.p) == (9, 10)
    assert p.value == 0.9
    assert Parameter.real(0.9).fraction is None
    with pytest.raises(ValueError):
        Parameter.rational(1, 0)
    with pytest.raises(ValueError):
        Parameter.real(-0.1)
    with pytest.raises(ValueError):
        Parameter.imaginary(0.0)
    with pytest.raises(ValueError):
        Parameter("circular-rational", 0.5)


def test_g_factor_examples():
    assert g_factor(2, R1, 4) == pytest.approx(4.0, abs=1e-15)
    assert g_factor(1, R1, 6) == pytest.approx(1.0, abs=1e-15)
    direct = 2 * math.cos(1.8 * math.pi) - 2 * math.cos(0.9 * math.pi)
    assert g_factor(5, Parameter.real(0.9), 10) == pytest.approx(direct, abs=1e-15)
    assert g_factor(5, Parameter.real(0.9), 10) == pytest.approx(
        g_factor_product_form(5, Parameter.real(0.9), 10), abs=1e-13)


@settings(max_examples=100, deadline=None)
@given(st.floats(min_value=0.01, max_value=2.0), st.integers(min_value=2, max_value=300), st.data())
def test_g_factor_forms_agree(r, N, data):
    j = data.draw(st.integers(min_value=0, max_value=N))
    p = Parameter.real(r)
    assert abs(g_factor(j, p, N) - g_factor_product_form(j, p, N)) < 1e-12


@settings(max_examples=50, deadline=None)
@given(st.floats(min_value=0.01, max_value=3.0), st.integers(min_value=2, max_value=200), st.data())
def test_g_factor_imaginary_forms_agree(s, N, data):
    j = data.draw(st.integers(min_value=0, max_value=N))
    p = Parameter.imaginary(s)
    a, b = g_factor(j, p, N), g_factor_product_form(j, p, N)
    # the difference form cancels two terms of size cosh(2 pi s)
    assert abs(a - b) <= 1e-13 * 2 * math.cosh(2 * math.pi * s)


def test_g_vector_matches_scalar():
    for p, N in [(R9_10, 37), (Parameter.real(1.13), 50), (Parameter.imaginary(0.7), 40)]:
        g, _ = g_values(p, N)
        for j in range(1, N):
            assert g[j - 1] == pytest.approx(g_factor(j, p, N), abs=1e-13)


def test_partial_products_r1_N4():
    ts = partial_products(R1, 4)
    assert list(ts.sign) == [1, 1, 1, 1]
    assert np.allclose(ts.log_abs, [0, math.log(2), math.log(8), math.log(16)], atol=1e-14)
    assert ts.zero_from is None


def test_partial_products_exact_zero_rational():
    ts = partial_products(R9_10, 9)
    assert ts.zero_from == 1
    assert list(ts.sign) == [1] + [0] * 8
    ts = partial_products(R9_10, 90)
    assert ts.zero_from == 10


def test_partial_products_r0():
    for p in (Parameter.rational(0), Parameter.real(0.0)):
        ts = partial_products(p, 7)
        assert ts.zero_from == 1
        assert list(ts.sign) == [1, 0, 0, 0, 0, 0, 0]


def test_term_sequence_invariants():
    ts = partial_products(Parameter.real(0.93), 300)
    assert ts.sign[0] == 1 and ts.log_abs[0] == 0.0
    with pytest.raises(ValueError):
        ts.sign[0] = 5


def test_rational_zero_mask_matches_exact_enumeration():
    # g(j) = 0 iff cos(2 pi r j/N) = cos(2 pi r), decided exactly via fractions
    for frac in (Fraction(9, 10), Fraction(11, 10), Fraction(7, 6), Fraction(3, 2), Fraction(5, 4)):
        p = Parameter.rational(frac.numerator, frac.denominator)
        for N in range(1, 60):
            _, zero = g_values(p, N)
            for j in range(1, N):
                x = frac * j / N
                expected = ((x - frac) % 1 == 0) or ((x + frac) % 1 == 0)
                assert bool(zero[j - 1]) == expected, (frac, N, j)


def test_near_zero_warning_for_real_kind():
    with pytest.warns(NearZeroWarning):
        partial_products(Parameter.real(0.9), 9)


@pytest.mark.parametrize("N,expected", [(2, 5), (3, 13), (4, 27)])
def test_jones_value_small_r1(N, expected):
    ev = jones_value(R1, N)
    assert abs(ev.value - expected) < 1e-9
    assert ev.precision_bits_used == 128


def test_jones_value_N2_is_jones_polynomial():
    # t^-2 - t^-1 + 1 - t + t^2 at t = -1
    assert abs(jones_value(R1, 2).value - 5) < 1e-30


def test_jones_value_r0():
    assert jones_value(Parameter.rational(0), 17).value == 1
    assert jones_value(Parameter.real(0.0), 17).value == 1


@pytest.mark.parametrize("param,N", [
    (R1, 25), (R9_10, 91), (Parameter.rational(9, 10), 90), (Parameter.real(1.07), 60),
    (Parameter.real(0.42), 33), (Parameter.rational(5, 4), 44),
])
def test_jones_value_against_complex_oracle(param, N):
    ref = oracles.habiro_le_complex(param.fraction if param.fraction is not None else param.value, N)
    assert abs(ref.imag) < 1e-25 * max(1, abs(ref.real))
    got = jones_value(param, N).value
    assert float(abs(got - ref.real)) <= 1e-25 * max(1.0, float(abs(ref.real)))


def test_jones_value_imaginary_against_oracle():
    ref = oracles.habiro_le_complex(0.8, 50, imaginary=True)
    got = jones_value(Parameter.imaginary(0.8), 50).value
    assert float(abs(got / ref.real - 1)) < 1e-25


@settings(max_examples=50, deadline=None)
@given(st.floats(min_value=0.0, max_value=2.0))
def test_N2_matches_jones_polynomial(r):
    poly = oracles.jones_n2_polynomial(r)
    assert abs(poly.imag) < 1e-20
    assert abs(float(jones_value(Parameter.real(r), 2).value) - float(poly.real)) < 1e-10


def test_double_path_consistency():
    for param in (R1, Parameter.real(0.91), Parameter.real(1.12), Parameter.real(0.3)):
        for N in (50, 200, 500):
            ts = partial_products(param, N)
            ref = term_values_mp(param, N, PrecisionConfig(working_bits=160))
            vals = np.exp(ts.log_abs) * ts.sign
            for k in range(N):
                assert abs(vals[k] - float(ref[k])) <= 1e-9 * abs(float(ref[k])), (param, N, k)


def test_precision_self_test():
    for param, N in ((R1, 400), (Parameter.real(0.95), 400), (Parameter.real(1.1), 300)):
        a = jones_value(param, N, PrecisionConfig(128)).log_abs
        b = jones_value(param, N, PrecisionConfig(256)).log_abs
        assert abs(a - b) <= 1e-9 * abs(b)


def test_large_magnitude_no_overflow():
    ev = jones_value(Parameter.imaginary(3.0), 3000)
    assert math.isfinite(ev.log_abs) and ev.log_abs > 1000
    assert ev.log_abs == pytest.approx(jones_log_abs_fast(Parameter.imaginary(3.0), 3000), rel=1e-12)


def test_precision_error_type_exists():
    assert issubclass(PrecisionError, ArithmeticError)


def test_jones_log_growth():
    assert jones_log_growth(R1, 2) == pytest.approx(2 * math.pi * math.log(5) / 2, abs=1e-14)
    assert jones_log_growth(Parameter.rational(0), 10) == 0.0


def test_jones_log_growth_r1_N2000(golden):
    v = jones_log_growth(R1, 2000)
    assert abs(v - golden["jones_s_N_r1_N2000"]) < 1e-9
    assert abs(v - golden["vhat_1"]) < 0.05


def test_undefined_growth_error():
    # J_N = 0 cannot be reached for the figure-eight at these parameters; a monkeypatched
    # evaluation shows the error surfaces
    from fig8jones import evaluator

    class Zero:
        value = mpmath.mpf(0)
        log_abs = -math.inf

    orig = evaluator.jones_value
    evaluator.jones_value = lambda *a, **k: Zero()
    try:
        with pytest.raises(UndefinedGrowthError):
            evaluator.jones_log_growth(R1, 3)
    finally:
        evaluator.jones_value = orig


def test_critical_indices_examples():
    ci = critical_indices(R1, 12)
    assert (ci.B, ci.C, ci.D) == (0.0, 2.0, 10.0)
    assert ci.A is None and ci.B_prime is None
    ci = critical_indices(R9_10, 90)
    assert (ci.B, ci.C, ci.D) == (10.0, 20.0, 80.0)
    ci = critical_indices(Parameter.rational(6, 5), 60)
    assert (ci.A, ci.B, ci.B_prime) == (5.0, 10.0, 40.0)
    assert (ci.A_prime, ci.A_double_prime) == (45.0, 55.0)


@pytest.mark.parametrize("r", [0.84, 0.9, 0.97, 1.0, 1.03, 1.1, 1.16, 0.76, 0.8, 0.83, 1.17, 1.2, 1.24])
def test_critical_indices_ordering(r):
    ci = critical_indices(Parameter.real(r), 1000)
    vals = list(ci.present().values())
    assert vals == sorted(vals) and len(set(vals)) == len(vals)
    assert all(0 <= v < 1000 for v in vals)


@pytest.mark.parametrize("r", [0.86, 0.95, 1.05, 1.12, 0.8, 1.2])
def test_critical_indices_are_crossings(r):
    # g at each threshold equals the value the band table attaches to it
    p = Parameter.real(r)
    N = 1000
    target = {"A": -1, "A_prime": -1, "A_double_prime": -1, "B": 0, "B_prime": 0, "C": 1, "D": 1}
    for name, j in critical_indices(p, N).present().items():
        g = 2 * math.cos(2 * math.pi * r) - 2 * math.cos(2 * math.pi * r * j / N)
        assert g == pytest.approx(target[name], abs=1e-9)


def test_f_max_examples():
    # brute force: |f(9)| = |f(10)| exactly since g(10) = 1; ties go to the smaller index
    ref = [abs(x) for x in oracles.brute_force_f(1, 12)]
    top = max(ref)
    assert abs(ref[9] - top) < 1e-30 and abs(ref[10] - top) < 1e-30
    fm = f_max(R1, 12)
    assert fm.argmax == 9
    assert fm.log_F_N == pytest.approx(float(mpmath.log(top)), abs=1e-13)
    assert f_max(Parameter.real(0.05), 50).argmax == 0
    fm = f_max(Parameter.imaginary(1.0), 100)
    assert fm.argmax == math.floor(phi_hyperbolic(1.0) * 100 / (2 * math.pi))


def test_f_max_degenerate():
    assert f_max(Parameter.rational(0), 5) == (0, 0.0, True)


@pytest.mark.parametrize("r,N", [(0.9123, 400), (0.97, 1000), (1.05, 700), (1.13, 333)])
def test_f_max_at_floor_D_irrational(r, N):
    p = Parameter.real(r)
    ref = [abs(x) for x in oracles.brute_force_f(r, N, dps=30)]
    k = max(range(N), key=lambda i: ref[i])
    assert f_max(p, N).argmax == k == math.floor(critical_indices(p, N).D)


def test_sign_table_examples():
    assert sign_table_check(Parameter.real(0.95), 1000).passed
    rep = sign_table_check(R9_10, 90)
    assert rep.passed
    assert (10, "B", 0.0) in rep.boundary_hits
    rep = sign_table_check(Parameter.real(1.2), 600)
    assert rep.passed and rep.table == "near-main r>1"


@pytest.mark.parametrize("r", [0.87, 0.99, 1.0, 1.04, 1.15, 0.78, 1.22, 0.05, 0.14])
def test_sign_table_passes_in_covered_regimes(r):
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", NearZeroWarning)
        rep = sign_table_check(Parameter.real(r), 997)
    assert rep.passed, rep.first_violation


def test_sign_table_uncovered():
    assert not sign_table_check(Parameter.real(0.5), 100).passed


@pytest.mark.parametrize("r", [0.86, 0.93])
def test_sign_alternation(r):
    p = Parameter.real(r)
    N = 500
    ts = partial_products(p, N)
    B = critical_indices(p, N).B
    for j in range(1, N):
        if j < B:
            assert ts.sign[j - 1] * ts.sign[j] < 0
        elif j > B + 1:
            assert ts.sign[j] == ts.sign[j - 1]
