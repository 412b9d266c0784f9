import cmath
import math
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from galspin.errors import ConsistencyError, InputError
from galspin.exact import ExactScalar, Phase, QQi, cyclotomic_poly

F = Fraction


def scalar(x):
    return ExactScalar.from_rational(F(x))


def test_gaussian_arithmetic():
    a = QQi(F(1, 2), F(3))
    b = QQi(F(2), F(-1, 3))
    assert (a * b).re == F(1, 2) * 2 - F(3) * F(-1, 3)
    assert (a + b - b) == a
    assert a.conj().im == -a.im
    assert a.times_i_power(2) == -a
    assert a.times_i_power(4) == a


def test_quarter_turn_phases_fold_into_coefficients():
    assert ExactScalar.phase(F(1, 2)) == ExactScalar.gaussian(0, 1)
    assert ExactScalar.phase(F(1)) == scalar(-1)
    assert ExactScalar.phase(F(3, 2)) == ExactScalar.gaussian(0, -1)
    assert ExactScalar.phase(F(2)) == scalar(1)


def test_phase_multiplication_adds_exponents():
    a = ExactScalar.phase(F(1, 3))
    b = ExactScalar.phase(F(2, 3))
    assert a * b == scalar(-1)
    assert a * a.conj() == scalar(1)


def test_phase_with_symbols():
    t = ExactScalar.phase(0, [("tau", F(2, 5))])
    assert not (t - scalar(1)).is_zero()
    assert (t * t.conj()) == scalar(1)
    u = ExactScalar.phase(0, [("tau", F(-2, 5))])
    assert t.conj() == u


def test_roots_of_unity_cancellation():
    # 2*cos(pi/3) = 1
    s = ExactScalar.phase(F(1, 3)) + ExactScalar.phase(F(-1, 3))
    assert s == scalar(1)
    # full sum over 16th roots of unity
    total = ExactScalar.zero()
    for n in range(-8, 8):
        total = total + ExactScalar.phase(F(2 * n, 16))
    assert total.is_zero()


def test_partial_root_sums_are_not_zero():
    total = ExactScalar.zero()
    for n in range(5):
        total = total + ExactScalar.phase(F(2 * n, 16))
    assert not total.is_zero()


def test_radicals():
    r2 = ExactScalar.sqrt(2)
    assert r2 * r2 == scalar(2)
    assert ExactScalar.sqrt(8) == scalar(2) * r2
    half = ExactScalar.sqrt(F(1, 2))
    assert half * half == scalar(F(1, 2))
    assert ExactScalar.sqrt(F(9, 4)) == scalar(F(3, 2))
    with pytest.raises(InputError):
        ExactScalar.sqrt(-1)


def test_radical_sectors_do_not_mix():
    assert not (ExactScalar.sqrt(2) - scalar(1)).is_zero()
    assert (ExactScalar.sqrt(2) - ExactScalar.sqrt(2)).is_zero()


def test_abs2_strips_phase():
    a = scalar(F(3, 5)) * ExactScalar.phase(F(1, 3))
    assert a.abs2() == scalar(F(9, 25))
    b = ExactScalar.sqrt(F(1, 2)) * ExactScalar.phase(0, [("v", F(7))])
    assert b.abs2() == scalar(F(1, 2))


def test_as_fraction():
    assert (scalar(2) + scalar(F(1, 3))).as_fraction() == F(7, 3)
    # 2*cos(pi/3) = 1 hides a rational inside nontrivial phases
    s = scalar(5) + ExactScalar.phase(F(1, 3)) + ExactScalar.phase(F(-1, 3)) - scalar(1)
    assert s.as_fraction() == F(5)
    with pytest.raises(ConsistencyError):
        (ExactScalar.sqrt(2)).as_fraction()
    with pytest.raises(ConsistencyError):
        (scalar(1) + ExactScalar.phase(F(1, 3))).as_fraction()


def test_to_complex_matches_cmath():
    s = scalar(F(3, 5)) * ExactScalar.phase(F(1, 3)) + ExactScalar.gaussian(0, F(1, 4))
    expect = 0.6 * cmath.exp(1j * math.pi / 3) + 0.25j
    assert abs(s.to_complex() - expect) < 1e-14
    t = ExactScalar.phase(0, [("pi^2", F(1, 2))])
    assert abs(t.to_complex() - cmath.exp(1j * math.pi**2 / 2)) < 1e-14


def test_cyclotomic_polys():
    assert cyclotomic_poly(1) == (F(-1), F(1))
    assert cyclotomic_poly(4) == (F(1), F(0), F(1))
    assert cyclotomic_poly(12) == (F(1), F(0), F(-1), F(0), F(1))


small_fractions = st.fractions(
    min_value=-3, max_value=3, max_denominator=8
)


@given(small_fractions, small_fractions, small_fractions)
def test_phase_sum_evaluates_consistently(p1, p2, c):
    a = scalar(c) * ExactScalar.phase(p1)
    b = ExactScalar.phase(p2)
    lhs = ((a + b) * (a + b).conj()).to_complex()
    av, bv = a.to_complex(), b.to_complex()
    assert abs(lhs - abs(av + bv) ** 2) < 1e-12


@given(small_fractions, small_fractions)
def test_self_difference_is_zero(p, c):
    a = scalar(c) * ExactScalar.phase(p) + ExactScalar.sqrt(3) * scalar(c)
    assert (a - a).is_zero()
    assert a == a
