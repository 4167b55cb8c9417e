import random
from fractions import Fraction as F

import pytest
from hypothesis import given, settings, strategies as st
from mpmath import mp, mpc, mpf

from mtzeta.numerics import (
    DomainError,
    ValueWithError,
    gamma,
    hurwitz_zeta,
    parse_complex,
    pochhammer,
    polylog_point,
    riemann_zeta,
    zeta_rational,
)

# mpmath's own zeta/gamma/polylog serve as independent references, run at a
# higher precision than the values under test.
REF_PREC = 700


def ref(fn, *args):
    with mp.workprec(REF_PREC):
        return fn(*args)


def within(v: ValueWithError, exact) -> bool:
    with mp.workprec(REF_PREC):
        return abs(v.estimate - exact) <= v.abs_error


@pytest.mark.parametrize("s", [2, 3, 5, 10, mpf("3.5"), mpc(2, 1), mpc("1.5", "-7")])
@pytest.mark.parametrize("prec", [128, 256, 512])
def test_riemann_zeta_bound_contains_reference(s, prec):
    v = riemann_zeta(s, prec)
    assert v.rigorous
    assert within(v, ref(mp.zeta, s))
    assert v.abs_error < mpf(2) ** (-prec + 4) * max(1, abs(v.estimate))


@pytest.mark.parametrize("s,a", [(2, mpf("0.5")), (3, 7), (mpf("2.5"), mpf("1.25")), (mpc(3, 2), 40)])
def test_hurwitz_zeta(s, a):
    v = hurwitz_zeta(s, a, 256)
    assert within(v, ref(mp.zeta, s, a))


def test_hurwitz_derivative_is_flagged_heuristic():
    v = hurwitz_zeta(3, 5, 256, derivative=1)
    assert not v.rigorous
    assert within(v, ref(lambda: mp.zeta(3, 5, 1)))


def test_zeta_error_is_relative_for_large_shift():
    # tiny Hurwitz values must still carry a tiny error bound
    v = hurwitz_zeta(20, 50, 256)
    assert v.abs_error < abs(v.estimate) * mpf(2) ** -250


def test_zeta_domain():
    with pytest.raises(DomainError):
        riemann_zeta(1)
    with pytest.raises(DomainError):
        riemann_zeta(mpf("0.5"))


def test_zeta_at_nonpositive_integers():
    assert zeta_rational(0) == F(-1, 2)
    assert zeta_rational(-1) == F(-1, 12)
    assert zeta_rational(-2) == 0
    assert zeta_rational(-3) == F(1, 120)


@given(st.floats(-40, 40).filter(lambda x: abs(x - round(x)) > 1e-3 or x > 0.5),
       st.floats(-30, 30))
@settings(max_examples=60, deadline=None, derandomize=True)
def test_gamma_bound_contains_reference(re, im):
    s = mpc(re, im) if im else mpf(re)
    v = gamma(s, 256)
    assert within(v, ref(mp.gamma, s))


def test_gamma_integers_are_exact():
    assert gamma(7, 128).estimate == 720
    assert gamma(7, 128).abs_error == 0


@pytest.mark.parametrize("k", [1, 2, 3, 5])
@pytest.mark.parametrize("x", ["0", "0.1", "0.5", "0.75", "0.999"])
def test_polylog_point(k, x):
    v = polylog_point(k, mpf(x), 256)
    assert within(v, ref(mp.polylog, k, mpf(x)))


def test_polylog_domain():
    with pytest.raises(DomainError):
        polylog_point(2, 1)


def test_pochhammer():
    v = pochhammer(mpf("3.5"), 3, 128)
    assert v.estimate == mpf("3.5") * mpf("4.5") * mpf("5.5")
    assert pochhammer(mpc(1, 1), 0).estimate == 1


@pytest.mark.parametrize("text,value", [
    ("3", mpf(3)),
    ("7/2", mpf(3.5)),
    ("-0.25", mpf(-0.25)),
    ("3+0.5i", mpc(3, 0.5)),
    ("2-1/4i", mpc(2, -0.25)),
    ("i", mpc(0, 1)),
    ("-i", mpc(0, -1)),
    ("1e-3+2i", mpc(0.001, 2)),
])
def test_parse_complex(text, value):
    assert parse_complex(text) == value


@pytest.mark.parametrize("bad", ["", "abc", "3+", "1/0"])
def test_parse_complex_rejects(bad):
    with pytest.raises((ValueError, ZeroDivisionError)):
        parse_complex(bad)


def test_value_with_error_arithmetic_propagates_bounds():
    rng = random.Random(7)
    with mp.workprec(200):
        for _ in range(50):
            xa, xb = mpf(rng.uniform(-3, 3)), mpf(rng.uniform(0.5, 3))
            ea, eb = mpf(rng.uniform(0, 1e-6)), mpf(rng.uniform(0, 1e-6))
            a = ValueWithError(xa + ea / 2, ea)
            b = ValueWithError(xb - eb / 3, eb)
            for op in (lambda u, v: u + v, lambda u, v: u - v, lambda u, v: u * v, lambda u, v: u / v):
                got = op(a, b)
                assert abs(got.estimate - op(xa, xb)) <= got.abs_error


def test_rigor_flag_is_sticky():
    a = ValueWithError(mpf(1), mpf(0), True)
    b = ValueWithError(mpf(1), mpf(0), False)
    assert not (a + b).rigorous
    assert (a * 2).rigorous


def test_negative_error_rejected():
    with pytest.raises(ValueError):
        ValueWithError(mpf(1), mpf(-1))
