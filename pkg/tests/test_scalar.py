from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from dzeta.scalar import (ES_ONE, ES_ZERO, ExactScalar, QI, double_factorial,
                          gamma_exact)


def F(p, q=1):
    return Fraction(p, q)


# -- gamma values -----------------------------------------------------------

def test_gamma_integer():
    assert gamma_exact(3) == ExactScalar.from_rational(2)
    assert gamma_exact(1) == ES_ONE
    assert gamma_exact(5) == ExactScalar.from_rational(24)


def test_gamma_half():
    sqrt_pi = ExactScalar.pi_pow(1)
    assert gamma_exact(F(1, 2)) == sqrt_pi
    assert gamma_exact(F(3, 2)) == sqrt_pi * F(1, 2)
    assert gamma_exact(F(7, 2)) == sqrt_pi * F(15, 8)


def test_gamma_domain():
    with pytest.raises(ValueError):
        gamma_exact(0)
    with pytest.raises(ValueError):
        gamma_exact(F(-1, 2))
    with pytest.raises(ValueError):
        gamma_exact(F(1, 3))


def test_double_factorial():
    assert double_factorial(-1) == 1
    assert double_factorial(5) == 15
    assert double_factorial(6) == 48


# -- canonical form ---------------------------------------------------------

def test_cancellation_is_empty_map():
    a = ExactScalar.two_pow(3) + ExactScalar.pi_pow(-1) * QI(F(2, 7), F(1, 3))
    assert not (a - a).terms
    assert a - a == ES_ZERO


def test_even_power_of_two_merges_with_rational():
    # 2^(-3) + 2^(-2) = 3 * 2^(-3): same parity class, one canonical term
    a = ExactScalar([((-6, 0), QI(1)), ((-4, 0), QI(1))])
    assert a == ExactScalar.two_pow(-6) * 3
    assert len(a.terms) == 1


def test_two_valuation_extracted():
    # coefficient 6 = 2 * 3 stores the 2-power in the exponent
    a = ExactScalar.from_rational(6)
    ((e2, epi), c), = a.terms.items()
    assert (e2, epi) == (2, 0)
    assert c == QI(3)


def test_sqrt2_squared():
    r2 = ExactScalar.two_pow(1)
    assert r2 * r2 == ExactScalar.from_rational(2)


def test_i_power_cycle():
    assert ExactScalar.i_power(4) == ES_ONE
    assert ExactScalar.i_power(-1) == ExactScalar.i_power(3)
    assert ExactScalar.i_power(2) == ExactScalar.from_rational(-1)


# -- ring axioms (property-based) ------------------------------------------

small_fraction = st.builds(Fraction, st.integers(-30, 30),
                           st.integers(1, 9))

scalars = st.lists(
    st.tuples(st.integers(-4, 4), st.integers(-4, 4),
              small_fraction, small_fraction),
    max_size=3).map(
    lambda items: ExactScalar([((e2, epi), QI(re, im))
                               for e2, epi, re, im in items]))


@settings(max_examples=60, deadline=None)
@given(scalars, scalars, scalars)
def test_ring_axioms(a, b, c):
    assert a + b == b + a
    assert a * b == b * a
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a + ES_ZERO == a
    assert a * ES_ONE == a


@settings(max_examples=40, deadline=None)
@given(scalars)
def test_conjugate_involution(a):
    assert a.conjugate().conjugate() == a


def test_inverse_single_term():
    a = ExactScalar.two_pow(3) * ExactScalar.pi_pow(-1) * QI(F(2, 5), F(1, 5))
    assert a * a.inverse() == ES_ONE
    with pytest.raises(ValueError):
        (ES_ONE + ExactScalar.pi_pow(2)).inverse()


# -- decimal rendering ------------------------------------------------------

def test_decimal_pi_half():
    half_pi = ExactScalar.pi_pow(2) * F(1, 2)
    assert half_pi.to_decimal(12).startswith("1.57079632679")


def test_decimal_zero():
    assert ES_ZERO.to_decimal(12) == "0"


def test_decimal_i_sqrt2():
    s = (ExactScalar.two_pow(1) * ExactScalar.i()).to_decimal(6)
    assert "1.41421" in s


@settings(max_examples=30, deadline=None)
@given(scalars, scalars)
def test_decimal_multiplicative(a, b):
    import mpmath
    pa, pb, pab = (x.to_mpc(25) for x in (a, b, a * b))
    with mpmath.workdps(25):
        assert mpmath.fabs(pa * pb - pab) <= \
            mpmath.mpf("1e-20") * (1 + mpmath.fabs(pab))


def test_render_roundtrip_format():
    a = ExactScalar.two_pow(-1) * ExactScalar.pi_pow(2)
    assert a.render() == "1*2^(-1/2)*pi^(1)"
