from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from seifert_links.ring import (INTEGER_CONTENT, MONIC, Cyclo, LaurentPoly, cyclotomic_polynomial,
                                exact_divide, format_poly, gcd_univariate, normalize)


def P(*coeffs_high_to_low):
    return LaurentPoly.from_coeffs(list(reversed(coeffs_high_to_low)))


small = st.lists(st.integers(-5, 5), min_size=1, max_size=5).map(lambda c: LaurentPoly.from_coeffs(c))
conductors = st.sampled_from([1, 3, 4, 5, 6, 8, 12])


def test_cyclotomic_polynomials():
    assert cyclotomic_polynomial(1) == (-1, 1)
    assert cyclotomic_polynomial(4) == (1, 0, 1)
    assert cyclotomic_polynomial(6) == (1, -1, 1)


@given(conductors, st.integers(0, 30))
def test_roots_of_unity(m, e):
    z = Cyclo.root(m, e)
    assert z ** m == 1
    assert z * z.inverse() == 1
    assert z.is_root_of_unity()


def test_zeta6_is_minus_zeta3_squared():
    assert Cyclo.root(6, 1) == -Cyclo.root(3, 2)
    assert Cyclo.root(2, 1) == -1
    assert Cyclo.root(3, 1) + Cyclo.root(3, 2) == -1


@given(conductors, st.integers(0, 20), st.integers(0, 20), st.integers(-4, 4))
def test_field_distributes(m, e1, e2, q):
    a, b = Cyclo.root(m, e1) + q, Cyclo.root(m, e2) - Fraction(1, 3)
    c = Cyclo.root(m, e1 + e2)
    assert a * (b + c) == a * b + a * c
    if not b.is_zero():
        assert (a / b) * b == a


@given(small, small, small)
def test_polynomial_ring_axioms(p, q, r):
    assert p * (q + r) == p * q + p * r
    assert p * q == q * p
    assert (p - p).is_zero()


@given(small, small)
def test_exact_division_inverts_product(p, q):
    if q.is_zero():
        return
    assert exact_divide(p * q, q) == p


def test_exact_division_rejects_non_divisor():
    with pytest.raises(ArithmeticError):
        exact_divide(P(1, 0, 1), P(1, 1))


@given(small, small, small)
def test_gcd_divides_and_contains_common_factor(p, q, g):
    if p.is_zero() or q.is_zero() or g.is_zero():
        return
    d = gcd_univariate(p * g, q * g)
    exact_divide(p * g, d)
    exact_divide(q * g, d)
    exact_divide(d, normalize(g))


def test_gcd_examples():
    assert gcd_univariate(P(1, 0, -1), P(1, -2, 1)) == P(1, -1)
    assert gcd_univariate(P(2, 2), P(4, 4), INTEGER_CONTENT) == P(2, 2)
    assert gcd_univariate(P(2, 2), P(4, 4), MONIC) == P(1, 1)


def test_normalize_strips_units():
    z = LaurentPoly.variable()
    p = P(1, -3, 1)
    assert normalize(z ** -3 * p * -5) == p
    assert normalize(p * -4, INTEGER_CONTENT) == p * 4
    twisted = p * Cyclo.root(3, 1)
    assert normalize(twisted) == p


def test_format():
    assert format_poly(P(1, -2, 0, 2, -1)) == "z^4 - 2*z^3 + 2*z - 1"
    assert format_poly(LaurentPoly.zero()) == "0"
    assert format_poly(P(3)) == "3"


def test_laurent_inverse_only_for_monomials():
    z = LaurentPoly.variable()
    assert (z * 2) ** -1 * (z * 2) == LaurentPoly.one()
    with pytest.raises(ValueError):
        P(1, 1) ** -1
