from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from soergel_ext.scalars import Realm, minimal_poly, qnum

FINITE = [2, 3, 4, 5, 6]


@pytest.mark.parametrize("m", FINITE)
def test_minimal_poly_matches_two_cos(m):
    x = sympy.Symbol("x")
    want = sympy.Poly(sympy.minimal_polynomial(2 * sympy.cos(sympy.pi / m), x), x)
    got = sympy.Poly(sum(sympy.Rational(c.numerator, c.denominator) * x**i
                         for i, c in enumerate(minimal_poly(m))), x)
    assert got == want


@pytest.mark.parametrize("m", FINITE)
def test_qnum_vanishes_exactly_at_m(m):
    realm = Realm(m)
    assert qnum(m, realm).is_zero()
    assert all(not qnum(k, realm).is_zero() for k in range(1, m))


def test_qnum_rational_delta():
    realm = Realm(None, 3)
    # [k] at delta = 3 are the even-index Fibonacci numbers
    assert [qnum(k, realm) for k in range(6)] == [0, 1, 3, 8, 21, 55]


def test_unfaithful_delta_rejected():
    with pytest.raises(ValueError):
        Realm(None, 1)  # [3] = 0
    with pytest.raises(ValueError):
        Realm(3, 2)


def test_explicit_delta_as_fraction():
    realm = Realm(None, Fraction(5, 2))
    assert qnum(2, realm) == Fraction(5, 2)


def test_field_inverse_golden_ratio():
    realm = Realm(5)
    d = realm.delta
    assert d * d == d + 1
    assert d.inv() == d - 1


elems = st.tuples(st.integers(-20, 20), st.integers(-20, 20), st.integers(1, 9))


@settings(max_examples=60, deadline=None)
@given(st.sampled_from([4, 5, 6]), elems, elems, elems)
def test_field_axioms(m, x, y, z):
    realm = Realm(m)
    a, b, c = (realm.elem(Fraction(p, r), Fraction(q, r)) for p, q, r in (x, y, z))
    assert (a + b) * c == a * c + b * c
    assert (a * b) * c == a * (b * c)
    if not a.is_zero():
        assert a * a.inv() == realm.one


@settings(max_examples=40, deadline=None)
@given(st.sampled_from(FINITE), st.integers(-9, 9), st.integers(-9, 9), st.integers(-9, 9), st.integers(-9, 9))
def test_product_matches_sympy(m, a, b, c, d):
    realm = Realm(m)
    delta = 2 * sympy.cos(sympy.pi / m)
    got = realm.elem(a, b) * realm.elem(c, d)
    ga, gb = (sympy.Rational(int(v.p), int(v.q)) for v in got.coeffs())
    assert sympy.simplify((a + b * delta) * (c + d * delta) - (ga + gb * delta)) == 0
