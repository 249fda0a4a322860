import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from soergel_ext.polyring import PolyRing
from soergel_ext.scalars import Realm

REALMS = [None, 2, 3, 4, 5]


def ring(m=None):
    return PolyRing(Realm(m), 2)


@pytest.mark.parametrize("m", REALMS)
def test_rho_is_dual_to_coroots(m):
    R = ring(m)
    for c in "st":
        for d in "st":
            assert R.coroot_pairing(d, R.rho(c)) == (1 if c == d else 0)


@pytest.mark.parametrize("m", REALMS)
def test_reflection_on_roots(m):
    R = ring(m)
    for c in "st":
        o = "t" if c == "s" else "s"
        assert R.reflect(c, R.alpha(c)) == -R.alpha(c)
        assert R.reflect(c, R.alpha(o)) == R.alpha(o) - R.alpha(c) * R.a_st


@pytest.mark.parametrize("m", REALMS)
def test_gamma_is_invariant_of_degree_four(m):
    R = ring(m)
    for c in "st":
        g = R.gamma(c)
        assert g.degree() == 4
        assert R.reflect(c, g) == g


def test_demazure_of_alpha_is_two():
    R = ring()
    assert R.demazure("s", R.alpha("s")) == R.const(2)
    assert R.demazure("s", R.alpha("t")) == R.const(R.a_st)


def _rand_poly(R, draw_coeffs):
    return sum((R.monomial(e, c) for e, c in draw_coeffs), R.zero())


coeffs = st.lists(st.tuples(st.tuples(st.integers(0, 3), st.integers(0, 3)), st.integers(-5, 5)), max_size=5)


@settings(max_examples=60, deadline=None)
@given(coeffs, coeffs)
def test_product_matches_sympy(a, b):
    R = ring()
    x, y = sympy.symbols("x y")
    f, g = _rand_poly(R, a), _rand_poly(R, b)

    def to_sym(p):
        return sum(sympy.Rational(int(c.a.p), int(c.a.q)) * x**e[0] * y**e[1] for e, c in p.terms.items())

    assert sympy.expand(to_sym(f) * to_sym(g) - to_sym(f * g)) == 0


@settings(max_examples=60, deadline=None)
@given(st.sampled_from(REALMS), coeffs, coeffs)
def test_demazure_twisted_leibniz(m, a, b):
    R = ring(m)
    f, g = _rand_poly(R, a), _rand_poly(R, b)
    for c in "st":
        lhs = R.demazure(c, f * g)
        rhs = R.demazure(c, f) * g + R.reflect(c, f) * R.demazure(c, g)
        assert lhs == rhs
        assert R.reflect(c, R.reflect(c, f)) == f
