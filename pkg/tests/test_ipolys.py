import pytest
from hypothesis import given
from hypothesis import strategies as st

from idp.formats import xpoly_text
from idp.ipolys import (
    KappaSpec,
    XPoly,
    divided_family,
    eval_kappa,
    frak_g_poly,
    frak_p_poly,
    frakp_in_frakg_expansion,
    g_poly,
    p_in_g_expansion,
    p_poly,
    reconstruct,
)
from idp.qarith import ONE, LaurentPoly, RatFunc, q_pow, qfact, qint

X = XPoly.x()


def xp(*cs):
    return XPoly(list(cs))


def test_reference_p():
    a = q_pow(-4) + q_pow(-2)
    assert p_poly(0) == xp(1)
    assert p_poly(1) == X
    assert p_poly(2) == xp(0, 0, 1)
    assert p_poly(3) == xp(0, a, 0, 1)
    assert p_poly(4) == xp(0, 0, a * (a + 2), 0, 1)
    c3 = a * (q_pow(-8) + q_pow(-6) + 3 * q_pow(-4) + 2 * q_pow(-2) + 3)
    c1 = a * a * (q_pow(-8) + q_pow(-6) + 2 * q_pow(-4) + q_pow(-2) + 1)
    assert p_poly(5) == xp(0, c1, 0, c3, 0, 1)


def test_reference_frak_p():
    c = qint(3).shift(-4)
    assert frak_p_poly(1) == X
    assert frak_p_poly(2) == xp(-1, 0, 1)
    assert frak_p_poly(3) == xp(0, -1, 0, 1)
    assert frak_p_poly(4) == xp(-c, 0, c - 1, 0, 1)
    tail = qfact(3).shift(-5) + qint(5).shift(-6)
    assert frak_p_poly(5) == X * xp(-1, 0, 1) * xp(tail, 0, 1)


def test_negative_index_is_zero():
    assert p_poly(-1).is_zero()
    assert divided_family("frakp", -2).is_zero()
    with pytest.raises(ValueError):
        g_poly(-1)


def test_g_families():
    assert g_poly(3) == X * xp(-(qint(2) * qint(2)), 0, 1)
    assert g_poly(2) == xp(0, 0, 1)
    assert frak_g_poly(2) == xp(-1, 0, 1)
    assert frak_g_poly(3) == X * xp(-1, 0, 1)


@pytest.mark.parametrize("n", range(1, 13))
def test_expansions_reconstruct(n):
    assert reconstruct(p_in_g_expansion(n), n, "g") == divided_family("p", n)
    assert reconstruct(frakp_in_frakg_expansion(n), n, "frakg") == divided_family("frakp", n)


def test_frak_expansion_needs_base_case():
    # the general odd formula has an empty sum at n = 1
    assert frakp_in_frakg_expansion(1) == [(0, ONE)]
    with pytest.raises(ValueError):
        p_in_g_expansion(0)


@given(st.integers(0, 10), st.integers(-4, 4))
def test_integrality_at_q_integers(n, ell):
    for fam in ("p", "g"):
        assert eval_kappa(divided_family(fam, n), qint(2 * ell))[1]
    for fam in ("frakp", "frakg"):
        assert eval_kappa(divided_family(fam, n), KappaSpec.odd(ell))[1]


def test_non_integral_off_parity():
    # p^(3) at an odd q-integer is not integral in general
    value, ok = eval_kappa(divided_family("p", 3), qint(1))
    assert not ok
    assert value == RatFunc(1 + q_pow(-4) + q_pow(-2), qfact(3))


@given(st.integers(0, 12))
def test_parity_and_positivity(n):
    p = p_poly(n)
    assert p.only_parity(n)
    for c in p.coeffs:
        lp = c.as_laurent()
        assert all(e <= 0 and v >= 0 for e, v in lp.coeffs.items())


@given(st.integers(2, 12))
def test_frak_p_divisible_by_x_minus_1(n):
    quo, rem = frak_p_poly(n).divide_linear(1)
    assert not rem
    for c in quo.coeffs:
        assert all(e <= 0 and v >= 0 for e, v in c.as_laurent().coeffs.items())


@given(st.integers(0, 8), st.integers(1, 4))
def test_top_degree(n, ell):
    top = divided_family("p", n)(qint(2 * ell)).as_laurent().max_exp
    assert top == (2 * ell - 1) * n - n * (n - 1) // 2


def test_kappa_spec():
    assert KappaSpec.even(2).value == qint(4)
    assert KappaSpec.odd(0).value == qint(-1)
    assert str(KappaSpec.odd(2)) == "[3]"
    g = KappaSpec.generic(q_pow(2) + 1 + q_pow(-2))
    assert g.parity is None
    with pytest.raises(ValueError):
        KappaSpec.generic(q_pow(1))
    with pytest.raises(ValueError):
        KappaSpec("even", qint(3), 1)
    with pytest.raises(ValueError):
        KappaSpec("weird", LaurentPoly(), None)


def test_xpoly_basics():
    p = xp(1, 2, 3)
    assert p.degree == 2
    assert p(2) == RatFunc(17)
    assert xpoly_text(p) == "(3)*x^2 + (2)*x + 1"
    quo, rem = p.divide_linear(1)
    assert rem == RatFunc(6)
    assert quo * xp(-1, 1) + rem == p
    assert (p - p).is_zero()
