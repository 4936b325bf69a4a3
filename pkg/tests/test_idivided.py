import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from idp.idivided import (
    ALL_REGIMES,
    ParityRegime,
    divided_closed_t,
    divided_expansion,
    divided_recursive,
    expand_in_t,
    t_element,
)
from idp.ipolys import KappaSpec, XPoly
from idp.pbw import (
    E_check,
    F_div,
    K_pow,
    PBWElement,
    apply_sigma,
    b_helper,
    hbinom,
    hbrace,
    monomial,
    multiply,
    product,
)
from idp.qarith import ONE, as_ratfunc, q_pow, qfact, qint

EE, OE, EO, OO = (ParityRegime.parse(s) for s in ("even-even", "odd-even", "even-odd", "odd-odd"))
Ec, F, Ki = E_check(1), F_div(1), K_pow(-1)


def q(k):
    return as_ratfunc(q_pow(k))


def tpoly(*cs):
    return XPoly([as_ratfunc(c) for c in cs])


def test_t_element():
    assert t_element(0) == Ec + F
    assert t_element(qint(2)) == Ec + F + Ki.scale(qint(2))


def test_regime_parse():
    assert ParityRegime.parse("dvd") == OO
    assert ParityRegime.parse("odd-even").data.family == "dv"
    assert EO.kappa_for(1) == KappaSpec.odd(1)
    with pytest.raises(ValueError):
        ParityRegime.parse("even")
    with pytest.raises(ValueError):
        ParityRegime("even", "both")


def test_parity_mismatch_is_rejected():
    with pytest.raises(ValueError):
        divided_recursive(2, EE, KappaSpec.odd(1))
    with pytest.raises(ValueError):
        divided_expansion(2, OO, KappaSpec.even(1))
    with pytest.raises(ValueError):
        divided_expansion(2, EE, KappaSpec.generic(qint(2) + 1 + 1))
    with pytest.raises(ValueError):
        divided_expansion(-1, EE, KappaSpec.even(0))
    with pytest.raises(ValueError):
        divided_expansion(2, EE, KappaSpec.even(0), order="FE")


@pytest.mark.parametrize("r", ALL_REGIMES, ids=str)
def test_low_members(r):
    k = r.kappa_for(1)
    assert divided_recursive(0, r, k) == PBWElement({(0, 0, 0): ONE})
    assert divided_recursive(1, r, k) == t_element(k)
    assert divided_closed_t(0, r) == tpoly(1)


def test_second_members_in_t():
    half = ONE / qint(2)
    assert divided_closed_t(2, EE) == XPoly([0, 0, half])
    assert divided_closed_t(2, OE) == XPoly([-half, 0, half])
    t = t_element(qint(2))
    assert divided_recursive(2, EE, qint(2)) == multiply(t, t) / qint(2)


def test_closed_third_member():
    # t (t - [2]) (t + [2]) / [3]!
    want = XPoly([0, -as_ratfunc(qint(2) * qint(2)), 0, ONE]) / qfact(3)
    assert divided_closed_t(3, EE) == want


def test_reference_second_members():
    k = as_ratfunc(qint(4))
    lin = (product(Ki, F) + product(Ec, Ki)).scale(q(-1) * k)
    tail = K_pow(-2).scale(k * k / qint(2))
    want = E_check(2) + product(Ec, F).scale(q(-1)) + F_div(2) + hbinom(0, 1).scale(q(1)) + lin + tail
    assert divided_expansion(2, EE, KappaSpec.even(2)) == want
    want_dv = b_helper(2) + hbrace(0, 1).scale(q(1)) + lin + tail
    assert divided_expansion(2, OE, KappaSpec.even(2)) == want_dv


def test_odd_odd_second_member():
    k = as_ratfunc(qint(3))
    x = divided_expansion(2, OO, KappaSpec.odd(2))
    assert x.coeff(0, -2, 0) == (k * k - 1) / qint(2) + hbrace(1, 1).scale(q(-1)).coeff(0, -2, 0)
    rest = x - hbrace(1, 1).scale(q(-1)) - K_pow(-2).scale((k * k - 1) / qint(2))
    assert rest.coeff(0, -2, 0) == 0 * ONE


def test_even_odd_third_member_tail():
    k = as_ratfunc(qint(3))
    x = divided_expansion(3, EO, KappaSpec.odd(2))
    # the q [h;0] kappa K^-1 term also reaches K^-3
    cart = hbinom(0, 1).coeff(0, -2, 0) * q(1) * k
    assert x.coeff(0, -3, 0) == (k * k * k - k) / qfact(3) + cart


@pytest.mark.parametrize("r", ALL_REGIMES, ids=str)
@pytest.mark.parametrize("ell", [-1, 0, 2])
def test_three_way_agreement(r, ell):
    k = r.kappa_for(ell)
    for n in range(5):
        rec = divided_recursive(n, r, k)
        assert expand_in_t(divided_closed_t(n, r), k) == rec
        assert divided_expansion(n, r, k, "EhF") == rec
        assert divided_expansion(n, r, k, "FhE") == rec


def test_unbarred_fhe_differs_once_polynomials_lose_bar_invariance():
    # p^(3)([2]) is not bar-invariant, so the literal F-h-E form breaks at n = 3
    k = KappaSpec.even(1)
    assert divided_expansion(2, EE, k, "FhE-unbarred") == divided_recursive(2, EE, k)
    assert divided_expansion(3, EE, k, "FhE-unbarred") != divided_recursive(3, EE, k)
    # at kappa = 0 only p^(0) survives, and the two agree
    z = KappaSpec.even(0)
    assert divided_expansion(4, EE, z, "FhE-unbarred") == divided_recursive(4, EE, z)


@pytest.mark.parametrize("r", ALL_REGIMES, ids=str)
def test_sigma_fixes_divided_powers(r):
    k = r.kappa_for(1)
    for n in range(5):
        x = divided_expansion(n, r, k)
        assert apply_sigma(x) == x
        assert apply_sigma(x) == divided_expansion(n, r, k, "FhE")


@pytest.mark.parametrize("r", ALL_REGIMES, ids=str)
def test_t_coefficients_bar_invariant(r):
    for n in range(8):
        for c in divided_closed_t(n, r).coeffs:
            assert as_ratfunc(c).bar() == as_ratfunc(c)


@settings(max_examples=20)
@given(st.sampled_from(ALL_REGIMES), st.integers(0, 3), st.integers(-2, 2))
def test_recursion_identity(r, a, ell):
    # t * x(n) = [n+1] x(n+1) + [n] x(n-1) on the corrected step, and [n+1] x(n+1) otherwise
    k = r.kappa_for(ell)
    t = t_element(k)
    for n in (2 * a, 2 * a + 1):
        if n == 0:
            continue
        lhs = multiply(t, divided_recursive(n, r, k))
        rhs = divided_recursive(n + 1, r, k).scale(qint(n + 1))
        corrected = (n + 1) % 2 == 1 if r.data.recursion == "tt" else (n + 1) % 2 == 0
        if corrected:
            rhs = rhs + divided_recursive(n - 1, r, k).scale(qint(n))
        assert lhs == rhs


def test_kappa_zero_collapses_to_double_sum():
    x = divided_expansion(4, EE, KappaSpec.even(0))
    # no odd K-power survives: every term has polynomial index 0
    assert all(s % 2 == 0 for (_, s, _) in x.terms)
    y = divided_expansion(3, EO, KappaSpec.odd(1))
    assert y == divided_recursive(3, EO, KappaSpec.odd(1))


def test_monomial_sanity():
    assert monomial(0, 0, 0) == PBWElement({(0, 0, 0): ONE})
