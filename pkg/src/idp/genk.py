"""Second i-divided powers for an arbitrary bar-invariant parameter kappa.

With kappa = sum c_i q^i (c_i = c_-i), put diamond = sum_i (-1)^i c_{2i}.
Then (kappa - diamond)/[2] lies in A, and

    dvp(2) = (t^2 - diamond^2)/[2],      dvd(2) = (t^2 - 1 + diamond^2)/[2].
"""

from __future__ import annotations

from .idivided import ParityRegime, divided_recursive, expand_in_t
from .ipolys import KappaSpec, XPoly
from .pbw import PBWElement, b_helper, hbinom, hbrace, monomial
from .qarith import ONE, LaurentPoly, RatFunc, as_ratfunc, q_pow, qint
from .repmod import (
    SimpleModule,
    act,
    icb_lattice_check,
    integrality_check,
)


def _value(kappa) -> LaurentPoly:
    if isinstance(kappa, KappaSpec):
        return kappa.value
    if isinstance(kappa, int):
        return LaurentPoly.const(kappa)
    return kappa


def diamond(kappa) -> int:
    k = _value(kappa)
    if k.bar() != k:
        raise ValueError(f"kappa = {k} is not bar-invariant")
    return sum((-c if (e // 2) % 2 else c) for e, c in k.coeffs.items() if e % 2 == 0)


def lemmaA_check(kappa) -> bool:
    k = _value(kappa)
    return RatFunc(k - diamond(k), qint(2)).is_laurent()


def second_dp_t(kappa, weight: str) -> XPoly:
    """The t-polynomial of the second divided power."""
    dm = diamond(kappa) ** 2
    const = -dm if weight == "even" else dm - 1
    return XPoly([RatFunc(const, qint(2)), 0, RatFunc(1, qint(2))])


def second_dp(kappa, weight: str) -> tuple[XPoly, PBWElement]:
    if weight not in ("even", "odd"):
        raise ValueError("weight must be 'even' or 'odd'")
    k = _value(kappa)
    poly = second_dp_t(k, weight)
    return poly, expand_in_t(poly, k)


def t22_formula(kappa, weight: str) -> PBWElement:
    """The explicit PBW form of the second divided power, written out term by term."""
    k = as_ratfunc(_value(kappa))
    dm = diamond(_value(kappa)) ** 2
    half = ONE / qint(2)
    out = b_helper(2)
    out = out + monomial(0, -1, 1, k.shift(-1)) + monomial(1, -1, 0, k.shift(-1))
    lead = as_ratfunc(q_pow(1)) + k * k * (q_pow(3) - q_pow(1))
    if weight == "even":
        cart = hbinom(0, 1)  # (K^-2 - 1)/(q^4 - 1)
        tail = (k * k - dm) * half
    else:
        cart = hbrace(0, 1)  # (K^-2 - q^2)/(q^4 - 1)
        tail = (k * k - dm) * half * q_pow(2) + q_pow(1) * dm
    return out + cart.scale(lead) + monomial(0, 0, 0, tail)


def second_dp_action(kappa, weight: str, lam: int):
    _, x = second_dp(kappa, weight)
    mu = 2 * lam if weight == "even" else 2 * lam + 1
    return act(x, SimpleModule(mu).highest_weight_vector())


def second_dp_threshold(kappa, weight: str, lam_max: int = 12):
    """Smallest lambda <= lam_max where (iCB2) holds for the second divided power, or None."""
    for lam in range(lam_max + 1):
        if icb_lattice_check(second_dp_action(kappa, weight, lam), 2)[0]:
            return lam
    return None


def second_dp_integral(kappa, weight: str, mu_max: int = 20) -> bool:
    _, x = second_dp(kappa, weight)
    return integrality_check(x, weight, mu_max)


def specialization_matches(n: int, weight: str) -> bool:
    """For kappa = [n], the second divided power equals the n=2 member of the matching family."""
    kp = "even" if n % 2 == 0 else "odd"
    regime = ParityRegime(weight, kp)
    _, x = second_dp(qint(n), weight)
    return x == divided_recursive(2, regime, qint(n))
