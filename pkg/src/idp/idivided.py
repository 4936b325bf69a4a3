"""The four families of i-divided powers.

Each family is available three ways:

* ``divided_recursive``  -- the two-step recursion in t,
* ``divided_closed_t``   -- the product formula as a polynomial in t,
  substituted with ``expand_in_t``,
* ``divided_expansion``  -- the triple sums over (b, a, c), in either
  the Ec-h-F order or the F-h-Ec order.

The EhF and FhE sums are coded separately (FhE is *not* obtained by
applying sigma) so comparing them is a real check.
"""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass
from functools import lru_cache

from .ipolys import KappaSpec, XPoly, family_at
from .pbw import (
    PBWElement,
    hbinom,
    hbrace,
    monomial,
    multiply,
)
from .qarith import ONE, LaurentPoly, as_ratfunc, qfact, qint


@dataclass(frozen=True)
class RegimeData:
    name: str
    family: str  # dvev / dv / dvp / dvd
    recursion: str  # "tt": odd step has the correction; "oddev": even step has it
    shape: str  # "even": leading t for even n; "odd": leading t for odd n
    cartan: str  # "hbinom" or "hbrace"
    poly: str  # "p" or "frakp"
    # m as a function of n: "ceil" or "floor" of n/2
    m_rule: str
    # extra EhF exponent per c, for (n even, n odd)
    ehf_extra: tuple[int, int]
    # EhF Cartan argument is ehf_arg - m
    ehf_arg: int
    # FhE exponent sigma*c, for (n even, n odd)
    fhe_sigma: tuple[int, int]
    # FhE Cartan argument is fhe_arg + m - c
    fhe_arg: int


REGIMES = {
    ("even", "even"): RegimeData("even-even", "dvev", "tt", "even", "hbinom", "p", "ceil", (0, 2), 1, (3, 1), 0),
    ("odd", "even"): RegimeData("odd-even", "dv", "oddev", "odd", "hbrace", "p", "floor", (0, -2), 1, (-1, 1), 1),
    ("even", "odd"): RegimeData("even-odd", "dvp", "oddev", "odd", "hbinom", "frakp", "floor", (2, 0), 1, (1, 3), 0),
    ("odd", "odd"): RegimeData("odd-odd", "dvd", "tt", "even", "hbrace", "frakp", "ceil", (-2, 0), 2, (1, -1), 0),
}


@dataclass(frozen=True)
class ParityRegime:
    weight: str
    kappa: str

    def __post_init__(self):
        for v in (self.weight, self.kappa):
            if v not in ("even", "odd"):
                raise ValueError(f"parity must be 'even' or 'odd', got {v!r}")

    @classmethod
    def parse(cls, text: str) -> "ParityRegime":
        """'even-odd' -> weight even, kappa odd. Family names are accepted too."""
        by_family = {d.family: k for k, d in REGIMES.items()}
        if text in by_family:
            return cls(*by_family[text])
        try:
            w, k = text.split("-")
        except ValueError:
            raise ValueError(f"bad regime {text!r}; use e.g. even-odd") from None
        return cls(w, k)

    @property
    def data(self) -> RegimeData:
        return REGIMES[(self.weight, self.kappa)]

    @property
    def name(self) -> str:
        return self.data.name

    def kappa_for(self, ell: int) -> KappaSpec:
        return KappaSpec.even(ell) if self.kappa == "even" else KappaSpec.odd(ell)

    def __str__(self):
        return self.name


ALL_REGIMES = [ParityRegime(w, k) for (w, k) in REGIMES]


def _kappa_value(kappa) -> LaurentPoly:
    if isinstance(kappa, KappaSpec):
        return kappa.value
    if isinstance(kappa, int):
        return LaurentPoly.const(kappa)
    return kappa


def _check_parity(regime: ParityRegime, kappa) -> None:
    if isinstance(kappa, KappaSpec) and kappa.parity not in (None, regime.kappa):
        raise ValueError(f"regime {regime} needs a {regime.kappa} kappa, got {kappa}")


def t_element(kappa) -> PBWElement:
    """t = F + Ec + kappa K^-1."""
    k = _kappa_value(kappa)
    terms = {(0, 0, 1): ONE, (1, 0, 0): ONE}
    if k:
        terms[(0, -1, 0)] = as_ratfunc(k)
    return PBWElement(terms)


# -- recursion ---------------------------------------------------------------


@lru_cache(maxsize=None)
def _recursive_list(recursion: str, kappa: LaurentPoly, n: int) -> tuple[PBWElement, ...]:
    t = t_element(kappa)
    xs = [PBWElement({(0, 0, 0): ONE}), t]
    for k in range(2, n + 1):
        prod = multiply(t, xs[k - 1])
        # correction term sits on the odd step for "tt", on the even step for "oddev"
        corrected = (k % 2 == 1) if recursion == "tt" else (k % 2 == 0)
        if corrected:
            prod = prod - xs[k - 2].scale(qint(k - 1))
        xs.append(prod / qint(k))
    return tuple(xs[: n + 1])


def divided_recursive(n: int, regime: ParityRegime, kappa) -> PBWElement:
    if n < 0:
        raise ValueError("n must be nonnegative")
    _check_parity(regime, kappa)
    return _recursive_list(regime.data.recursion, _kappa_value(kappa), max(n, 1))[n]


# -- closed form in t ----------------------------------------------------------


@lru_cache(maxsize=None)
def _closed(shape: str, n: int) -> XPoly:
    a, odd = divmod(n, 2)
    if shape == "even":
        # n = 2a: t prod_{|j|<a} (t - [2j]);  n = 2a+1: prod_{|j|<=a} (t - [2j])
        roots = [qint(2 * j) for j in range(-(a - 1), a)] if not odd else [qint(2 * j) for j in range(-a, a + 1)]
        lead_t = not odd and n > 0
    else:
        # prod_{j=-a+1}^{a} (t - [2j-1]), with an extra t when n is odd
        roots = [qint(2 * j - 1) for j in range(-a + 1, a + 1)]
        lead_t = bool(odd)
    out = XPoly.x() if lead_t else XPoly.const(ONE)
    for r in roots:
        out = out * XPoly([-as_ratfunc(r), ONE])
    return out / qfact(n)


def divided_closed_t(n: int, regime: ParityRegime) -> XPoly:
    """The closed product formula as a polynomial in t (a TPolynomial)."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    return _closed(regime.data.shape, n)


TPolynomial = XPoly


def expand_in_t(poly: XPoly, kappa) -> PBWElement:
    """Substitute t := t_element(kappa) (Horner) and normalize."""
    t = t_element(kappa)
    out = PBWElement()
    for c in reversed(poly.coeffs):
        out = multiply(out, t) + PBWElement({(0, 0, 0): c}) if c else multiply(out, t)
    return out


# -- triple sums ---------------------------------------------------------------


def _m_of(n: int, rule: str) -> int:
    return (n + 1) // 2 if rule == "ceil" else n // 2


def _cartan(kind: str, arg: int, c: int) -> PBWElement:
    return hbinom(arg, c) if kind == "hbinom" else hbrace(arg, c)


def _binom2(x: int) -> int:
    return x * (x - 1) // 2


@lru_cache(maxsize=None)
def _expansion(n: int, key: tuple[str, str], kappa: LaurentPoly, order: str) -> PBWElement:
    d_ = REGIMES[key]
    m = _m_of(n, d_.m_rule)
    parity = n % 2
    acc = defaultdict(list)
    for b in range(n + 1):
        for c in range((n - b) // 2 + 1):
            d = n - b - 2 * c
            pval = family_at(d_.poly, d, kappa)
            if order == "FhE":
                # sigma inverts q, and p^(d)(kappa) is not bar-invariant for d >= 3
                pval = pval.bar()
            if not pval:
                continue
            if order == "EhF":
                cart = _cartan(d_.cartan, d_.ehf_arg - m, c)
                base = _binom2(2 * c) + d_.ehf_extra[parity] * c - b * d
                for a in range(b + 1):
                    coeff = pval.shift(base - a * (b - a))
                    # Ec^(a) (Cartan) K^-d F^(b-a) is already normal
                    for (_, s, _), cc in cart.terms.items():
                        acc[(a, s - d, b - a)].append(coeff * cc)
            else:
                cart = _cartan(d_.cartan, d_.fhe_arg + m - c, c)
                middle = PBWElement({(0, s - d, 0): cc for (_, s, _), cc in cart.terms.items()})
                sign = -1 if c % 2 else 1
                base = d_.fhe_sigma[parity] * c + b * d
                for a in range(b + 1):
                    coeff = pval.shift(base + a * (b - a)) * sign
                    term = multiply(multiply(monomial(0, 0, b - a), middle), monomial(a, 0, 0))
                    for k, v in term.terms.items():
                        acc[k].append(coeff * v)
    return PBWElement._from_sums(acc)


def divided_expansion(n: int, regime: ParityRegime, kappa, order: str = "EhF") -> PBWElement:
    """Triple-sum PBW expansion of the regime's n-th divided power.

    ``order="FhE"`` uses the barred polynomial value bar(p^(d)(kappa)).
    ``order="FhE-unbarred"`` keeps p^(d)(kappa) itself; that variant only
    agrees with the others while every p^(d)(kappa) involved is
    bar-invariant (n <= 2 or kappa = 0), and is kept for comparison.
    """
    if n < 0:
        raise ValueError("n must be nonnegative")
    if order not in ("EhF", "FhE", "FhE-unbarred"):
        raise ValueError(f"order must be EhF or FhE, got {order!r}")
    if isinstance(kappa, KappaSpec):
        _check_parity(regime, kappa)
        if kappa.kind == "generic":
            raise ValueError("triple sums need a q-integer kappa of the regime's parity")
    if n == 0:
        return PBWElement({(0, 0, 0): ONE})
    return _expansion(n, (regime.weight, regime.kappa), _kappa_value(kappa), order)


def divided_power(n: int, regime: ParityRegime, kappa) -> PBWElement:
    """Default route: the EhF expansion."""
    return divided_expansion(n, regime, kappa, "EhF")
