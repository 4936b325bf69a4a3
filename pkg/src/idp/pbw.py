"""PBW normal forms for U_q(sl_2).

Every element is stored as a finite sum of monomials

    Ec^(a) K^s F^(b),    Ec = q^-1 E K^-1,

with ``Ec^(a)``, ``F^(b)`` divided powers and coefficients in Q(q). The PBW
theorem makes this form unique, so equality of elements is equality of the
term maps. Cartan factors such as h, (h;a n) and <h;a n> are never kept
symbolically; they are expanded into powers of K^-2.
"""

from __future__ import annotations

from collections import defaultdict
from functools import lru_cache
from typing import Iterable, Mapping

from .qarith import (
    ONE,
    ONE_L,
    ZERO,
    LaurentPoly,
    RatFunc,
    as_ratfunc,
    q_pow,
    qbinom,
    qfact,
    qint,
)

Key = tuple[int, int, int]  # (a, s, b)


class PBWElement:
    """Immutable element of U in Ec-left / K-middle / F-right normal form."""

    __slots__ = ("terms",)

    def __init__(self, terms: Mapping[Key, object] | None = None):
        clean = {}
        for key, coeff in (terms or {}).items():
            c = as_ratfunc(coeff)
            if c:
                a, s, b = key
                if a < 0 or b < 0:
                    raise ValueError(f"negative divided-power exponent in {key}")
                clean[(int(a), int(s), int(b))] = c
        self.terms = clean

    @classmethod
    def _from_sums(cls, acc: Mapping[Key, list]) -> "PBWElement":
        out = {}
        for key, parts in acc.items():
            c = RatFunc.sum(parts)
            if c:
                out[key] = c
        obj = object.__new__(cls)
        obj.terms = out
        return obj

    # -- basic structure ----------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def is_cartan(self) -> bool:
        return all(a == 0 and b == 0 for a, _, b in self.terms)

    def sorted_terms(self) -> list[tuple[Key, RatFunc]]:
        """Terms ordered by (a, b, s)."""
        return sorted(self.terms.items(), key=lambda kv: (kv[0][0], kv[0][2], kv[0][1]))

    def coeff(self, a: int, s: int, b: int) -> RatFunc:
        return self.terms.get((a, s, b), ZERO)

    def map_coeffs(self, fn) -> "PBWElement":
        return PBWElement({k: fn(c) for k, c in self.terms.items()})

    def __eq__(self, other):
        if isinstance(other, PBWElement):
            return self.terms == other.terms
        return NotImplemented

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __repr__(self):
        from .formats import pbw_text

        return f"PBWElement({pbw_text(self)!r})"

    # -- linear structure ---------------------------------------------------

    def __add__(self, other):
        if not isinstance(other, PBWElement):
            other = scalar(other)
        acc = defaultdict(list)
        for k, c in self.terms.items():
            acc[k].append(c)
        for k, c in other.terms.items():
            acc[k].append(c)
        return PBWElement._from_sums(acc)

    __radd__ = __add__

    def __neg__(self):
        obj = object.__new__(PBWElement)
        obj.terms = {k: -c for k, c in self.terms.items()}
        return obj

    def __sub__(self, other):
        if not isinstance(other, PBWElement):
            other = scalar(other)
        return self + (-other)

    def __rsub__(self, other):
        return scalar(other) - self

    def scale(self, c) -> "PBWElement":
        c = as_ratfunc(c)
        if not c:
            return PBWElement()
        obj = object.__new__(PBWElement)
        obj.terms = {k: v * c for k, v in self.terms.items()}
        return obj

    def __mul__(self, other):
        if isinstance(other, PBWElement):
            return multiply(self, other)
        return self.scale(other)

    def __rmul__(self, other):
        return self.scale(other)

    def __truediv__(self, other):
        return self.scale(ONE / as_ratfunc(other))

    def __pow__(self, n: int):
        out = one()
        for _ in range(n):
            out = out * self
        return out

    def common_denominator(self) -> LaurentPoly:
        """Least common multiple of the coefficient denominators."""
        from .qarith import _lcm

        common = ONE_L
        for c in self.terms.values():
            if not c.is_laurent():
                common = _lcm(common, c.den) if common != ONE_L else c.den
        return common


def scalar(c) -> PBWElement:
    return PBWElement({(0, 0, 0): c})


def one() -> PBWElement:
    return scalar(ONE)


def zero() -> PBWElement:
    return PBWElement()


def monomial(a: int = 0, s: int = 0, b: int = 0, coeff=1) -> PBWElement:
    return PBWElement({(a, s, b): coeff})


_GENERATORS = {"Ec": (1, 0, 0), "F": (0, 0, 1), "K": (0, 1, 0), "Kinv": (0, -1, 0)}


def generator(name: str, n: int | None = None) -> PBWElement:
    """Ec^(n), F^(n), K^n or K^-n as a single-term element (n defaults to 1)."""
    aliases = {"Ě": "Ec", "E_check": "Ec", "K⁻¹": "Kinv", "K^-1": "Kinv"}
    name = aliases.get(name, name)
    if name not in _GENERATORS:
        raise ValueError(f"unknown generator {name!r}")
    if n is None:
        n = 1
    if n < 0:
        raise ValueError(f"negative exponent {n} for generator {name}")
    a, s, b = _GENERATORS[name]
    return monomial(a * n, s * n, b * n)


def E_check(n: int = 1) -> PBWElement:
    return generator("Ec", n)


def F_div(n: int = 1) -> PBWElement:
    return generator("F", n)


def K_pow(s: int) -> PBWElement:
    return monomial(0, s, 0)


def E_plain() -> PBWElement:
    """The undivided generator E = q Ec K."""
    return monomial(1, 1, 0, q_pow(1))


def F_plain() -> PBWElement:
    return F_div(1)


# -- reordering ---------------------------------------------------------------


def _left_F(terms: Mapping[Key, RatFunc]) -> dict[Key, list]:
    """F * x for x in normal form, as unreduced per-key contributions.

    Uses  F Ec^(a) = q^{-2a} Ec^(a) F + Ec^(a-1) (q^{3-3a} K^-2 - q^{1-a})/(q^2 - 1)
    and   F K^s = q^{2s} K^s F.
    """
    acc = defaultdict(list)
    den = q_pow(2) - 1
    for (a, s, c), coeff in terms.items():
        acc[(a, s, c + 1)].append(coeff * (qint(c + 1).shift(2 * s - 2 * a)))
        if a >= 1:
            n, d = coeff.num, coeff.den * den
            acc[(a - 1, s - 2, c)].append((n.shift(3 - 3 * a), d))
            acc[(a - 1, s, c)].append((-n.shift(1 - a), d))
    return acc


def reorder_FE(n: int) -> PBWElement:
    """Normal form of F * Ec^(n)."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    return PBWElement._from_sums(_left_F({(n, 0, 0): ONE}))


@lru_cache(maxsize=None)
def _fe_table(b: int, a: int) -> tuple[tuple[Key, RatFunc], ...]:
    """Normal form of F^(b) Ec^(a), as a sorted tuple of terms."""
    if b == 0:
        return (((a, 0, 0), ONE),)
    prev = dict(_fe_table(b - 1, a))
    elem = PBWElement._from_sums(_left_F(prev))
    inv = RatFunc(1, qint(b))
    return tuple(sorted((k, c * inv) for k, c in elem.terms.items()))


def fe_product(b: int, a: int) -> PBWElement:
    """Normal form of F^(b) Ec^(a)."""
    return PBWElement(dict(_fe_table(b, a)))


@lru_cache(maxsize=None)
def _mono_mul(a1: int, s1: int, b1: int, a2: int, s2: int, b2: int):
    """Structure constants of Ec^(a1)K^s1F^(b1) * Ec^(a2)K^s2F^(b2)."""
    out = defaultdict(list)
    for (a, s, b), c in _fe_table(b1, a2):
        # Ec^(a1) K^s1 [Ec^(a) K^s F^(b)] K^s2 F^(b2)
        shift = 2 * s1 * a + 2 * s2 * b
        merge = qbinom(a1 + a, a1) * qbinom(b + b2, b2)
        out[(a1 + a, s1 + s + s2, b + b2)].append(c * merge.shift(shift))
    return tuple((k, RatFunc.sum(v)) for k, v in out.items())


def multiply(x: PBWElement, y: PBWElement) -> PBWElement:
    acc = defaultdict(list)
    for (a1, s1, b1), c1 in x.terms.items():
        for (a2, s2, b2), c2 in y.terms.items():
            c12 = c1 * c2
            for key, sc in _mono_mul(a1, s1, b1, a2, s2, b2):
                if sc.is_laurent():
                    acc[key].append((c12.num * sc.num, c12.den))
                else:
                    acc[key].append((c12.num * sc.num, c12.den * sc.den))
    return PBWElement._from_sums(acc)


def product(*factors: PBWElement) -> PBWElement:
    out = one()
    for f in factors:
        out = multiply(out, f)
    return out


# -- Cartan elements ----------------------------------------------------------


def _cartan_product(factors: Iterable[tuple[LaurentPoly, LaurentPoly]], den: LaurentPoly) -> PBWElement:
    """prod (u_i K^-2 + v_i) / den, expanded in powers of K^-2."""
    poly = [ONE_L]  # coefficients of y^j, y = K^-2
    for u, v in factors:
        nxt = [LaurentPoly()] * (len(poly) + 1)
        for j, c in enumerate(poly):
            nxt[j] = nxt[j] + c * v
            nxt[j + 1] = nxt[j + 1] + c * u
        poly = nxt
    return PBWElement({(0, -2 * j, 0): RatFunc(c, den) for j, c in enumerate(poly) if c})


def h_element() -> PBWElement:
    """h = (K^-2 - 1)/(q^2 - 1)."""
    return _cartan_product([(ONE_L, -ONE_L)], q_pow(2) - 1)


@lru_cache(maxsize=None)
def _hbinom(a: int, n: int) -> PBWElement:
    den = ONE_L
    for i in range(1, n + 1):
        den = den * (q_pow(4 * i) - 1)
    return _cartan_product(
        [(q_pow(4 * a + 4 * i - 4), -ONE_L) for i in range(1, n + 1)], den
    )


def hbinom(a: int, n: int) -> PBWElement:
    """(h;a n) = prod_{i=1}^n (q^{4a+4i-4} K^-2 - 1)/(q^{4i} - 1)."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    return _hbinom(a, n)


@lru_cache(maxsize=None)
def _hbrace(a: int, n: int) -> PBWElement:
    den = ONE_L
    for i in range(1, n + 1):
        den = den * (q_pow(4 * i) - 1)
    return _cartan_product(
        [(q_pow(4 * a + 4 * i - 4), -q_pow(2)) for i in range(1, n + 1)], den
    )


def hbrace(a: int, n: int) -> PBWElement:
    """<h;a n> = prod_{i=1}^n (q^{4a+4i-4} K^-2 - q^2)/(q^{4i} - 1)."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    return _hbrace(a, n)


def commute_cartan(e: PBWElement, side: str, n: int = 1) -> PBWElement:
    """Return e' with e * X^(n) = X^(n) * e', X = F or Ec, for Cartan-only e."""
    if not e.is_cartan():
        raise ValueError("commute_cartan needs a Cartan-only element")
    if side == "F":
        sign = -1
    elif side in ("Ec", "E"):
        sign = 1
    else:
        raise ValueError(f"side must be 'F' or 'Ec', got {side!r}")
    return PBWElement({(0, s, 0): c.shift(sign * 2 * s * n) for (_, s, _), c in e.terms.items()})


# -- anti-involution and helpers ----------------------------------------------


def apply_sigma(x: PBWElement) -> PBWElement:
    """The Q-algebra anti-involution fixing Ec, F, K and sending q to q^-1.

    Ec^(a) K^s F^(b)  ->  F^(b) K^s Ec^(a) = q^{2sa} F^(b) Ec^(a) K^s.
    """
    acc = defaultdict(list)
    for (a, s, b), c in x.terms.items():
        cb = c.bar().shift(2 * s * a)
        for (a2, s2, b2), sc in _fe_table(b, a):
            # F^(b) Ec^(a) = sum sc Ec^(a2) K^s2 F^(b2); append K^s on the right
            prod = cb * sc.shift(2 * s * b2)
            acc[(a2, s2 + s, b2)].append(prod)
    return PBWElement._from_sums(acc)


def b_helper(n: int) -> PBWElement:
    """b^(n) = sum_a q^{-a(n-a)} Ec^(a) F^(n-a)."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    return PBWElement({(a, 0, n - a): q_pow(-a * (n - a)) for a in range(n + 1)})


def divided_from_plain(x: PBWElement, n: int) -> PBWElement:
    return x / qfact(n)


# -- word rewriting (independent reduction route, used as an oracle) --------


def normalize_word(word: Iterable[tuple[str, int]], strategy: str = "leftmost") -> PBWElement:
    """Reduce a word in the letters ('E', 1), ('F', 1), ('K', s) to normal form.

    Letters are undivided Ec, F and K^s. Rewriting uses only
    F Ec -> q^-2 Ec F + h,  K Ec -> q^2 Ec K,  F K -> q^2 K F,
    applied at the leftmost or rightmost redex. Divided powers are
    recovered at the end by multiplying with [a]![b]!.
    """
    pending = [(tuple(word), ONE)]
    done = defaultdict(list)
    h_terms = [(-2, RatFunc(1, q_pow(2) - 1)), (0, RatFunc(-1, q_pow(2) - 1))]
    while pending:
        w, coeff = pending.pop()
        w = _merge_k(w)
        redexes = [
            i
            for i in range(len(w) - 1)
            if (w[i][0], w[i + 1][0]) in (("F", "E"), ("K", "E"), ("F", "K"))
        ]
        if not redexes:
            a = sum(1 for l, _ in w if l == "E")
            b = sum(1 for l, _ in w if l == "F")
            s = sum(e for l, e in w if l == "K")
            done[(a, s, b)].append(coeff * (qfact(a) * qfact(b)))
            continue
        i = redexes[0] if strategy == "leftmost" else redexes[-1]
        left, right = w[:i], w[i + 2 :]
        pair = (w[i][0], w[i + 1][0])
        if pair == ("K", "E"):
            s = w[i][1]
            pending.append((left + (("E", 1), ("K", s)) + right, coeff.shift(2 * s)))
        elif pair == ("F", "K"):
            s = w[i + 1][1]
            pending.append((left + (("K", s), ("F", 1)) + right, coeff.shift(2 * s)))
        else:
            pending.append((left + (("E", 1), ("F", 1)) + right, coeff.shift(-2)))
            for s, hc in h_terms:
                pending.append((left + (("K", s),) + right, coeff * hc))
    return PBWElement._from_sums(done)


def _merge_k(w):
    out = []
    for letter, e in w:
        if letter == "K":
            if out and out[-1][0] == "K":
                e += out.pop()[1]
            if e:
                out.append(("K", e))
        else:
            out.append((letter, e))
    return tuple(out)
