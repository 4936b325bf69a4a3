"""The auxiliary polynomial families p_n, frak p_n, g_n, frak g_n.

Polynomials in a commuting variable x with coefficients in Q(q). The
recursions are

    p_{n+1}  = x p_n  + q^{1-2n} [n][n-1] p_{n-1},
    fp_{n+1} = x fp_n + q^{2-2n} [n][n-2] fp_{n-1},

both starting at 1, and g_n / frak g_n are the monic products over
x^2 - [2i]^2 and x^2 - [2i-1]^2. Divided versions divide by [n]!.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .qarith import (
    ONE,
    ZERO,
    LaurentPoly,
    RatFunc,
    as_ratfunc,
    q_pow,
    qbinom2,
    qfact,
    qint,
)


class XPoly:
    """Dense polynomial in x over Q(q). Immutable."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs=()):
        cs = [as_ratfunc(c) for c in coeffs]
        while cs and not cs[-1]:
            cs.pop()
        self.coeffs = tuple(cs)

    @classmethod
    def x(cls) -> "XPoly":
        return cls([ZERO, ONE])

    @classmethod
    def const(cls, c) -> "XPoly":
        return cls([c])

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def coeff(self, k: int) -> RatFunc:
        return self.coeffs[k] if 0 <= k < len(self.coeffs) else ZERO

    def __add__(self, other):
        other = _as_xpoly(other)
        n = max(len(self.coeffs), len(other.coeffs))
        return XPoly([self.coeff(k) + other.coeff(k) for k in range(n)])

    __radd__ = __add__

    def __neg__(self):
        return XPoly([-c for c in self.coeffs])

    def __sub__(self, other):
        return self + (-_as_xpoly(other))

    def __rsub__(self, other):
        return _as_xpoly(other) - self

    def __mul__(self, other):
        if not isinstance(other, XPoly):
            c = as_ratfunc(other)
            return XPoly([v * c for v in self.coeffs])
        if self.is_zero() or other.is_zero():
            return XPoly()
        parts = [[] for _ in range(len(self.coeffs) + len(other.coeffs) - 1)]
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    if b:
                        parts[i + j].append(a * b)
        return XPoly([RatFunc.sum(p) for p in parts])

    __rmul__ = __mul__

    def __truediv__(self, other):
        inv = ONE / as_ratfunc(other)
        return self * inv

    def mul_x(self) -> "XPoly":
        if self.is_zero():
            return self
        return XPoly((ZERO,) + self.coeffs)

    def __call__(self, value):
        """Evaluate at x = value (Horner)."""
        value = as_ratfunc(value)
        out = ZERO
        for c in reversed(self.coeffs):
            out = out * value + c
        return out

    def bar(self) -> "XPoly":
        return XPoly([c.bar() for c in self.coeffs])

    def only_parity(self, parity: int) -> bool:
        """True if every nonzero coefficient sits at an x-exponent of the given parity."""
        return all(not c for k, c in enumerate(self.coeffs) if k % 2 != parity % 2)

    def divide_linear(self, root) -> tuple["XPoly", RatFunc]:
        """Synthetic division by (x - root): returns (quotient, remainder)."""
        root = as_ratfunc(root)
        if self.is_zero():
            return XPoly(), ZERO
        out = []
        carry = ZERO
        for c in reversed(self.coeffs):
            carry = carry * root + c
            out.append(carry)
        rem = out.pop()
        return XPoly(list(reversed(out))), rem

    def __eq__(self, other):
        if isinstance(other, XPoly):
            return self.coeffs == other.coeffs
        return NotImplemented

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self):
        from .formats import xpoly_text

        return f"XPoly({xpoly_text(self)!r})"


def _as_xpoly(x) -> XPoly:
    if isinstance(x, XPoly):
        return x
    return XPoly.const(x)


# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class KappaSpec:
    """A bar-invariant parameter: [2l] (even), [2l-1] (odd) or generic."""

    kind: str
    value: LaurentPoly
    ell: int | None = None

    def __post_init__(self):
        if self.kind not in ("even", "odd", "generic"):
            raise ValueError(f"unknown kappa kind {self.kind!r}")
        if self.kind == "even" and self.value != qint(2 * self.ell):
            raise ValueError("even kappa must equal [2l]")
        if self.kind == "odd" and self.value != qint(2 * self.ell - 1):
            raise ValueError("odd kappa must equal [2l-1]")
        if self.value.bar() != self.value:
            raise ValueError(f"kappa = {self.value} is not bar-invariant")

    @classmethod
    def even(cls, ell: int) -> "KappaSpec":
        return cls("even", qint(2 * ell), ell)

    @classmethod
    def odd(cls, ell: int) -> "KappaSpec":
        return cls("odd", qint(2 * ell - 1), ell)

    @classmethod
    def generic(cls, value: LaurentPoly) -> "KappaSpec":
        return cls("generic", value)

    @property
    def parity(self) -> str | None:
        return None if self.kind == "generic" else self.kind

    def __str__(self):
        if self.kind == "even":
            return f"[{2 * self.ell}]"
        if self.kind == "odd":
            return f"[{2 * self.ell - 1}]"
        return str(self.value)


# ---------------------------------------------------------------------------
# the families


@lru_cache(maxsize=None)
def p_poly(n: int) -> XPoly:
    if n < 0:
        return XPoly()
    if n == 0:
        return XPoly.const(ONE)
    k = n - 1
    step = q_pow(1 - 2 * k) * qint(k) * qint(k - 1)
    return p_poly(k).mul_x() + p_poly(k - 1) * step


@lru_cache(maxsize=None)
def frak_p_poly(n: int) -> XPoly:
    if n < 0:
        return XPoly()
    if n == 0:
        return XPoly.const(ONE)
    k = n - 1
    step = q_pow(2 - 2 * k) * qint(k) * qint(k - 2)
    return frak_p_poly(k).mul_x() + frak_p_poly(k - 1) * step


def _square_minus(v: LaurentPoly) -> XPoly:
    return XPoly([-(v * v), ZERO, ONE])


@lru_cache(maxsize=None)
def g_poly(n: int) -> XPoly:
    if n < 0:
        raise ValueError("g_n needs n >= 0")
    m, odd = divmod(n, 2)
    out = XPoly.x() if odd else XPoly.const(ONE)
    for i in range(1 if odd else 0, m + 1 if odd else m):
        out = out * _square_minus(qint(2 * i))
    return out


@lru_cache(maxsize=None)
def frak_g_poly(n: int) -> XPoly:
    if n < 0:
        raise ValueError("frak g_n needs n >= 0")
    m, odd = divmod(n, 2)
    out = XPoly.x() if odd else XPoly.const(ONE)
    for i in range(1, m + 1):
        out = out * _square_minus(qint(2 * i - 1))
    return out


FAMILIES = {"p": p_poly, "frakp": frak_p_poly, "g": g_poly, "frakg": frak_g_poly}


def divided(p: XPoly, n: int) -> XPoly:
    """p / [n]!."""
    return p / qfact(n)


@lru_cache(maxsize=None)
def divided_family(family: str, n: int) -> XPoly:
    """p^(n), frak p^(n), ... ; zero for negative n."""
    if n < 0:
        return XPoly()
    return divided(FAMILIES[family](n), n)


def p_in_g_expansion(n: int) -> list[tuple[int, RatFunc]]:
    """Coefficients (a, c_a) with p^(n) = sum_a c_a g^(n-2a)."""
    if n < 1:
        raise ValueError("expansion defined for n >= 1")
    if n % 2 == 0:
        m = n // 2
        slope = 1 - 2 * m
    else:
        m = (n + 1) // 2
        slope = 3 - 2 * m
    return [(a, qbinom2(m - 1, a).shift(slope * a)) for a in range(m)]


def frakp_in_frakg_expansion(n: int) -> list[tuple[int, RatFunc]]:
    """Coefficients (a, c_a) with frak p^(n) = sum_a c_a frak g^(n-2a)."""
    if n < 1:
        raise ValueError("expansion defined for n >= 1")
    if n == 1:
        return [(0, ONE)]
    if n % 2 == 0:
        m = n // 2
        slope = 3 - 2 * m
    else:
        m = (n - 1) // 2
        slope = 1 - 2 * m
    return [(a, qbinom2(m - 1, a).shift(slope * a)) for a in range(m)]


def reconstruct(expansion, n: int, family: str) -> XPoly:
    out = XPoly()
    for a, c in expansion:
        out = out + divided_family(family, n - 2 * a) * c
    return out


def eval_kappa(p: XPoly, kappa) -> tuple[RatFunc, bool]:
    """Evaluate at x = kappa; the flag says whether the value lies in A."""
    value = kappa.value if isinstance(kappa, KappaSpec) else kappa
    out = p(value)
    return out, out.is_laurent()


@lru_cache(maxsize=None)
def family_at(family: str, n: int, kappa: LaurentPoly) -> RatFunc:
    """Cached value of the divided polynomial family at a concrete kappa."""
    return divided_family(family, n)(kappa)
