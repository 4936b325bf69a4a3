"""Exact arithmetic over A = Z[q, q^-1] and its fraction field Q(q).

``LaurentPoly`` is stored densely as a lowest exponent plus a tuple of
integer coefficients; ``RatFunc`` is a reduced pair of Laurent polynomials.
The reduced form is canonical, so value equality is structural equality:

* numerator and denominator are coprime in Z[q],
* the denominator is a polynomial in q with nonzero constant term,
* the denominator has positive leading coefficient.
"""

from __future__ import annotations

import ast
import re
from functools import lru_cache
from typing import Iterable, Mapping

from sympy.polys.domains import ZZ
from sympy.polys.euclidtools import dup_inner_gcd


class IntegralityViolation(ArithmeticError):
    """A value expected to lie in Z[q, q^-1] kept a nontrivial denominator."""


class DivisionByZero(ZeroDivisionError):
    pass


# ---------------------------------------------------------------------------
# dense integer polynomial helpers (low degree first)

_KRONECKER_MIN = 12


def _conv(f, g):
    if not f or not g:
        return ()
    if len(f) < _KRONECKER_MIN or len(g) < _KRONECKER_MIN:
        out = [0] * (len(f) + len(g) - 1)
        for i, a in enumerate(f):
            if a:
                for j, b in enumerate(g):
                    out[i + j] += a * b
        return out
    # Kronecker substitution: evaluate at 2^k, multiply bigints, read digits back
    bound = min(len(f), len(g)) * max(map(abs, f)) * max(map(abs, g))
    k = bound.bit_length() + 2
    return _unpack(_pack(f, k) * _pack(g, k), k, len(f) + len(g) - 1)


def _pack(f, k):
    v = 0
    for c in reversed(f):
        v = (v << k) + c
    return v


def _unpack(v, k, n):
    mask = (1 << k) - 1
    half = 1 << (k - 1)
    out = []
    for _ in range(n):
        d = v & mask
        if d >= half:
            d -= 1 << k
        out.append(d)
        v = (v - d) >> k
    return out


def _trim(low, coeffs):
    """Strip zeros from both ends; returns (low, tuple)."""
    i, j = 0, len(coeffs)
    while i < j and not coeffs[i]:
        i += 1
    while j > i and not coeffs[j - 1]:
        j -= 1
    if i == j:
        return 0, ()
    return low + i, tuple(coeffs[i:j])


def _exact_quotient(f, g):
    """Quotient f/g in Z[q] (low-first, both with nonzero constant term), or None."""
    if len(g) == 1:
        d = g[0]
        if any(c % d for c in f):
            return None
        return [c // d for c in f]
    n, m = len(f), len(g)
    if n < m:
        return None
    rem = list(f)
    lead = g[-1]
    quot = [0] * (n - m + 1)
    for i in range(n - m, -1, -1):
        c = rem[i + m - 1]
        if c:
            if c % lead:
                return None
            c //= lead
            quot[i] = c
            for j in range(m):
                rem[i + j] -= c * g[j]
    if any(rem[: m - 1]):
        return None
    return quot


# ---------------------------------------------------------------------------


class LaurentPoly:
    """Integer Laurent polynomial in q. Immutable."""

    __slots__ = ("low", "c", "_hash")

    def __init__(self, terms: Mapping[int, int] | None = None):
        if not terms:
            self.low, self.c = 0, ()
        else:
            lo, hi = min(terms), max(terms)
            dense = [0] * (hi - lo + 1)
            for e, v in terms.items():
                dense[e - lo] += int(v)
            self.low, self.c = _trim(lo, dense)
        self._hash = None

    @classmethod
    def _make(cls, low, coeffs):
        obj = object.__new__(cls)
        obj.low, obj.c = _trim(low, coeffs)
        obj._hash = None
        return obj

    @classmethod
    def monomial(cls, exp: int, coeff: int = 1) -> "LaurentPoly":
        return cls._make(exp, (coeff,))

    @classmethod
    def const(cls, value: int) -> "LaurentPoly":
        return cls._make(0, (int(value),))

    @property
    def coeffs(self) -> dict[int, int]:
        return {self.low + i: v for i, v in enumerate(self.c) if v}

    def items(self):
        """(exponent, coefficient) pairs in descending exponent order."""
        return [(self.low + i, v) for i, v in reversed(list(enumerate(self.c))) if v]

    def is_zero(self) -> bool:
        return not self.c

    def __bool__(self):
        return bool(self.c)

    @property
    def min_exp(self) -> int:
        if not self.c:
            raise ValueError("zero polynomial has no exponents")
        return self.low

    @property
    def max_exp(self) -> int:
        if not self.c:
            raise ValueError("zero polynomial has no exponents")
        return self.low + len(self.c) - 1

    def is_monomial(self) -> bool:
        return len(self.c) == 1

    def is_constant(self) -> bool:
        return not self.c or (len(self.c) == 1 and self.low == 0)

    def coeff(self, exp: int) -> int:
        i = exp - self.low
        return self.c[i] if 0 <= i < len(self.c) else 0

    # arithmetic --------------------------------------------------------

    @staticmethod
    def _coerce(other):
        if isinstance(other, LaurentPoly):
            return other
        if isinstance(other, int):
            return LaurentPoly.const(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if not other.c:
            return self
        if not self.c:
            return other
        lo = min(self.low, other.low)
        hi = max(self.low + len(self.c), other.low + len(other.c))
        out = [0] * (hi - lo)
        off = self.low - lo
        for i, v in enumerate(self.c):
            out[off + i] = v
        off = other.low - lo
        for i, v in enumerate(other.c):
            out[off + i] += v
        return LaurentPoly._make(lo, out)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPoly._make(self.low, tuple(-v for v in self.c))

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        if isinstance(other, int):
            if other == 0:
                return ZERO_L
            return LaurentPoly._make(self.low, tuple(v * other for v in self.c))
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        if not self.c or not other.c:
            return ZERO_L
        if len(other.c) == 1:
            k = other.c[0]
            return LaurentPoly._make(self.low + other.low, tuple(v * k for v in self.c))
        if len(self.c) == 1:
            k = self.c[0]
            return LaurentPoly._make(self.low + other.low, tuple(v * k for v in other.c))
        return LaurentPoly._make(self.low + other.low, _conv(self.c, other.c))

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            if len(self.c) == 1 and self.c[0] in (1, -1):
                return LaurentPoly._make(self.low * n, (1 if self.c[0] == 1 or n % 2 == 0 else -1,))
            raise ValueError("negative power of a non-unit Laurent polynomial")
        result, base = ONE_L, self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def shift(self, k: int) -> "LaurentPoly":
        """Multiply by q^k."""
        if not self.c:
            return self
        return LaurentPoly._make(self.low + k, self.c)

    def bar(self) -> "LaurentPoly":
        if not self.c:
            return self
        return LaurentPoly._make(-(self.low + len(self.c) - 1), tuple(reversed(self.c)))

    def subs_power(self, k: int) -> "LaurentPoly":
        """Substitute q -> q^k (k >= 1)."""
        if not self.c or k == 1:
            return self
        out = [0] * ((len(self.c) - 1) * k + 1)
        for i, v in enumerate(self.c):
            out[i * k] = v
        return LaurentPoly._make(self.low * k, out)

    def exact_div(self, other: "LaurentPoly") -> "LaurentPoly | None":
        """self/other if it lies in Z[q, q^-1], else None."""
        if not other.c:
            raise DivisionByZero("division by zero Laurent polynomial")
        if not self.c:
            return ZERO_L
        quot = _exact_quotient(self.c, other.c)
        if quot is None:
            return None
        return LaurentPoly._make(self.low - other.low, quot)

    def __eq__(self, other):
        if isinstance(other, int):
            return self.c == ((other,) if other else ()) and (not other or self.low == 0)
        if isinstance(other, LaurentPoly):
            return self.low == other.low and self.c == other.c
        if isinstance(other, RatFunc):
            return other == self
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.low, self.c)) if self.c else 0
        return self._hash

    # formatting -----------------------------------------------------------

    def __str__(self):
        if not self.c:
            return "0"
        parts = []
        for e, v in self.items():
            sign = "-" if v < 0 else "+"
            a = abs(v)
            if e == 0:
                body = str(a)
            else:
                mono = "q" if e == 1 else f"q^{e}"
                body = mono if a == 1 else f"{a}*{mono}"
            parts.append((sign, body))
        first_sign, first = parts[0]
        out = ("-" if first_sign == "-" else "") + first
        for sign, body in parts[1:]:
            out += f" {sign} {body}"
        return out

    def __repr__(self):
        return f"LaurentPoly({str(self)!r})"

    def latex(self) -> str:
        if not self.c:
            return "0"
        out = ""
        for k, (e, v) in enumerate(self.items()):
            a = abs(v)
            if e == 0:
                body = str(a)
            else:
                mono = "q" if e == 1 else f"q^{{{e}}}"
                body = mono if a == 1 else f"{a}{mono}"
            if k == 0:
                out = ("-" if v < 0 else "") + body
            else:
                out += (" - " if v < 0 else " + ") + body
        return out

    def to_json(self):
        return [[e, str(v)] for e, v in self.items()]

    @classmethod
    def from_json(cls, data) -> "LaurentPoly":
        return cls({int(e): int(v) for e, v in data})


ZERO_L = LaurentPoly()
ONE_L = LaurentPoly.const(1)
Q = LaurentPoly.monomial(1)


def q_pow(k: int) -> LaurentPoly:
    return LaurentPoly.monomial(k)


# ---------------------------------------------------------------------------


@lru_cache(maxsize=200_000)
def _gcd_cofactors(f, g):
    h, cff, cfg = dup_inner_gcd(list(reversed(f)), list(reversed(g)), ZZ)
    return (
        tuple(int(v) for v in reversed(h)),
        tuple(int(v) for v in reversed(cff)),
        tuple(int(v) for v in reversed(cfg)),
    )


def _normalize(num: LaurentPoly, den: LaurentPoly):
    if not den.c:
        raise DivisionByZero("rational function with zero denominator")
    if not num.c:
        return ZERO_L, ONE_L
    if len(den.c) == 1:
        d = den.c[0]
        if d in (1, -1):
            return LaurentPoly._make(num.low - den.low, tuple(v * d for v in num.c)), ONE_L
    shift = num.low - den.low
    _, f, g = _gcd_cofactors(num.c, den.c)
    if g[-1] < 0:
        f = tuple(-v for v in f)
        g = tuple(-v for v in g)
    return LaurentPoly._make(shift, f), LaurentPoly._make(0, g)


class RatFunc:
    """Element of Q(q) in canonical reduced form. Immutable."""

    __slots__ = ("num", "den", "_hash")

    def __init__(self, num=0, den=1):
        if isinstance(num, RatFunc) or isinstance(den, RatFunc):
            n, d = as_ratfunc(num), as_ratfunc(den)
            num, den = n.num * d.den, n.den * d.num
        num = _as_laurent(num)
        den = _as_laurent(den)
        self.num, self.den = _normalize(num, den)
        self._hash = None

    @classmethod
    def _raw(cls, num, den):
        obj = object.__new__(cls)
        obj.num, obj.den = num, den
        obj._hash = None
        return obj

    @classmethod
    def from_laurent(cls, p: LaurentPoly) -> "RatFunc":
        return cls._raw(p, ONE_L)

    def is_zero(self) -> bool:
        return not self.num.c

    def __bool__(self):
        return bool(self.num.c)

    def is_laurent(self) -> bool:
        return self.den is ONE_L or (self.den.low == 0 and self.den.c == (1,))

    def as_laurent(self) -> LaurentPoly:
        if not self.is_laurent():
            raise IntegralityViolation(f"{self} is not in Z[q, q^-1]")
        return self.num

    # arithmetic ------------------------------------------------------------

    def __add__(self, other):
        other = _as_rat(other)
        if other is NotImplemented:
            return NotImplemented
        if not other.num.c:
            return self
        if not self.num.c:
            return other
        if self.den == other.den:
            if self.is_laurent():
                return RatFunc._raw(self.num + other.num, ONE_L)
            return RatFunc(self.num + other.num, self.den)
        return RatFunc(self.num * other.den + other.num * self.den, self.den * other.den)

    __radd__ = __add__

    def __neg__(self):
        return RatFunc._raw(-self.num, self.den)

    def __sub__(self, other):
        other = _as_rat(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = _as_rat(other)
        if other is NotImplemented:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        if isinstance(other, (int, LaurentPoly)):
            other = _as_laurent(other)
            if not other.c or not self.num.c:
                return ZERO
            if self.is_laurent():
                return RatFunc._raw(self.num * other, ONE_L)
            if other.is_monomial() and other.c[0] in (1, -1):
                return RatFunc._raw(self.num * other, self.den)
            return RatFunc(self.num * other, self.den)
        if not isinstance(other, RatFunc):
            return NotImplemented
        if not self.num.c or not other.num.c:
            return ZERO
        if self.is_laurent() and other.is_laurent():
            return RatFunc._raw(self.num * other.num, ONE_L)
        return RatFunc(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = _as_rat(other)
        if other is NotImplemented:
            return NotImplemented
        if not other.num.c:
            raise DivisionByZero("division by zero in Q(q)")
        return RatFunc(self.num * other.den, self.den * other.num)

    def __rtruediv__(self, other):
        other = _as_rat(other)
        if other is NotImplemented:
            return NotImplemented
        return other / self

    def __pow__(self, n: int):
        if n < 0:
            return ONE / (self ** (-n))
        return RatFunc._raw(*_normalize(self.num ** n, self.den ** n)) if n else ONE

    def bar(self) -> "RatFunc":
        return RatFunc(self.num.bar(), self.den.bar())

    def shift(self, k: int) -> "RatFunc":
        """Multiply by q^k."""
        return RatFunc._raw(self.num.shift(k), self.den)

    @staticmethod
    def sum(values: Iterable) -> "RatFunc":
        """Sum of many terms with a single final reduction.

        Accepts RatFunc, LaurentPoly, int, or unreduced ``(num, den)`` pairs.
        """
        groups: dict[LaurentPoly, LaurentPoly] = {}
        for v in values:
            if isinstance(v, tuple):
                num, den = v
            elif isinstance(v, RatFunc):
                num, den = v.num, v.den
            else:
                num, den = _as_laurent(v), ONE_L
            if not num.c:
                continue
            if den.c[-1] < 0:
                num, den = -num, -den
            if den.low:
                num, den = num.shift(-den.low), den.shift(-den.low)
            prev = groups.get(den)
            groups[den] = num if prev is None else prev + num
        groups = {d: n for d, n in groups.items() if n.c}
        if not groups:
            return ZERO
        if len(groups) == 1:
            (den, num), = groups.items()
            if den.c == (1,):
                return RatFunc._raw(num, ONE_L)
            return RatFunc(num, den)
        dens = list(groups)
        common = dens[0]
        for d in dens[1:]:
            common = _lcm(common, d)
        total = ZERO_L
        for d, n in groups.items():
            total = total + n * _cofactor(common, d)
        return RatFunc(total, common)

    # comparison / hashing -------------------------------------------------

    def __eq__(self, other):
        if isinstance(other, RatFunc):
            return self.num == other.num and self.den == other.den
        if isinstance(other, (int, LaurentPoly)):
            return self.is_laurent() and self.num == other
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.num, self.den))
        return self._hash

    # formatting -----------------------------------------------------------

    def __str__(self):
        if self.is_laurent():
            return str(self.num)
        return f"({self.num})/({self.den})"

    def __repr__(self):
        return f"RatFunc({str(self)!r})"

    def latex(self) -> str:
        if self.is_laurent():
            return self.num.latex()
        return f"\\frac{{{self.num.latex()}}}{{{self.den.latex()}}}"

    def to_json(self):
        return {"num": self.num.to_json(), "den": self.den.to_json()}

    @classmethod
    def from_json(cls, data) -> "RatFunc":
        return cls(LaurentPoly.from_json(data["num"]), LaurentPoly.from_json(data["den"]))


def _as_laurent(x) -> LaurentPoly:
    if isinstance(x, LaurentPoly):
        return x
    if isinstance(x, int):
        return LaurentPoly.const(x)
    raise TypeError(f"cannot interpret {x!r} as a Laurent polynomial")


def _as_rat(x):
    if isinstance(x, RatFunc):
        return x
    if isinstance(x, LaurentPoly):
        return RatFunc._raw(x, ONE_L)
    if isinstance(x, int):
        return RatFunc._raw(LaurentPoly.const(x), ONE_L)
    return NotImplemented


@lru_cache(maxsize=50_000)
def _lcm(a: LaurentPoly, b: LaurentPoly) -> LaurentPoly:
    if a == b:
        return a
    h, _, g = _gcd_cofactors(a.c, b.c)
    out = LaurentPoly._make(0, a.c) * LaurentPoly._make(0, g)
    if out.c[-1] < 0:
        out = -out
    return out


@lru_cache(maxsize=50_000)
def _cofactor(common: LaurentPoly, d: LaurentPoly) -> LaurentPoly:
    quot = common.exact_div(d)
    assert quot is not None
    return quot


ZERO = RatFunc._raw(ZERO_L, ONE_L)
ONE = RatFunc._raw(ONE_L, ONE_L)


def as_ratfunc(x) -> RatFunc:
    r = _as_rat(x)
    if r is NotImplemented:
        raise TypeError(f"cannot interpret {x!r} as an element of Q(q)")
    return r


def bar(x):
    """The ring involution q -> q^-1 on Laurent polynomials and rational functions."""
    if isinstance(x, int):
        return x
    return x.bar()


def divides(p: LaurentPoly, d: LaurentPoly) -> bool:
    """Whether p/d lies in Z[q, q^-1]."""
    return p.exact_div(d) is not None


# ---------------------------------------------------------------------------
# q-integers and friends


@lru_cache(maxsize=None)
def qint(n: int) -> LaurentPoly:
    """[n] = (q^n - q^-n)/(q - q^-1)."""
    if n < 0:
        return -qint(-n)
    if n == 0:
        return ZERO_L
    dense = [0] * (2 * n - 1)
    for k in range(0, 2 * n - 1, 2):
        dense[k] = 1
    return LaurentPoly._make(1 - n, dense)


@lru_cache(maxsize=None)
def qfact(n: int) -> LaurentPoly:
    if n < 0:
        raise ValueError(f"q-factorial of negative integer {n}")
    out = ONE_L
    for k in range(2, n + 1):
        out = out * qint(k)
    return out


@lru_cache(maxsize=None)
def qbinom(m: int, n: int) -> RatFunc:
    """Gaussian binomial prod_{i=1}^n [m-i+1]/[i]."""
    if n < 0:
        raise ValueError(f"q-binomial with negative lower index {n}")
    top = ONE_L
    for i in range(1, n + 1):
        top = top * qint(m - i + 1)
    return RatFunc(top, qfact(n))


@lru_cache(maxsize=None)
def qbinom2(m: int, n: int) -> RatFunc:
    """Gaussian binomial in base q^2."""
    val = qbinom(m, n)
    return RatFunc(val.num.subs_power(2), val.den.subs_power(2))


@lru_cache(maxsize=None)
def cbinom(m: int, c: int) -> LaurentPoly:
    """prod_{i=1}^c (q^{4(m+i-1)} - 1)/(q^{-4i} - 1); lies in Z[q, q^-1]."""
    if c < 0:
        raise ValueError(f"cbinom with negative c={c}")
    num, den = ONE_L, ONE_L
    for i in range(1, c + 1):
        num = num * (q_pow(4 * (m + i - 1)) - 1)
        den = den * (q_pow(-4 * i) - 1)
    val = RatFunc(num, den)
    if not val.is_laurent():
        raise IntegralityViolation(f"cbinom({m}, {c}) reduced to {val}")
    return val.num


# ---------------------------------------------------------------------------
# parsing

_QINT_RE = re.compile(r"\[\s*(-?\d+)\s*\]")


def parse_laurent(text: str) -> LaurentPoly:
    """Parse expressions like ``2*q^2 + 3 - q^-1`` or ``[3] + q^4``.

    ``[n]`` denotes the q-integer. Only +, -, *, integer powers and
    parentheses are accepted.
    """
    src = _QINT_RE.sub(lambda m: f"__qint__({m.group(1)})", text).replace("^", "**")
    try:
        tree = ast.parse(src, mode="eval")
    except SyntaxError as exc:
        raise ValueError(f"cannot parse Laurent expression {text!r}") from exc

    def ev(node):
        if isinstance(node, ast.Expression):
            return ev(node.body)
        if isinstance(node, ast.Constant) and isinstance(node.value, int):
            return LaurentPoly.const(node.value)
        if isinstance(node, ast.Name) and node.id == "q":
            return Q
        if isinstance(node, ast.UnaryOp) and isinstance(node.op, (ast.USub, ast.UAdd)):
            v = ev(node.operand)
            return -v if isinstance(node.op, ast.USub) else v
        if isinstance(node, ast.BinOp):
            if isinstance(node.op, ast.Pow):
                exp = _int_literal(node.right)
                return ev(node.left) ** exp
            left, right = ev(node.left), ev(node.right)
            if isinstance(node.op, ast.Add):
                return left + right
            if isinstance(node.op, ast.Sub):
                return left - right
            if isinstance(node.op, ast.Mult):
                return left * right
        if (
            isinstance(node, ast.Call)
            and isinstance(node.func, ast.Name)
            and node.func.id == "__qint__"
            and len(node.args) == 1
        ):
            return qint(_int_literal(node.args[0]))
        raise ValueError(f"unsupported syntax in Laurent expression {text!r}")

    return ev(tree)


def _int_literal(node) -> int:
    if isinstance(node, ast.Constant) and isinstance(node.value, int):
        return node.value
    if isinstance(node, ast.UnaryOp) and isinstance(node.op, ast.USub):
        return -_int_literal(node.operand)
    raise ValueError("exponent must be an integer literal")
