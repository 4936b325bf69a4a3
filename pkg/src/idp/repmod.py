"""Simple modules L(mu), the action of PBW elements, and lattice checks.

L(mu) has basis F^(b) v+ for 0 <= b <= mu, with

    K F^(b) v+ = q^{mu-2b} F^(b) v+,
    F F^(b) v+ = [b+1] F^(b+1) v+,
    E F^(b) v+ = [mu-b+1] F^(b-1) v+,

and Ec^(a) = q^{-a^2} E^(a) K^{-a}.
"""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass
from functools import lru_cache

from .idivided import ParityRegime, divided_expansion
from .ipolys import family_at
from .pbw import PBWElement
from .qarith import (
    ONE,
    ZERO,
    ZERO_L,
    LaurentPoly,
    RatFunc,
    as_ratfunc,
    cbinom,
    q_pow,
    qbinom,
    qint,
)


class NotFound(LookupError):
    """No lambda up to the cap satisfied the lattice condition."""


@dataclass(frozen=True)
class SimpleModule:
    mu: int

    def __post_init__(self):
        if self.mu < 0:
            raise ValueError("highest weight must be nonnegative")

    @property
    def dim(self) -> int:
        return self.mu + 1

    def basis(self, b: int) -> "ModuleVector":
        if not 0 <= b <= self.mu:
            raise IndexError(f"F^({b}) v+ is not a basis vector of L({self.mu})")
        entries = [ZERO] * self.dim
        entries[b] = ONE
        return ModuleVector(self, tuple(entries))

    def highest_weight_vector(self) -> "ModuleVector":
        return self.basis(0)

    # generator matrices, as dicts (row, col) -> LaurentPoly
    def matrix_E(self):
        return {(b - 1, b): qint(self.mu - b + 1) for b in range(1, self.dim)}

    def matrix_F(self):
        return {(b + 1, b): qint(b + 1) for b in range(self.dim - 1)}

    def matrix_K(self, s: int = 1):
        return {(b, b): q_pow(s * (self.mu - 2 * b)) for b in range(self.dim)}


@dataclass(frozen=True)
class ModuleVector:
    module: SimpleModule
    entries: tuple

    def __post_init__(self):
        if len(self.entries) != self.module.dim:
            raise ValueError("vector length does not match the module dimension")

    def __add__(self, other):
        _same_module(self, other)
        return ModuleVector(self.module, tuple(a + b for a, b in zip(self.entries, other.entries)))

    def __sub__(self, other):
        _same_module(self, other)
        return ModuleVector(self.module, tuple(a - b for a, b in zip(self.entries, other.entries)))

    def scale(self, c):
        c = as_ratfunc(c)
        return ModuleVector(self.module, tuple(e * c for e in self.entries))

    def is_zero(self) -> bool:
        return not any(self.entries)


def _same_module(u, v):
    if u.module != v.module:
        raise ValueError(f"vectors live in L({u.module.mu}) and L({v.module.mu})")


# -- matrix helpers (used for the relation checks) ---------------------------


def mat_mul(x: dict, y: dict) -> dict:
    out = defaultdict(lambda: ZERO_L)
    by_row = defaultdict(list)
    for (k, j), v in y.items():
        by_row[k].append((j, v))
    for (i, k), u in x.items():
        for j, v in by_row[k]:
            out[(i, j)] = out[(i, j)] + u * v
    return {k: v for k, v in out.items() if v}


def mat_add(x: dict, y: dict, scale=1) -> dict:
    out = dict(x)
    for k, v in y.items():
        out[k] = out.get(k, ZERO_L) + v * scale
    return {k: v for k, v in out.items() if v}


# -- generic action ------------------------------------------------------------


@lru_cache(maxsize=None)
def _qbinom_l(m: int, n: int) -> LaurentPoly:
    if m < n:
        return ZERO_L
    return qbinom(m, n).as_laurent()


def _mono_on_basis(mu: int, a: int, s: int, b: int, j: int):
    """Ec^(a) K^s F^(b) applied to F^(j) v+: returns (row, Laurent coefficient) or None."""
    k = j + b
    if k > mu or a > k:
        return None
    w = mu - 2 * k  # weight after F^(b)
    coeff = _qbinom_l(k, b) * _qbinom_l(mu - k + a, a)
    return k - a, coeff.shift(s * w - a * a - a * w)


def act(x: PBWElement, v: ModuleVector) -> ModuleVector:
    mu = v.module.mu
    acc = defaultdict(list)
    for j, vj in enumerate(v.entries):
        if not vj:
            continue
        for (a, s, b), c in x.terms.items():
            hit = _mono_on_basis(mu, a, s, b, j)
            if hit is not None and hit[1]:
                acc[hit[0]].append(c * vj * hit[1])
    entries = tuple(RatFunc.sum(acc[i]) if i in acc else ZERO for i in range(mu + 1))
    return ModuleVector(v.module, entries)


def action_matrix(x: PBWElement, module: SimpleModule) -> dict:
    """(row, col) -> RatFunc."""
    out = {}
    for j in range(module.dim):
        col = act(x, module.basis(j))
        for i, e in enumerate(col.entries):
            if e:
                out[(i, j)] = e
    return out


def integrality_witness(x: PBWElement, parity: str, mu_max: int):
    """First (mu, j, row, value) where x F^(j) v+ leaves the A-lattice, else None.

    Everything is put over the common denominator D of the coefficients of
    x, so the work is Laurent arithmetic plus one exact division per entry.
    """
    start = 0 if parity == "even" else 1
    D = x.common_denominator()
    # numerators over D, grouped by (a, b) with the K-exponents kept apart
    grouped = defaultdict(list)
    for (a, s, b), c in x.terms.items():
        num = c.num * D.exact_div(c.den)
        grouped[(a, b)].append((s, num))
    for mu in range(start, mu_max + 1, 2):
        for j in range(mu + 1):
            rows = defaultdict(lambda: ZERO_L)
            for (a, b), parts in grouped.items():
                k = j + b
                if k > mu or a > k:
                    continue
                w = mu - 2 * k
                kval = ZERO_L
                for s, num in parts:
                    kval = kval + num.shift(s * w)
                if not kval:
                    continue
                coeff = _qbinom_l(k, b) * _qbinom_l(mu - k + a, a)
                rows[k - a] = rows[k - a] + (kval * coeff).shift(-a * a - a * w)
            for i, val in rows.items():
                if val and val.exact_div(D) is None:
                    return mu, j, i, RatFunc(val, D)
    return None


def integrality_check(x: PBWElement, parity: str, mu_max: int) -> bool:
    """True iff x preserves the A-lattice of every L(mu), mu <= mu_max, of the parity."""
    if mu_max < 0:
        raise ValueError("mu_max must be nonnegative")
    if parity not in ("even", "odd"):
        raise ValueError("parity must be 'even' or 'odd'")
    return integrality_witness(x, parity, mu_max) is None


# -- closed action on the highest weight vector --------------------------------


def _weight(regime: ParityRegime, lam: int) -> int:
    return 2 * lam if regime.weight == "even" else 2 * lam + 1


def divided_action_closed(n: int, regime: ParityRegime, ell: int, lam: int) -> ModuleVector:
    """dv(n) v+ on L(2 lam) or L(2 lam + 1) from the double-sum formula.

    entry b = sum_c q^{sigma c + (b - mu) d - e(c)} bar(P^(d)(kappa)) cbin(c),
    d = n - b - 2c, with e(c) = 2c(c+1) and cbin = <A - lam, c> for even
    weight, e(c) = 2c^2 and cbin = <A - lam - 1, c> for odd weight, where
    A is the FhE Cartan argument.
    """
    if n < 0 or lam < 0:
        raise ValueError("n and lambda must be nonnegative")
    data = regime.data
    kappa = regime.kappa_for(ell).value
    mu = _weight(regime, lam)
    m = (n + 1) // 2 if data.m_rule == "ceil" else n // 2
    sigma = data.fhe_sigma[n % 2]
    entries = [ZERO] * (mu + 1)
    for b in range(min(n, mu) + 1):
        parts = []
        for c in range((n - b) // 2 + 1):
            d = n - b - 2 * c
            pval = family_at(data.poly, d, kappa).bar() if n else ONE
            if not pval:
                continue
            arg = data.fhe_arg + m - c
            if regime.weight == "even":
                cb, e = cbinom(arg - lam, c), 2 * c * (c + 1)
            else:
                cb, e = cbinom(arg - lam - 1, c), 2 * c * c
            if not cb:
                continue
            parts.append(pval * cb.shift(sigma * c + (b - mu) * d - e))
        entries[b] = RatFunc.sum(parts)
    return ModuleVector(SimpleModule(mu), tuple(entries))


def divided_action_generic(n: int, regime: ParityRegime, ell: int, lam: int) -> ModuleVector:
    """The oracle: act with the EhF expansion on v+."""
    module = SimpleModule(_weight(regime, lam))
    x = divided_expansion(n, regime, regime.kappa_for(ell))
    return act(x, module.highest_weight_vector())


# -- (iCB2) ------------------------------------------------------------------


def icb_lattice_check(v: ModuleVector, n: int):
    """(passed, witness): entry n is 1, entries above vanish, entries below lie in q^-1 Z[q^-1]."""
    for b, e in enumerate(v.entries):
        if b == n:
            if e != ONE:
                return False, {"b": b, "coeff": str(e), "reason": "leading entry is not 1"}
        elif b > n:
            if e:
                return False, {"b": b, "coeff": str(e), "reason": "nonzero entry above n"}
        elif e:
            if not e.is_laurent():
                return False, {"b": b, "coeff": str(e), "reason": "not in A"}
            if e.num.max_exp >= 0:
                return False, {"b": b, "coeff": str(e), "reason": "not in q^-1 Z[q^-1]"}
    if n >= len(v.entries):
        return False, {"b": n, "coeff": "0", "reason": "leading entry is not 1"}
    return True, None


def lattice_cap(n: int, ell: int) -> int:
    return n + 2 * abs(ell) + 12


def find_lattice_threshold(n: int, regime: ParityRegime, ell: int, lam_max: int | None = None) -> int:
    """Smallest lambda <= lam_max with dv(n) v+ satisfying (iCB2); raises NotFound."""
    if lam_max is None:
        lam_max = lattice_cap(n, ell)
    for lam in range(lam_max + 1):
        ok, _ = icb_lattice_check(divided_action_closed(n, regime, ell, lam), n)
        if ok:
            return lam
    raise NotFound(f"{regime} n={n} l={ell}: no lambda <= {lam_max} passes")


def negative_witness(ell: int, m: int, lam: int):
    """Even weight, even kappa, ell >= 1, ell-1 >= lam-m >= 0.

    Returns (coefficient of F^(2m-1) v+ in dvev(2m) v+_{2 lam}, the
    predicted q^{2m-2lam-1} kappa, lattice verdict).
    """
    if not (ell >= 1 and 0 <= lam - m <= ell - 1 and m >= 1):
        raise ValueError("needs ell >= 1 and 0 <= lam - m <= ell - 1")
    regime = ParityRegime("even", "even")
    v = divided_action_closed(2 * m, regime, ell, lam)
    predicted = as_ratfunc(qint(2 * ell).shift(2 * m - 2 * lam - 1))
    ok, witness = icb_lattice_check(v, 2 * m)
    return v.entries[2 * m - 1], predicted, ok, witness


__all__ = [
    "NotFound",
    "SimpleModule",
    "ModuleVector",
    "act",
    "action_matrix",
    "integrality_check",
    "integrality_witness",
    "divided_action_closed",
    "divided_action_generic",
    "icb_lattice_check",
    "find_lattice_threshold",
    "lattice_cap",
    "negative_witness",
]
