"""Canonical text, JSON and LaTeX renderings.

The text form is what golden files store, so it must stay stable:
one PBW term per line, ``[coeff] Ec^(a) K^s F^(b)``, terms sorted by
(a, b, s); Laurent polynomials by descending exponent.
"""

from __future__ import annotations

import json

from .qarith import LaurentPoly, RatFunc


def monomial_text(a: int, s: int, b: int) -> str:
    parts = []
    if a:
        parts.append(f"Ec^({a})")
    if s:
        parts.append(f"K^{s}")
    if b:
        parts.append(f"F^({b})")
    return " ".join(parts) if parts else "1"


def monomial_latex(a: int, s: int, b: int) -> str:
    parts = []
    if a:
        parts.append(r"\check{E}" if a == 1 else rf"\check{{E}}^{{({a})}}")
    if s:
        parts.append(f"K^{{{s}}}")
    if b:
        parts.append("F" if b == 1 else f"F^{{({b})}}")
    return " ".join(parts) if parts else "1"


def pbw_text(x) -> str:
    if x.is_zero():
        return "0"
    return "\n".join(f"[{c}] {monomial_text(*k)}" for k, c in x.sorted_terms())


def pbw_latex(x) -> str:
    if x.is_zero():
        return "0"
    out = []
    for (a, s, b), c in x.sorted_terms():
        mono = monomial_latex(a, s, b)
        if c == 1:
            out.append(mono)
        else:
            out.append(rf"\left({c.latex()}\right) {mono}")
    return " + ".join(out)


def pbw_json(x) -> list:
    return [
        {"a": a, "s": s, "b": b, "coeff": c.to_json()}
        for (a, s, b), c in x.sorted_terms()
    ]


def pbw_from_json(data):
    from .pbw import PBWElement

    return PBWElement({(t["a"], t["s"], t["b"]): RatFunc.from_json(t["coeff"]) for t in data})


def xpoly_text(p, var: str = "x") -> str:
    if p.is_zero():
        return "0"
    out = []
    for k in range(p.degree, -1, -1):
        c = p.coeffs[k]
        if not c:
            continue
        mono = "1" if k == 0 else (var if k == 1 else f"{var}^{k}")
        if c == 1:
            out.append(mono)
        elif k == 0:
            out.append(f"({c})")
        else:
            out.append(f"({c})*{mono}")
    return " + ".join(out)


def xpoly_latex(p, var: str = "x") -> str:
    if p.is_zero():
        return "0"
    out = []
    for k in range(p.degree, -1, -1):
        c = p.coeffs[k]
        if not c:
            continue
        mono = "" if k == 0 else (var if k == 1 else f"{var}^{{{k}}}")
        if c == 1 and k:
            out.append(mono)
        else:
            out.append(rf"\left({c.latex()}\right){mono}")
    return " + ".join(out)


def xpoly_json(p) -> list:
    return [c.to_json() for c in p.coeffs]


def vector_text(v) -> str:
    return "\n".join(f"F^({b}) v+ : {c}" for b, c in enumerate(v.entries) if c) or "0"


def vector_json(v) -> list:
    return [{"b": b, "coeff": c.to_json()} for b, c in enumerate(v.entries) if c]


def scalar_text(x) -> str:
    return str(x)


def scalar_json(x):
    if isinstance(x, LaurentPoly):
        return x.to_json()
    if isinstance(x, RatFunc):
        return x.to_json()
    return x


def dumps(data) -> str:
    """Deterministic JSON."""
    return json.dumps(data, indent=2, sort_keys=True, ensure_ascii=True)
