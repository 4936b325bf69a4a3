"""Write tests/golden/ from hand transcriptions of the reference examples.

Nothing here calls the expansion engine: every element below is typed in
from the reference formulas and normalized with plain PBW multiplication.
The divided powers are written for symbolic kappa and evaluated at a few
concrete q-integers; the polynomials are written out directly.

    python3 scripts/make_golden.py [--out tests/golden]
"""

from __future__ import annotations

import argparse
from pathlib import Path

from idp.formats import pbw_text, xpoly_text
from idp.ipolys import XPoly
from idp.pbw import E_check, F_div, K_pow, b_helper, hbinom, hbrace, product
from idp.qarith import as_ratfunc, q_pow, qfact, qint

ELLS = (-1, 0, 1, 2)


def q(k):
    return as_ratfunc(q_pow(k))


Ec, Ec2, F, F2 = E_check(1), E_check(2), F_div(1), F_div(2)
Ki = K_pow(-1)
K2, K3 = K_pow(-2), K_pow(-3)


def h(a):
    return hbinom(a, 1)


def hh(a):
    return hbrace(a, 1)


def kappa_linear(k):
    """The block q^-2 Ec^(2) K^-1 + q^-3 Ec K^-1 F + q^-2 K^-1 F^(2)."""
    return (product(Ec2, Ki).scale(q(-2)) + product(Ec, Ki, F).scale(q(-3)) + product(Ki, F2).scale(q(-2))).scale(k)


def first(k):
    return F + Ec + Ki.scale(k)


def lin2(k):
    return (product(Ki, F) + product(Ec, Ki)).scale(q(-1) * k)


def dvev(n, k):
    if n == 1:
        return first(k)
    if n == 2:
        return Ec2 + product(Ec, F).scale(q(-1)) + F2 + h(0).scale(q(1)) + lin2(k) + K2.scale(k * k / qint(2))
    return (
        b_helper(3)
        + product(h(-1), F).scale(q(3))
        + product(Ec, h(-1)).scale(q(3))
        + kappa_linear(k)
        + product(h(-1), Ki).scale(q(3) * k)
        + (product(Ec, K2) + product(K2, F)).scale(q(-2) / qint(2) * k * k)
        + K3.scale((k * k * k + (q_pow(-4) + q_pow(-2)) * k) / qfact(3))
    )


def dv(n, k):
    if n == 1:
        return first(k)
    if n == 2:
        return b_helper(2) + hh(0).scale(q(1)) + lin2(k) + K2.scale(k * k / qint(2))
    return (
        b_helper(3)
        + product(hh(0), F).scale(q(-1))
        + product(Ec, hh(0)).scale(q(-1))
        + kappa_linear(k)
        + product(hh(0), Ki).scale(q(-1) * k)
        + (product(Ec, K2) + product(K2, F)).scale(q(-2) / qint(2) * k * k)
        + K3.scale((k * k * k + (q_pow(-4) + q_pow(-2)) * k) / qfact(3))
    )


def dvp(n, k):
    if n == 1:
        # written without the kappa in the source; t = F + Ec + kappa K^-1 is meant
        return first(k)
    if n == 2:
        return b_helper(2) + h(0).scale(q(3)) + lin2(k) + K2.scale((k * k - 1) / qint(2))
    return (
        b_helper(3)
        + product(Ec, h(0)).scale(q(1))
        + product(h(0), F).scale(q(1))
        + kappa_linear(k)
        + product(h(0), Ki).scale(q(1) * k)
        + (product(Ec, K2) + product(K2, F)).scale(q(-2) * (k * k - 1) / qint(2))
        + K3.scale((k * k * k - k) / qfact(3))
    )


def dvd(n, k):
    if n == 1:
        return first(k)
    if n == 2:
        return Ec2 + product(Ec, F).scale(q(-1)) + F2 + hh(1).scale(q(-1)) + lin2(k) + K2.scale((k * k - 1) / qint(2))
    return (
        b_helper(3)
        + product(hh(0), F).scale(q(1))
        + product(Ec, hh(0)).scale(q(1))
        + kappa_linear(k)
        + product(hh(0), Ki).scale(q(1) * k)
        + (product(Ec, K2) + product(K2, F)).scale(q(-2) * (k * k - 1) / qint(2))
        + K3.scale((k * k * k - k) / qfact(3))
    )


FAMILIES = {"dvev": (dvev, "even"), "dv": (dv, "even"), "dvp": (dvp, "odd"), "dvd": (dvd, "odd")}


def kappa_of(parity, ell):
    return as_ratfunc(qint(2 * ell) if parity == "even" else qint(2 * ell - 1))


def x_poly(*coeffs):
    return XPoly([as_ratfunc(c) for c in coeffs])


def reference_p():
    a = q_pow(-4) + q_pow(-2)
    return [
        x_poly(1),
        x_poly(0, 1),
        x_poly(0, 0, 1),
        x_poly(0, a, 0, 1),
        x_poly(0, 0, a * (a + 2), 0, 1),
        x_poly(
            0,
            a * a * (q_pow(-8) + q_pow(-6) + 2 * q_pow(-4) + q_pow(-2) + 1),
            0,
            a * (q_pow(-8) + q_pow(-6) + 3 * q_pow(-4) + 2 * q_pow(-2) + 3),
            0,
            1,
        ),
    ]


def reference_frak_p():
    x = XPoly.x()
    c3 = qint(3).shift(-4)
    tail = qfact(3).shift(-5) + qint(5).shift(-6)
    return [
        None,
        x,
        x_poly(-1, 0, 1),
        x_poly(0, -1, 0, 1),
        x_poly(-c3, 0, c3 - 1, 0, 1),
        x * x_poly(-1, 0, 1) * x_poly(tail, 0, 1),
    ]


def golden_files():
    out = {}
    for name, (fn, parity) in FAMILIES.items():
        for n in (1, 2, 3):
            for ell in ELLS:
                out[f"{name}_n{n}_l{ell}.txt"] = pbw_text(fn(n, kappa_of(parity, ell))) + "\n"
    for n, p in enumerate(reference_p()):
        out[f"p_{n}.txt"] = xpoly_text(p) + "\n"
    for n, p in enumerate(reference_frak_p()):
        if p is not None:
            out[f"frakp_{n}.txt"] = xpoly_text(p) + "\n"
    return out


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    ap.add_argument("--out", default=str(Path(__file__).resolve().parent.parent / "tests" / "golden"))
    args = ap.parse_args(argv)
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    files = golden_files()
    for name, text in sorted(files.items()):
        (out / name).write_text(text)
    print(f"wrote {len(files)} files to {out}")


if __name__ == "__main__":
    main()
