"""Command line front end: ``idp <command> ...``.

Commands
  compute        a divided power (or a Laurent expression) as a PBW element
  polys          the polynomial families p, frakp, g, frakg
  module-action  a divided power acting on the highest weight vector
  genk           the second divided power for an arbitrary bar-invariant kappa
  verify         run verification suites
  table          recompute the reference examples and diff against golden files

The exit status is 0 exactly when every verdict passes.
"""

from __future__ import annotations

import argparse
import difflib
import sys
from pathlib import Path

from . import formats
from .config import load_config
from .genk import diamond, second_dp, second_dp_action
from .idivided import (
    ParityRegime,
    divided_closed_t,
    divided_expansion,
    divided_recursive,
    expand_in_t,
)
from .ipolys import FAMILIES, divided_family
from .qarith import parse_laurent
from .repmod import (
    NotFound,
    divided_action_closed,
    divided_action_generic,
    find_lattice_threshold,
    icb_lattice_check,
)
from .verify import SUITES, default_golden_dir, golden_render, run_suite


def _emit(text: str, out=None):
    (out or sys.stdout).write(text if text.endswith("\n") else text + "\n")


def _ell_range(text: str) -> tuple[int, int]:
    """'-1..1' -> (-1, 1); '2' -> (2, 2)."""
    if ".." in text:
        lo, hi = text.split("..", 1)
        return int(lo), int(hi)
    v = int(text)
    return v, v


def _pbw_out(x, fmt):
    if fmt == "json":
        return formats.dumps(formats.pbw_json(x))
    if fmt == "latex":
        return formats.pbw_latex(x)
    return formats.pbw_text(x)


# -- commands --------------------------------------------------------------------


def cmd_compute(args) -> int:
    if args.expr is not None:
        value = parse_laurent(args.expr)
        if args.format == "json":
            _emit(formats.dumps(value.to_json()))
        elif args.format == "latex":
            _emit(value.latex())
        else:
            _emit(str(value))
        return 0
    if args.regime is None or args.n is None or args.ell is None:
        raise SystemExit("compute needs --regime, --n and --ell (or --expr)")
    regime = ParityRegime.parse(args.regime)
    kappa = regime.kappa_for(args.ell)
    if args.method == "closed-t":
        poly = divided_closed_t(args.n, regime)
        if args.format == "json":
            _emit(formats.dumps(formats.xpoly_json(poly)))
        elif args.format == "latex":
            _emit(formats.xpoly_latex(poly, "t"))
        else:
            _emit(formats.xpoly_text(poly, "t"))
        return 0
    if args.method == "recursive":
        x = divided_recursive(args.n, regime, kappa)
    elif args.method == "expand":
        x = expand_in_t(divided_closed_t(args.n, regime), kappa)
    else:
        x = divided_expansion(args.n, regime, kappa, args.order)
    _emit(_pbw_out(x, args.format))
    return 0


def cmd_polys(args) -> int:
    if args.family not in FAMILIES:
        raise SystemExit(f"unknown family {args.family!r}")
    p = divided_family(args.family, args.n) if args.divided else FAMILIES[args.family](args.n)
    if args.at is not None:
        value = p(parse_laurent(args.at))
        if args.format == "json":
            _emit(formats.dumps({"value": value.to_json(), "integral": value.is_laurent()}))
        else:
            _emit(value.latex() if args.format == "latex" else str(value))
        return 0
    if args.format == "json":
        _emit(formats.dumps(formats.xpoly_json(p)))
    elif args.format == "latex":
        _emit(formats.xpoly_latex(p))
    else:
        _emit(formats.xpoly_text(p))
    return 0


def cmd_module_action(args) -> int:
    regime = ParityRegime.parse(args.regime)
    if args.generic:
        v = divided_action_generic(args.n, regime, args.ell, args.lam)
    else:
        v = divided_action_closed(args.n, regime, args.ell, args.lam)
    verdict = None
    if args.check_lattice:
        verdict = icb_lattice_check(v, args.n)
    if args.format == "json":
        body = {"mu": v.module.mu, "entries": formats.vector_json(v)}
        if verdict is not None:
            body["lattice"] = {"ok": verdict[0], "witness": verdict[1]}
        _emit(formats.dumps(body))
    else:
        _emit(formats.vector_text(v))
        if verdict is not None:
            _emit(f"lattice: {'pass' if verdict[0] else 'fail'}" + (f" {verdict[1]}" if verdict[1] else ""))
    if args.threshold:
        try:
            lam = find_lattice_threshold(args.n, regime, args.ell)
            _emit(f"threshold lambda = {lam}")
        except NotFound as exc:
            _emit(f"finding: {exc}")
            return 1
    return 0 if verdict is None or verdict[0] else 1


def cmd_genk(args) -> int:
    kappa = parse_laurent(args.kappa)
    poly, x = second_dp(kappa, args.weight)
    ok = True
    if args.format == "json":
        body = {
            "kappa": str(kappa),
            "diamond": diamond(kappa),
            "t_polynomial": formats.xpoly_json(poly),
            "pbw": formats.pbw_json(x),
        }
    else:
        _emit(f"diamond = {diamond(kappa)}")
        _emit("t-polynomial: " + formats.xpoly_text(poly, "t"))
        _emit(_pbw_out(x, args.format))
    if args.lam is not None:
        v = second_dp_action(kappa, args.weight, args.lam)
        ok, wit = icb_lattice_check(v, 2)
        if args.format == "json":
            body["action"] = formats.vector_json(v)
            body["lattice"] = {"ok": ok, "witness": wit}
        else:
            _emit(formats.vector_text(v))
            _emit(f"lattice: {'pass' if ok else 'fail'}")
    if args.format == "json":
        _emit(formats.dumps(body))
    return 0 if ok else 1


def cmd_verify(args) -> int:
    cfg = load_config(args.config)
    over = {"n_max": args.n_max, "mu_max": args.mu_max}
    if args.ell is not None:
        over["ell_min"], over["ell_max"] = _ell_range(args.ell)
    cfg = cfg.with_overrides(**over)
    regime = ParityRegime.parse(args.regime) if args.regime else None
    report = run_suite(
        args.suite,
        cfg,
        regime=regime,
        seed=args.seed,
        jobs=args.jobs,
        golden_dir=args.golden_dir,
    )
    if args.format == "json":
        _emit(formats.dumps(report.to_json(timing=args.timing)))
    else:
        _emit(report.to_text(verbose=args.verbose))
        if args.timing:
            _emit(f"wall time: {report.wall_time:.2f}s")
    return 0 if report.ok else 1


def cmd_table(args) -> int:
    gdir = Path(args.golden_dir) if args.golden_dir else default_golden_dir()
    files = sorted(gdir.glob("*.txt"))
    if not files:
        _emit(f"no golden files in {gdir}", sys.stderr)
        return 1
    status = 0
    for path in files:
        got = golden_render(path.name)
        want = path.read_text()
        if got is None:
            _emit(f"?? {path.name}")
            status = 1
            continue
        if got == want:
            _emit(f"ok {path.name}")
            if args.show:
                _emit(got)
        else:
            status = 1
            _emit(f"DIFF {path.name}")
            _emit("".join(difflib.unified_diff(want.splitlines(True), got.splitlines(True), "golden", "computed")))
    return status


# -- parser ----------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="idp", description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    sub = ap.add_subparsers(dest="command", required=True)

    def fmt(p, choices=("text", "json", "latex")):
        p.add_argument("--format", choices=choices, default="text")

    regimes = "even-even, odd-even, even-odd, odd-odd (or dvev, dv, dvp, dvd)"

    p = sub.add_parser("compute", help="a divided power as a PBW element")
    p.add_argument("--regime", help=regimes)
    p.add_argument("--n", type=int)
    p.add_argument("--ell", type=int, help="kappa = [2l] (even) or [2l-1] (odd)")
    p.add_argument("--order", choices=("EhF", "FhE"), default="EhF")
    p.add_argument("--method", choices=("expansion", "recursive", "expand", "closed-t"), default="expansion")
    p.add_argument("--expr", help="evaluate a Laurent expression such as '[3]*[2] - q^-1'")
    fmt(p)
    p.set_defaults(func=cmd_compute)

    p = sub.add_parser("polys", help="p, frakp, g, frakg polynomials")
    p.add_argument("--family", default="p", choices=sorted(FAMILIES))
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--divided", action="store_true", help="divide by [n]!")
    p.add_argument("--at", help="evaluate at this Laurent expression")
    fmt(p)
    p.set_defaults(func=cmd_polys)

    p = sub.add_parser("module-action", help="divided power on the highest weight vector")
    p.add_argument("--regime", required=True, help=regimes)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--ell", type=int, required=True)
    p.add_argument("--lambda", dest="lam", type=int, required=True, help="weight 2*lambda or 2*lambda+1")
    p.add_argument("--check-lattice", action="store_true")
    p.add_argument("--threshold", action="store_true", help="also search the smallest lambda passing the lattice check")
    p.add_argument("--generic", action="store_true", help="act with the PBW expansion instead of the closed formula")
    fmt(p, ("text", "json"))
    p.set_defaults(func=cmd_module_action)

    p = sub.add_parser("genk", help="second divided power for a bar-invariant kappa")
    p.add_argument("--kappa", required=True)
    p.add_argument("--weight", choices=("even", "odd"), default="even")
    p.add_argument("--lambda", dest="lam", type=int)
    fmt(p)
    p.set_defaults(func=cmd_genk)

    p = sub.add_parser("verify", help="run verification suites")
    p.add_argument("suite", nargs="?", default="all", choices=SUITES + ("all",))
    p.add_argument("--suite", dest="suite_flag", choices=SUITES + ("all",))
    p.add_argument("--regime")
    p.add_argument("--n-max", type=int)
    p.add_argument("--ell", help="range such as -1..1")
    p.add_argument("--mu-max", type=int)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--config")
    p.add_argument("--golden-dir")
    p.add_argument("--timing", action="store_true", help="report wall time (not part of the deterministic body)")
    p.add_argument("--verbose", "-v", action="store_true")
    fmt(p, ("text", "json"))
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("table", help="diff the reference examples against golden files")
    p.add_argument("--golden-dir")
    p.add_argument("--show", action="store_true")
    p.set_defaults(func=cmd_table)
    return ap


_VALUE_OPTIONS = ("--ell", "--kappa", "--expr", "--at")


def _glue_negative_values(argv):
    """Turn ``--ell -1..1`` into ``--ell=-1..1`` so argparse does not read a flag."""
    out = []
    it = iter(argv)
    for tok in it:
        if tok in _VALUE_OPTIONS:
            nxt = next(it, None)
            if nxt is None:
                out.append(tok)
            else:
                out.append(f"{tok}={nxt}")
        else:
            out.append(tok)
    return out


def main(argv=None) -> int:
    argv = sys.argv[1:] if argv is None else list(argv)
    args = build_parser().parse_args(_glue_negative_values(argv))
    if getattr(args, "suite_flag", None):
        args.suite = args.suite_flag
    try:
        return args.func(args)
    except (ValueError, KeyError) as exc:
        print(f"idp: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
