"""Compare the F-h-E triple sum with and without the bar on p^(d)(kappa).

The anti-involution sigma inverts q, so the F-h-E ordering carries
bar(p^(d)(kappa)). Dropping the bar only agrees with the recursion while
every polynomial value involved is bar-invariant. This prints, per regime
and ell, the first n where the unbarred variant disagrees.

    python3 scripts/fhe_bar_check.py [--n-max 6]
"""

from __future__ import annotations

import argparse

from idp.idivided import ALL_REGIMES, divided_expansion, divided_recursive


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    ap.add_argument("--n-max", type=int, default=6)
    args = ap.parse_args(argv)
    for r in ALL_REGIMES:
        for ell in range(-2, 3):
            k = r.kappa_for(ell)
            first = None
            for n in range(args.n_max + 1):
                rec = divided_recursive(n, r, k)
                assert divided_expansion(n, r, k, "FhE") == rec
                if first is None and divided_expansion(n, r, k, "FhE-unbarred") != rec:
                    first = n
            where = "never" if first is None else f"n = {first}"
            print(f"{r.name:10s} kappa={k!s:12s} barred: agrees   unbarred: first mismatch {where}")


if __name__ == "__main__":
    main()
