"""Print the smallest lambda passing the lattice check, per regime, ell and n.

    python3 scripts/threshold_table.py [--n-max 5] [--ell -2..2]
"""

from __future__ import annotations

import argparse
import sys

from idp.cli import _ell_range, _glue_negative_values
from idp.idivided import ALL_REGIMES
from idp.repmod import NotFound, find_lattice_threshold, lattice_cap


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    ap.add_argument("--n-max", type=int, default=5)
    ap.add_argument("--ell", default="-2..2")
    args = ap.parse_args(_glue_negative_values(sys.argv[1:] if argv is None else argv))
    lo, hi = _ell_range(args.ell)
    ns = range(args.n_max + 1)
    for r in ALL_REGIMES:
        print(f"{r.name} ({r.data.family})")
        print("  ell \\ n " + " ".join(f"{n:>3d}" for n in ns))
        for ell in range(lo, hi + 1):
            row = []
            for n in ns:
                try:
                    row.append(f"{find_lattice_threshold(n, r, ell):>3d}")
                except NotFound:
                    row.append(f">{lattice_cap(n, ell)}")
            print(f"  {ell:>7d} " + " ".join(row))
        print()


if __name__ == "__main__":
    main()
