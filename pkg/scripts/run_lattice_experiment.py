"""Lattice attack success rates, correct sizing versus a weakened nonce.

    python3 scripts/run_lattice_experiment.py --ns 16,24,32 --trials 50 --csv lattice.csv
"""

import argparse
import csv
from collections import Counter

from dehp_ifp.lattice import REGIMES, run_experiment


def main():
    ap = argparse.ArgumentParser(description=__doc__.split("\n")[0])
    ap.add_argument("--ns", default="16,24,32")
    ap.add_argument("--trials", type=int, default=50)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--csv")
    args = ap.parse_args()

    rows = run_experiment([int(x) for x in args.ns.split(",")], trials=args.trials, seed=args.seed)
    if args.csv:
        with open(args.csv, "w", newline="") as fh:
            w = csv.DictWriter(fh, fieldnames=list(rows[0]))
            w.writeheader()
            w.writerows(rows)
    hits = Counter()
    for r in rows:
        hits[r["n"], r["regime"]] += r["success"]
    print(f"{'n':>4}  " + "  ".join(f"{reg:>10}" for reg in REGIMES))
    for n in sorted({r["n"] for r in rows}):
        print(f"{n:>4}  " + "  ".join(f"{hits[n, reg]:>5}/{args.trials:<4}" for reg in REGIMES))


if __name__ == "__main__":
    main()
