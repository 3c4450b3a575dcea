"""Factoring break on fresh keys: success rate and work per size.

    python3 scripts/run_factor_experiment.py --ns 16,24,32,40 --trials 50
"""

import argparse
import statistics
import time

from dehp_ifp.attacks import factor_break
from dehp_ifp.numtheory import RandomSource
from dehp_ifp.scheme import Plaintext, encrypt, generate_keys, plaintext_window


def main():
    ap = argparse.ArgumentParser(description=__doc__.split("\n")[0])
    ap.add_argument("--ns", default="16,24,32")
    ap.add_argument("--trials", type=int, default=50)
    ap.add_argument("--budget", type=int, default=10**7)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()

    print(f"{'n':>4} {'success':>9} {'median ops':>11} {'max ops':>9} {'secs':>7}")
    for n in (int(x) for x in args.ns.split(",")):
        rng = RandomSource(args.seed + n)
        lo, hi = plaintext_window(n)
        ok, work = 0, []
        t0 = time.perf_counter()
        for _ in range(args.trials):
            pk, _, _ = generate_keys(n, rng)
            pt = Plaintext(rng.randint(lo + 1, hi - 1), n)
            ct, _ = encrypt(pk, pt, rng)
            rep = factor_break(pk, ct, args.budget)
            ok += rep.success and rep.recovered["M"] == pt.M
            work.append(rep.work)
        dt = time.perf_counter() - t0
        print(f"{n:>4} {ok:>4}/{args.trials:<4} {statistics.median(work):>11.0f} {max(work):>9} {dt:>7.1f}")


if __name__ == "__main__":
    main()
