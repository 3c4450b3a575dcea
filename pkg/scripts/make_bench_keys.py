"""Generate the pinned benchmark keys shipped in src/dehp_ifp/data.

Pure-Python prime generation at n = 8192 takes tens of minutes, which is why
these are cached rather than made on every benchmark run.

    python3 scripts/make_bench_keys.py            # all default sizes
    python3 scripts/make_bench_keys.py 4096 8192
"""

import sys
import time

from dehp_ifp import keyfile
from dehp_ifp.bench import BENCH_SEED, DEFAULT_NS, bench_key_path
from dehp_ifp.numtheory import RandomSource
from dehp_ifp.scheme import generate_keys


def main(argv):
    ns = [int(a) for a in argv] or list(DEFAULT_NS)
    for n in ns:
        t0 = time.time()
        pk, sk, km = generate_keys(n, RandomSource(BENCH_SEED + n))
        path = bench_key_path(n)
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(keyfile.dump_private(sk, km))
        print(f"n={n}: wrote {path} in {time.time() - t0:.1f}s", flush=True)


if __name__ == "__main__":
    main(sys.argv[1:])
