"""Timing and size measurements for the scheme's own row of the comparison table.

Encryption is two multiplications and a subtraction, decryption one
multiplication and one reduction, so both should scale at most quadratically
in n.  Keys at n >= 1024 are slow to generate in pure Python, so pinned keys
for the default sizes ship in ``dehp_ifp/data`` (made by
``scripts/make_bench_keys.py``) and are loaded when present.
"""

from __future__ import annotations

import csv
import gc
import statistics
import time
from dataclasses import dataclass, field
from fractions import Fraction
from importlib import resources
from pathlib import Path

import numpy as np

from . import keyfile
from .numtheory import RandomSource
from .scheme import KeyMaterial, decrypt, encode, encrypt, generate_keys, max_payload_len

DEFAULT_NS = (1024, 2048, 4096, 8192)
BENCH_SEED = 20240101
# Each timed sample runs the operation often enough to last at least this long.
MIN_SAMPLE_NS = 2_000_000


@dataclass
class BenchRecord:
    n: int
    op: str
    nanos: int
    samples: list[int] = field(default_factory=list)
    m_bits: int = 0
    c_bits: int = 0
    e1_bits: int = 0
    e2_bits: int = 0


def bench_key_path(n: int) -> Path:
    return Path(str(resources.files("dehp_ifp") / "data" / f"bench_n{n}.key"))


def bench_keys(n: int, seed: int = BENCH_SEED) -> KeyMaterial:
    """Pinned key for ``n`` if one ships with the package, else a fresh seeded one."""
    path = bench_key_path(n)
    if path.exists():
        km = keyfile.load_material(path.read_text())
        if km.n == n and km.public.e1 - km.public.e2 == km.p * km.q:
            return km
    return generate_keys(n, RandomSource(seed + n))[2]


def _time_op(fn, trials: int) -> list[int]:
    """Per-call wall time in ns for ``trials`` samples, after one warm-up sample."""
    reps = 1
    while True:
        t0 = time.perf_counter_ns()
        for _ in range(reps):
            fn()
        dt = time.perf_counter_ns() - t0
        if dt >= MIN_SAMPLE_NS or reps >= 1 << 20:
            break
        reps *= 2
    samples = []
    gc_was_on = gc.isenabled()
    gc.disable()
    try:
        for _ in range(trials):
            t0 = time.perf_counter_ns()
            for _ in range(reps):
                fn()
            samples.append(max((time.perf_counter_ns() - t0) // reps, 1))
    finally:
        if gc_was_on:
            gc.enable()
    return samples


def run_scaling(ns=DEFAULT_NS, trials: int = 9, seed: int = BENCH_SEED) -> list[BenchRecord]:
    ns = list(ns)
    if any(b <= a for a, b in zip(ns, ns[1:])) or min(ns) < 64:
        raise ValueError("ns must be strictly increasing and each >= 64")
    records = []
    for n in ns:
        km = bench_keys(n, seed)
        pk, sk = km.public, km.private
        rng = RandomSource(seed)
        pt = encode(bytes(rng.getrandbits(8) for _ in range(max_payload_len(n))), n)
        ct, _ = encrypt(pk, pt, rng)
        sizes = dict(m_bits=pt.M.bit_length(), c_bits=ct.C.bit_length(), e1_bits=pk.e1.bit_length(), e2_bits=pk.e2.bit_length())
        for op, fn in (("encrypt", lambda: encrypt(pk, pt, rng)), ("decrypt", lambda: decrypt(sk, ct))):
            samples = _time_op(fn, trials)
            records.append(BenchRecord(n, op, int(statistics.median(samples)), samples, **sizes))
    return records


def fit_slope(ns, times) -> float:
    """Least-squares slope of log(time) against log(n)."""
    slope, _ = np.polyfit(np.log(np.asarray(ns, float)), np.log(np.asarray(times, float)), 1)
    return float(slope)


def slopes(records: list[BenchRecord]) -> dict[str, float]:
    out = {}
    for op in sorted({r.op for r in records}):
        rs = [r for r in records if r.op == op]
        out[op] = fit_slope([r.n for r in rs], [r.nanos for r in rs])
    return out


def measure_ratios(n: int, trials: int, seed: int = BENCH_SEED) -> tuple[Fraction, Fraction]:
    """(mean bitlen(C) / n, (bitlen(e1) + bitlen(e2)) / n) over fresh keys."""
    if n < 64:
        raise ValueError("n must be >= 64")
    rng = RandomSource(seed)
    c_bits = e_bits = 0
    for _ in range(trials):
        pk, _, _ = generate_keys(n, rng)
        pt = encode(bytes(rng.getrandbits(8) for _ in range(max_payload_len(n))), n)
        ct, _ = encrypt(pk, pt, rng)
        c_bits += ct.C.bit_length()
        e_bits += pk.e1.bit_length() + pk.e2.bit_length()
    return Fraction(c_bits, trials * n), Fraction(e_bits, trials * n)


def write_csv(records: list[BenchRecord], dest) -> None:
    """Per-trial rows (n, op, trial, nanos) to a path or an open text file."""
    if isinstance(dest, (str, Path)):
        with open(dest, "w", newline="") as fh:
            return write_csv(records, fh)
    w = csv.writer(dest)
    w.writerow(["n", "op", "trial", "nanos"])
    for r in records:
        for i, ns in enumerate(r.samples):
            w.writerow([r.n, r.op, i, ns])


def summary(records: list[BenchRecord]) -> str:
    lines = [f"{'n':>6} {'op':<8} {'median_ns':>12} {'|M|':>6} {'|C|':>7} {'|e1|+|e2|':>10}"]
    for r in records:
        lines.append(f"{r.n:>6} {r.op:<8} {r.nanos:>12} {r.m_bits:>6} {r.c_bits:>7} {r.e1_bits + r.e2_bits:>10}")
    for op, s in slopes(records).items():
        lines.append(f"slope[{op}] = {s:.3f}")
    return "\n".join(lines) + "\n"
