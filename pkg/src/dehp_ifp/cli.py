"""Command-line front end.

    dehp-ifp keygen  --n 64 --out-pub k.pub --out-priv k.priv
    dehp-ifp encrypt --pub k.pub --in msg.bin --out msg.ct
    dehp-ifp decrypt --priv k.priv --ct msg.ct --out msg.out
    dehp-ifp attack factor --pub k.pub --ct msg.ct
    dehp-ifp attack euclid --n 32 --trials 100
    dehp-ifp attack lattice --n 16 --trials 50 --format csv
    dehp-ifp attack dehp-width --example
    dehp-ifp bench --ns 1024,2048,4096,8192 --csv bench.csv
    dehp-ifp example

Exit codes: 0 ok, 2 bad input, 3 key resampling exhausted, 4 payload too
large, 5 decryption landed outside the plaintext window.
"""

from __future__ import annotations

import argparse
import csv
import os
import sys
from pathlib import Path

from . import attacks, bench, keyfile, lattice, worked_example
from .numtheory import RandomSource, int_to_text
from .scheme import (
    PayloadTooLarge,
    Plaintext,
    PlaintextOutOfRange,
    ResamplingExhausted,
    decode,
    decrypt,
    encode,
    encrypt,
    generate_keys,
    plaintext_window,
)

EXIT_OK, EXIT_BAD_INPUT, EXIT_RESAMPLE, EXIT_PAYLOAD, EXIT_WINDOW = 0, 2, 3, 4, 5


class UsageError(Exception):
    pass


def _rng(args) -> RandomSource:
    seed = args.seed
    if seed is None and os.environ.get("DEHP_SEED"):
        seed = int(os.environ["DEHP_SEED"])
    return RandomSource(seed)


def _read_text(path: str) -> str:
    try:
        return Path(path).read_text()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None


def _write_secret(path: str, text: str) -> None:
    fd = os.open(path, os.O_WRONLY | os.O_CREAT | os.O_TRUNC, 0o600)
    with os.fdopen(fd, "w") as fh:
        fh.write(text)


def _emit(args, rows: dict) -> None:
    rows = {k: int_to_text(v) if isinstance(v, int) else v for k, v in rows.items()}
    if args.format == "kv":
        for k, v in rows.items():
            print(f"{k}={v}")
    elif args.format == "csv":
        w = csv.writer(sys.stdout)
        w.writerow(rows.keys())
        w.writerow(rows.values())
    else:
        width = max(map(len, rows))
        for k, v in rows.items():
            print(f"{k:<{width}} : {v}")


def cmd_keygen(args) -> int:
    if args.n < 8:
        print("keygen: n must be at least 8", file=sys.stderr)
        return EXIT_BAD_INPUT
    if args.out_pub == args.out_priv:
        raise UsageError("public and private outputs must differ")
    try:
        pk, sk, km = generate_keys(args.n, _rng(args))
    except ResamplingExhausted as exc:
        print(f"keygen: {exc}", file=sys.stderr)
        return EXIT_RESAMPLE
    Path(args.out_pub).write_text(keyfile.dump_public(pk))
    _write_secret(args.out_priv, keyfile.dump_private(sk, km if args.emit_material else None))
    rows = {"n": pk.n, "e1": pk.e1, "e2": pk.e2}
    if args.emit_material:
        rows.update(p=km.p, q=km.q, k1=km.k1, k2=km.k2, u=km.u, v=km.v, d=km.d)
    _emit(args, rows)
    return EXIT_OK


def cmd_encrypt(args) -> int:
    pk = keyfile.load_public(_read_text(args.pub))
    payload = sys.stdin.buffer.read() if args.input == "-" else Path(args.input).read_bytes()
    try:
        pt = encode(payload, pk.n)
    except PayloadTooLarge as exc:
        print(f"encrypt: {exc}", file=sys.stderr)
        return EXIT_PAYLOAD
    ct, _ = encrypt(pk, pt, _rng(args))
    Path(args.out).write_text(keyfile.dump_ciphertext(ct))
    return EXIT_OK


def cmd_decrypt(args) -> int:
    sk = keyfile.load_private(_read_text(args.priv))
    ct = keyfile.load_ciphertext(_read_text(args.ct))
    try:
        payload = decode(decrypt(sk, ct))
    except PlaintextOutOfRange as exc:
        print(f"decrypt: {exc}", file=sys.stderr)
        return EXIT_WINDOW
    if args.out == "-":
        sys.stdout.buffer.write(payload)
    else:
        Path(args.out).write_bytes(payload)
    return EXIT_OK


def _instance(args):
    if args.example:
        return worked_example.public_key(), worked_example.ciphertext()
    if not (args.pub and args.ct):
        raise UsageError("need --pub and --ct, or --example")
    return keyfile.load_public(_read_text(args.pub)), keyfile.load_ciphertext(_read_text(args.ct))


def _print_report(args, rep: attacks.AttackReport) -> None:
    if args.format == "kv":
        sys.stdout.write(rep.to_kv())
    else:
        sys.stdout.write(rep.to_text())


def cmd_attack(args) -> int:
    kind = args.kind
    if kind == "factor":
        pk, ct = _instance(args)
        _print_report(args, attacks.factor_break(pk, ct, args.budget))
    elif kind == "dehp-width":
        pk, ct = _instance(args)
        width = attacks.x_search_width(pk, ct)
        _emit(args, {"n": pk.n, "x_search_width": width, "log2_width": width.bit_length() - 1, "lower_bound": 2 ** (pk.n - 1)})
    elif kind == "euclid":
        # The probe is white-box: it needs each nonce, so instances are made here.
        rng = _rng(args)
        hits = 0
        lo, hi = plaintext_window(args.n)
        for _ in range(args.trials):
            pk, _, _ = generate_keys(args.n, rng)
            ct, nonce = encrypt(pk, Plaintext(rng.randint(lo + 1, hi - 1), args.n), rng)
            hits += attacks.euclidean_probe(pk, ct, nonce).success
        _emit(args, {"attack": "euclid", "n": args.n, "trials": args.trials, "successes": hits})
    elif kind == "lattice":
        if args.example or args.pub:
            pk, ct = _instance(args)
            _print_report(args, lattice.lattice_attack(pk, ct))
        else:
            seed = args.seed if args.seed is not None else 0
            rows = lattice.run_experiment([args.n], trials=args.trials, seed=seed)
            if args.format == "csv":
                w = csv.DictWriter(sys.stdout, fieldnames=list(rows[0]))
                w.writeheader()
                w.writerows(rows)
            else:
                for regime in lattice.REGIMES:
                    ok = sum(r["success"] for r in rows if r["regime"] == regime)
                    _emit(args, {"regime": regime, "n": args.n, "successes": ok, "trials": args.trials})
    return EXIT_OK


def cmd_bench(args) -> int:
    try:
        ns = [int(x) for x in args.ns.split(",")]
    except ValueError:
        raise UsageError(f"bad --ns {args.ns!r}") from None
    records = bench.run_scaling(ns, args.trials)
    if args.csv:
        bench.write_csv(records, args.csv)
    if args.format == "csv":
        bench.write_csv(records, sys.stdout)
    else:
        sys.stdout.write(bench.summary(records))
        ratio_n = args.ratio_n
        mc, me = bench.measure_ratios(ratio_n, args.ratio_trials)
        print(f"ratio M:C  = 1:{float(mc):.4f}  (n={ratio_n}, {args.ratio_trials} trials)")
        print(f"ratio M:|E| = 1:{me}")
    return EXIT_OK


def cmd_example(args) -> int:
    rows = worked_example.replay()
    ok_all = True
    print(f"{'value':<6} {'expected':>26} {'computed':>26}  ok")
    for name, expected, got in rows:
        ok = expected == got
        ok_all &= ok
        print(f"{name:<6} {expected:>26} {got:>26}  {'PASS' if ok else 'FAIL'}")
    pk, ct = worked_example.public_key(), worked_example.ciphertext()
    rep = attacks.factor_break(pk, ct, 10**7)
    ok = rep.success and rep.recovered.get("M") == worked_example.M
    ok_all &= ok
    print(f"{'factor break recovers M':<34} {rep.recovered.get('M')!s:>26}  {'PASS' if ok else 'FAIL'}")
    width = attacks.x_search_width(pk, ct)
    ok = width >= 2 ** (pk.n - 1)
    ok_all &= ok
    print(f"{'X search width >= 2^(n-1)':<34} {width:>26}  {'PASS' if ok else 'FAIL'}")
    return EXIT_OK if ok_all else 1


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=None, help="RNG seed (falls back to $DEHP_SEED, then OS entropy)")
    common.add_argument("--format", choices=("text", "kv", "csv"), default="text")

    ap = argparse.ArgumentParser(prog="dehp-ifp", description=__doc__.split("\n")[0])
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("keygen", parents=[common])
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--out-pub", required=True)
    p.add_argument("--out-priv", required=True)
    p.add_argument("--emit-material", action="store_true", help="also write and print q, k1, k2, u, v")
    p.set_defaults(func=cmd_keygen)

    p = sub.add_parser("encrypt", parents=[common])
    p.add_argument("--pub", required=True)
    p.add_argument("--in", dest="input", required=True, help="payload file, or - for stdin")
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_encrypt)

    p = sub.add_parser("decrypt", parents=[common])
    p.add_argument("--priv", required=True)
    p.add_argument("--ct", required=True)
    p.add_argument("--out", default="-")
    p.set_defaults(func=cmd_decrypt)

    p = sub.add_parser("attack", parents=[common])
    p.add_argument("kind", choices=("factor", "euclid", "lattice", "dehp-width"))
    p.add_argument("--pub")
    p.add_argument("--ct")
    p.add_argument("--example", action="store_true", help="use the n=16 reference instance")
    p.add_argument("--budget", type=int, default=10**7)
    p.add_argument("--n", type=int, default=32)
    p.add_argument("--trials", type=int, default=100)
    p.set_defaults(func=cmd_attack)

    p = sub.add_parser("bench", parents=[common])
    p.add_argument("--ns", default=",".join(map(str, bench.DEFAULT_NS)))
    p.add_argument("--trials", type=int, default=9)
    p.add_argument("--csv", help="write per-trial timings here")
    p.add_argument("--ratio-n", type=int, default=256)
    p.add_argument("--ratio-trials", type=int, default=100)
    p.set_defaults(func=cmd_bench)

    p = sub.add_parser("example", parents=[common])
    p.set_defaults(func=cmd_example)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (UsageError, keyfile.FormatError, ValueError) as exc:
        print(f"{args.command}: {exc}", file=sys.stderr)
        return EXIT_BAD_INPUT


if __name__ == "__main__":
    sys.exit(main())
