"""Cryptanalysis harness.

factor_break   -- e1 - e2 = p*q, so factoring the public key difference gives
                  p, then d and the plaintext.  The actual break.
euclidean_probe -- checks that floor(C/e1) != X and floor(C/e2) != Y.
x_search_width -- how many X = X0 + e2*j candidates fall in the 3n-bit window.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from math import gcd

from .dehp import ciphertext_instance, infeasibility_width
from .numtheory import NotInvertible, int_to_text, mod_inverse
from .scheme import Ciphertext, EncryptionNonce, PublicKey, in_window, plaintext_window

TRIAL_DIVISION_LIMIT = 10**6
RHO_BATCH = 128


class BudgetExhausted(RuntimeError):
    pass


class WorkCounter:
    """Counts big-integer operations against a hard budget."""

    def __init__(self, budget: int | None = None):
        self.budget = budget
        self.ops = 0

    def charge(self, k: int = 1) -> None:
        self.ops += k
        if self.budget is not None and self.ops > self.budget:
            raise BudgetExhausted(f"budget of {self.budget} operations exhausted")


@dataclass
class AttackReport:
    attack: str
    success: bool
    recovered: dict[str, int] = field(default_factory=dict)
    work: int = 0
    notes: str = ""

    def to_kv(self) -> str:
        items = [("attack", self.attack), ("success", str(self.success).lower()), ("work", self.work)]
        items += [(k, int_to_text(v)) for k, v in sorted(self.recovered.items())]
        if self.notes:
            items.append(("notes", self.notes.replace("\n", " ")))
        return "\n".join(f"{k}={v}" for k, v in items) + "\n"

    def to_text(self) -> str:
        lines = [f"attack   : {self.attack}", f"success  : {'yes' if self.success else 'no'}", f"work ops : {self.work}"]
        lines += [f"{k:<9}: {int_to_text(v)}" for k, v in sorted(self.recovered.items())]
        if self.notes:
            lines.append(f"notes    : {self.notes}")
        return "\n".join(lines) + "\n"


@lru_cache(maxsize=1)
def _trial_primes() -> list[int]:
    limit = TRIAL_DIVISION_LIMIT
    sieve = bytearray([1]) * (limit + 1)
    sieve[0:2] = b"\x00\x00"
    for i in range(2, int(limit**0.5) + 1):
        if sieve[i]:
            sieve[i * i :: i] = bytearray(len(sieve[i * i :: i]))
    return [i for i, flag in enumerate(sieve) if flag]


def trial_division(N: int, counter: WorkCounter) -> int | None:
    """Smallest prime factor of N below the trial limit, if any."""
    for p in _trial_primes():
        if p * p > N:
            return None
        counter.charge()
        if N % p == 0:
            return p
    return None


def pollard_brent(N: int, counter: WorkCounter, c: int = 1, y0: int = 2) -> int:
    """Brent's variant of Pollard rho with batched gcds.

    Returns a divisor of N, possibly N itself when the cycle collapses; the
    caller retries with another ``c``.
    """
    if N % 2 == 0:
        return 2
    y, r, q, g = y0, 1, 1, 1
    x = ys = y
    while g == 1:
        x = y
        for _ in range(r):
            y = (y * y + c) % N
        counter.charge(r)
        k = 0
        while k < r and g == 1:
            ys = y
            steps = min(RHO_BATCH, r - k)
            for _ in range(steps):
                y = (y * y + c) % N
                q = q * abs(x - y) % N
            counter.charge(2 * steps + 1)
            g = gcd(q, N)
            k += RHO_BATCH
        r *= 2
    if g == N:
        # Batched product hit zero; replay the last batch one step at a time.
        while True:
            ys = (ys * ys + c) % N
            counter.charge(2)
            g = gcd(abs(x - ys), N)
            if g > 1:
                break
    return g


def find_factor(N: int, counter: WorkCounter) -> int | None:
    """Some nontrivial factor of N, or None if N looks prime to trial division."""
    f = trial_division(N, counter)
    if f is not None:
        return f
    if N < TRIAL_DIVISION_LIMIT**2:
        return None
    c = 1
    while True:
        g = pollard_brent(N, counter, c=c)
        if 1 < g < N:
            return g
        c += 1


def factor_break(pk: PublicKey, ct: Ciphertext, budget: int) -> AttackReport:
    """Recover the plaintext by factoring e1 - e2 = p*q.

    u = e2 (mod p) because e2 = u - p*k2, so knowing p is enough to rebuild d.
    Since e1 = e2 + pq, C = M*e2 holds modulo q as well; the factor chosen by the
    size bound on p is tried first, the other only if that one fails.
    """
    if budget <= 0:
        raise ValueError("budget must be positive")
    counter = WorkCounter(budget)
    N = pk.e1 - pk.e2
    if N < 4:
        return AttackReport("factor", False, {"N": N}, 0, "e1 - e2 is not a composite")
    try:
        f = find_factor(N, counter)
    except BudgetExhausted as exc:
        return AttackReport("factor", False, {"N": N}, counter.ops, str(exc))
    if f is None:
        return AttackReport("factor", False, {"N": N}, counter.ops, "no factor found")
    pair = sorted((f, N // f), reverse=True)
    assert pair[0] * pair[1] == N
    recovered = {"N": N, "f1": pair[0], "f2": pair[1]}

    threshold = plaintext_window(pk.n)[1]
    candidates = [x for x in pair if x > threshold] or pair
    # Fall back to the other factor only if the bounded one fails to decrypt.
    candidates += [x for x in pair if x not in candidates]
    for p in candidates:
        counter.charge(3)
        v = pk.e2 % p
        try:
            d = mod_inverse(v, p)
        except (NotInvertible, ValueError):
            continue
        M = ct.C * d % p
        if in_window(M, pk.n):
            recovered.update(p=p, q=N // p, d=d, M=M)
            return AttackReport("factor", True, recovered, counter.ops)
    return AttackReport("factor", False, recovered, counter.ops, "no factor decrypts into the plaintext window")


def euclidean_probe(pk: PublicKey, ct: Ciphertext, nonce: EncryptionNonce) -> AttackReport:
    """White-box check of whether plain division leaks X or Y."""
    qx = ct.C // pk.e1
    qy = ct.C // pk.e2
    hit_x, hit_y = qx == nonce.X, qy == nonce.Y
    notes = "floor(C/e1) == X" if hit_x else ""
    if hit_y:
        notes = (notes + "; " if notes else "") + "floor(C/e2) == Y"
    return AttackReport(
        "euclid",
        hit_x or hit_y,
        {"C_div_e1": qx, "C_div_e2": qy, "X_gap": nonce.X - qx, "Y_gap": qy - nonce.Y},
        2,
        notes,
    )


def x_search_width(pk: PublicKey, ct: Ciphertext) -> int:
    """Number of j with X0 + e2*j a 3n-bit integer."""
    return infeasibility_width(ciphertext_instance(pk, ct))
