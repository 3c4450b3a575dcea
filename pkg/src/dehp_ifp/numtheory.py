"""Arbitrary-precision number theory: primality, prime sampling, gcd, inverses.

All functions work on plain Python ints.  Randomness always comes in through an
explicit :class:`RandomSource` so that seeded runs are reproducible.
"""

from __future__ import annotations

import functools
import math
import random
from dataclasses import dataclass, field

SMALL_PRIMES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)
# Trial-division table used before Miller-Rabin.
_SIEVE_LIMIT = 2000


class NotInvertible(ArithmeticError):
    pass


class PrimeSearchExhausted(RuntimeError):
    pass


def _primes_below(limit: int) -> list[int]:
    sieve = bytearray([1]) * limit
    sieve[0:2] = b"\x00\x00"
    for i in range(2, int(limit**0.5) + 1):
        if sieve[i]:
            sieve[i * i :: i] = bytearray(len(sieve[i * i :: i]))
    return [i for i, flag in enumerate(sieve) if flag]


_TRIAL_PRIMES = _primes_below(_SIEVE_LIMIT)
_PRIMORIAL = math.prod(_TRIAL_PRIMES)
_TRIAL_PRIME_SET = frozenset(_TRIAL_PRIMES)
# Second filter for multi-thousand-bit candidates, where one Miller-Rabin round
# costs far more than a gcd against this product.
_BIG_CANDIDATE_BITS = 1024


@functools.lru_cache(maxsize=1)
def _wide_primorial() -> int:
    return math.prod(p for p in _primes_below(200_000) if p >= _SIEVE_LIMIT)


@dataclass
class RandomSource:
    """Injectable integer randomness.

    With a seed the stream is Mersenne Twister and identical on every platform;
    without one it draws from the operating system.
    """

    seed: int | None = None
    _rng: random.Random = field(init=False, repr=False)

    def __post_init__(self):
        if self.seed is None:
            self._rng = random.SystemRandom()
        else:
            if not 0 <= self.seed < 1 << 64:
                raise ValueError(f"seed must be a 64-bit unsigned integer, got {self.seed}")
            self._rng = random.Random(self.seed)

    @property
    def mode(self) -> str:
        return "system-entropy" if self.seed is None else "seeded-deterministic"

    def randint(self, lo: int, hi: int) -> int:
        """Uniform integer in the inclusive range [lo, hi]."""
        if lo > hi:
            raise ValueError(f"empty range [{lo}, {hi}]")
        return lo + self._rng.randrange(hi - lo + 1)

    def getrandbits(self, k: int) -> int:
        return self._rng.getrandbits(k) if k > 0 else 0

    def randbits_exact(self, k: int) -> int:
        """Uniform integer with bit length exactly ``k``."""
        return self.randint(1 << (k - 1), (1 << k) - 1)


def _miller_rabin_round(n: int, a: int, d: int, s: int) -> bool:
    x = pow(a, d, n)
    if x == 1 or x == n - 1:
        return True
    for _ in range(s - 1):
        x = x * x % n
        if x == n - 1:
            return True
    return False


def is_probable_prime(n: int, rounds: int = 40) -> bool:
    """Miller-Rabin test.

    Exact for n < 2**64 (the first twelve primes are a deterministic witness
    set there).  Above that, ``rounds`` bases are used: the twelve fixed ones
    first, then bases drawn from a generator seeded by ``n`` itself, so the
    answer for a given ``n`` never changes between calls.
    """
    if rounds < 1:
        raise ValueError("rounds must be >= 1")
    if n < 2:
        return False
    if n < _SIEVE_LIMIT:
        return n in _TRIAL_PRIME_SET
    if math.gcd(n, _PRIMORIAL) != 1:
        return False
    if n < _SIEVE_LIMIT * _SIEVE_LIMIT:
        return True
    if n.bit_length() > _BIG_CANDIDATE_BITS and math.gcd(n, _wide_primorial()) != 1:
        return False

    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1

    if n < 1 << 64:
        return all(_miller_rabin_round(n, a, d, s) for a in SMALL_PRIMES)

    bases = list(SMALL_PRIMES[:rounds])
    if rounds > len(bases):
        base_rng = random.Random(n)
        bases += [base_rng.randrange(2, n - 1) for _ in range(rounds - len(bases))]
    return all(_miller_rabin_round(n, a, d, s) for a in bases)


def random_prime_between(lo: int, hi: int, rng: RandomSource, max_candidates: int | None = None) -> int:
    """Uniformly sampled odd candidates from [lo, hi) until one is prime."""
    if hi - lo < 1:
        raise ValueError(f"empty range [{lo}, {hi})")
    if max_candidates is None:
        max_candidates = 100 * max(hi.bit_length(), 2)
    for _ in range(max_candidates):
        cand = rng.randint(lo, hi - 1) | 1
        if cand >= hi:
            continue
        if is_probable_prime(cand):
            return cand
    raise PrimeSearchExhausted(f"no prime in [{lo}, {hi}) after {max_candidates} candidates")


def random_prime(bits: int, rng: RandomSource) -> int:
    """Random prime with bit length exactly ``bits``."""
    if bits < 3:
        raise ValueError("bits must be >= 3")
    top = 1 << (bits - 1)
    for _ in range(100 * bits):
        cand = rng.getrandbits(bits) | top | 1
        if is_probable_prime(cand):
            return cand
    raise PrimeSearchExhausted(f"no {bits}-bit prime after {100 * bits} candidates")


def ext_gcd(a: int, b: int) -> tuple[int, int, int]:
    """Return (g, s, t) with s*a + t*b == g == gcd(a, b) >= 1."""
    if a == 0 and b == 0:
        raise ValueError("ext_gcd(0, 0) is undefined")
    old_r, r = a, b
    old_s, s = 1, 0
    old_t, t = 0, 1
    while r:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_s, s = s, old_s - q * s
        old_t, t = t, old_t - q * t
    if old_r < 0:
        old_r, old_s, old_t = -old_r, -old_s, -old_t
    return old_r, old_s, old_t


def mod_inverse(a: int, m: int) -> int:
    if m < 2:
        raise ValueError("modulus must be >= 2")
    g, s, _ = ext_gcd(a % m, m)
    if g != 1:
        raise NotInvertible(f"{a} has no inverse modulo {m} (gcd {g})")
    return s % m


def ceil_div(a: int, b: int) -> int:
    return -((-a) // b)


# CPython refuses decimal conversion of ints beyond ~4300 digits (a 2n-bit key
# value at n = 8192 is ~4900).  Hex is exempt, so big values go out as 0x....
_DECIMAL_BITS = 12_000


def int_to_text(v: int) -> str:
    if v.bit_length() <= _DECIMAL_BITS:
        return str(v)
    return ("-" if v < 0 else "") + hex(abs(v))


def int_from_text(s: str) -> int:
    """Inverse of int_to_text: decimal, or optionally signed 0x hex."""
    s = s.strip()
    body = s.lstrip("+-")
    if body[:2].lower() == "0x":
        digits = body[2:]
        if not digits or digits[0] in "+-_":
            raise ValueError(f"bad hex integer {s!r}")
        v = int(digits, 16)
        return -v if s.startswith("-") else v
    return int(s)
