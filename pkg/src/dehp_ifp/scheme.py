"""Key generation, encryption and decryption for the DEHP/IFP cryptosystem.

Public key (e1, e2) with e1 = u + p(k1 + k2), e2 = u - p*k2 and k2 = (q - k1)/2.
A message M in the window (2^(n-1), 2^(n-1) + 2^(n-2)) encrypts to
C = X*e1 - Y*e2 for a fresh 3n-bit X and Y = X - M.  Since e1 = e2 = u (mod p),
C*d = X - Y = M (mod p) where d = u^-1 mod p, and M < p means no wrap-around.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd

from .numtheory import (
    PrimeSearchExhausted,
    RandomSource,
    is_probable_prime,
    mod_inverse,
    random_prime_between,
)

MAX_KEYGEN_ATTEMPTS = 1000
_INNER_TRIES = 32


class SchemeError(ValueError):
    pass


class ResamplingExhausted(SchemeError):
    pass


class PayloadTooLarge(SchemeError):
    pass


class MalformedPlaintext(SchemeError):
    pass


class MessageOutOfRange(SchemeError):
    pass


class PlaintextOutOfRange(SchemeError):
    pass


class InvalidKeyMaterial(SchemeError):
    pass


def plaintext_window(n: int) -> tuple[int, int]:
    """Exclusive bounds (lo, hi) of the legal message window."""
    return 1 << (n - 1), (1 << (n - 1)) + (1 << (n - 2))


def in_window(M: int, n: int) -> bool:
    lo, hi = plaintext_window(n)
    return lo < M < hi


@dataclass(frozen=True)
class PublicKey:
    n: int
    e1: int
    e2: int


@dataclass(frozen=True)
class PrivateKey:
    n: int
    p: int
    d: int


@dataclass(frozen=True)
class KeyMaterial:
    n: int
    p: int
    q: int
    k1: int
    k2: int
    u: int
    v: int
    d: int

    @property
    def public(self) -> PublicKey:
        return PublicKey(self.n, self.u + self.p * (self.k1 + self.k2), self.u - self.p * self.k2)

    @property
    def private(self) -> PrivateKey:
        return PrivateKey(self.n, self.p, self.d)


@dataclass(frozen=True)
class Plaintext:
    M: int
    n: int

    def __post_init__(self):
        if not in_window(self.M, self.n):
            lo, hi = plaintext_window(self.n)
            raise MessageOutOfRange(f"M={self.M} outside ({lo}, {hi}) for n={self.n}")


@dataclass(frozen=True)
class Ciphertext:
    C: int
    n: int


@dataclass(frozen=True)
class EncryptionNonce:
    X: int
    Y: int


def key_material_from_params(n: int, p: int, q: int, k1: int, u: int) -> KeyMaterial:
    """Build the full key record from hand-picked private parameters.

    Only the structural requirements of the scheme are checked here (primality,
    parity, invertibility of u mod p); the size window that generate_keys
    enforces on e1 and e2 is not, so hand-picked toy parameters can be replayed.
    """
    if not (is_probable_prime(p) and is_probable_prime(q)):
        raise InvalidKeyMaterial("p and q must be prime")
    return _assemble(n, p, q, k1, u)


def _assemble(n: int, p: int, q: int, k1: int, u: int) -> KeyMaterial:
    if p <= plaintext_window(n)[1]:
        raise InvalidKeyMaterial(f"p must exceed 2^(n-1) + 2^(n-2) for n={n}")
    if k1 % 2 == 0 or (q - k1) % 2:
        raise InvalidKeyMaterial("k1 must be odd so that q - k1 is even")
    v = u % p
    if v == 0:
        raise InvalidKeyMaterial("u must not be divisible by p")
    return KeyMaterial(n=n, p=p, q=q, k1=k1, k2=(q - k1) // 2, u=u, v=v, d=mod_inverse(v, p))


def generate_keys(n: int, rng: RandomSource) -> tuple[PublicKey, PrivateKey, KeyMaterial]:
    if n < 8:
        raise ValueError("n must be at least 8")
    lo_n, hi_n = 1 << (n - 1), 1 << n
    lo_2n, hi_2n = 1 << (2 * n - 1), 1 << (2 * n)
    p_floor = lo_n + (1 << (n - 2)) + 1

    attempts = 0
    while attempts < MAX_KEYGEN_ATTEMPTS:
        attempts += 1
        try:
            p = random_prime_between(p_floor, hi_n, rng)
        except PrimeSearchExhausted:
            continue
        # e1 - e2 = pq and both must fit in 2n bits, so pq < 2^(2n-1).
        q_hi = min(hi_n, (lo_2n - 1) // p + 1)
        if q_hi <= lo_n + 1:
            continue
        try:
            q = random_prime_between(lo_n, q_hi, rng)
        except PrimeSearchExhausted:
            continue
        pq = p * q
        for _ in range(_INNER_TRIES):
            attempts += 1
            k1 = rng.randint(lo_n, hi_n - 1) | 1
            k2 = (q - k1) // 2
            # u range (inclusive) keeping lo_2n <= e2 and e1 = e2 + pq < hi_2n;
            # drawing u uniformly from it equals rejection sampling on u.
            u_lo = max(lo_2n, lo_2n + p * k2)
            u_hi = min(hi_2n - 1, hi_2n - 1 - pq + p * k2)
            if u_lo > u_hi:
                continue
            u = rng.randint(u_lo, u_hi)
            if u % p == 0:
                continue
            e2 = u - p * k2
            # Coprime public keys keep the ciphertext equation a well-posed DEHP instance.
            if gcd(e2 + pq, e2) != 1:
                continue
            km = _assemble(n, p, q, k1, u)
            return km.public, km.private, km
    raise ResamplingExhausted(f"could not satisfy key constraints for n={n} in {MAX_KEYGEN_ATTEMPTS} attempts")


def max_payload_len(n: int) -> int:
    return max(n - 3, 0) // 8


def encode(payload: bytes, n: int) -> Plaintext:
    """Embed ``payload`` as M = 2^(n-1) + 2^(8L) + int(payload).

    The 2^(8L) term is a sentinel bit marking the payload length L.
    """
    L = len(payload)
    if L > max_payload_len(n):
        raise PayloadTooLarge(f"{L} bytes exceeds the {max_payload_len(n)}-byte limit for n={n}")
    return Plaintext((1 << (n - 1)) + (1 << (8 * L)) + int.from_bytes(payload, "big"), n)


def decode(pt: Plaintext) -> bytes:
    body = pt.M - (1 << (pt.n - 1))
    if body < 1:
        raise MalformedPlaintext("no sentinel bit")
    top = body.bit_length() - 1
    if top % 8:
        raise MalformedPlaintext(f"sentinel at bit {top} is not byte aligned")
    L = top // 8
    return (body - (1 << top)).to_bytes(L, "big")


def encrypt_with_nonce(pk: PublicKey, pt: Plaintext, X: int) -> tuple[Ciphertext, EncryptionNonce]:
    """Deterministic encryption with a caller-chosen X (any X > M)."""
    if pt.n != pk.n:
        raise MessageOutOfRange(f"plaintext sized for n={pt.n}, key is n={pk.n}")
    Y = X - pt.M
    if Y <= 0:
        raise MessageOutOfRange("X must exceed M")
    return Ciphertext(X * pk.e1 - Y * pk.e2, pk.n), EncryptionNonce(X, Y)


def encrypt(pk: PublicKey, pt: Plaintext, rng: RandomSource) -> tuple[Ciphertext, EncryptionNonce]:
    """Encrypt with a fresh uniformly random 3n-bit X.

    The nonce is returned for test harnesses; callers must never store or
    transmit it alongside the ciphertext.
    """
    return encrypt_with_nonce(pk, pt, rng.randbits_exact(3 * pk.n))


def decrypt(sk: PrivateKey, ct: Ciphertext) -> Plaintext:
    M = ct.C * sk.d % sk.p
    if not in_window(M, sk.n):
        raise PlaintextOutOfRange("recovered value outside the plaintext window (wrong key or corrupt ciphertext)")
    return Plaintext(M, sk.n)
