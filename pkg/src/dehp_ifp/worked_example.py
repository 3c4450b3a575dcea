"""The n = 16 reference instance, replayed end to end."""

from __future__ import annotations

from .scheme import Ciphertext, Plaintext, PublicKey, decrypt, encrypt_with_nonce, key_material_from_params

N = 16
P = 65287
Q = 40829
K1 = 46381
U = 3096817651
M = 43963
X = 281474976710656

EXPECTED = {
    "k2": -2776,
    "e1": 5943657286,
    "e2": 3278054363,
    "d": 49913,
    "Y": 281474976666693,
    "C": 750300520815394662808057,
    "M": M,
    "e1-e2": 65287 * 40829,
}


def public_key() -> PublicKey:
    return PublicKey(N, EXPECTED["e1"], EXPECTED["e2"])


def ciphertext() -> Ciphertext:
    return Ciphertext(EXPECTED["C"], N)


def replay() -> list[tuple[str, int, int]]:
    """(name, expected, computed) for every reference value."""
    km = key_material_from_params(N, P, Q, K1, U)
    pk = km.public
    ct, nonce = encrypt_with_nonce(pk, Plaintext(M, N), X)
    got = {
        "k2": km.k2,
        "e1": pk.e1,
        "e2": pk.e2,
        "d": km.d,
        "Y": nonce.Y,
        "C": ct.C,
        "M": decrypt(km.private, ct).M,
        "e1-e2": pk.e1 - pk.e2,
    }
    return [(name, EXPECTED[name], got[name]) for name in EXPECTED]
