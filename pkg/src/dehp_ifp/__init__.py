"""DEHP/IFP public-key scheme with a cryptanalysis and benchmark harness."""

from .numtheory import RandomSource
from .scheme import (
    Ciphertext,
    EncryptionNonce,
    KeyMaterial,
    Plaintext,
    PrivateKey,
    PublicKey,
    decode,
    decrypt,
    encode,
    encrypt,
    generate_keys,
    key_material_from_params,
)

__all__ = [
    "Ciphertext",
    "EncryptionNonce",
    "KeyMaterial",
    "Plaintext",
    "PrivateKey",
    "PublicKey",
    "RandomSource",
    "decode",
    "decrypt",
    "encode",
    "encrypt",
    "generate_keys",
    "key_material_from_params",
]
