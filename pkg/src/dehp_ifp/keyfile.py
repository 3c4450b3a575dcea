"""Line-oriented text formats for keys and ciphertexts.

    DEHP-IFP PUBLIC v1      DEHP-IFP PRIVATE v1     DEHP-IFP CT v1
    n=<dec>                 n=<dec>                 n=<dec>
    e1=<dec>                p=<dec>                 c=<dec>
    e2=<dec>                d=<dec>

A private file may carry a trailing ``DEHP-IFP MATERIAL v1`` block with
q, k1, k2, u, v for the attack harness.  Values too long for decimal
conversion are written as 0x-prefixed hex.
"""

from __future__ import annotations

from .numtheory import int_from_text, int_to_text
from .scheme import Ciphertext, KeyMaterial, PrivateKey, PublicKey

MAGIC = "DEHP-IFP"
VERSION = "v1"


class FormatError(ValueError):
    pass


def _block(kind: str, **fields: int) -> str:
    lines = [f"{MAGIC} {kind} {VERSION}"]
    lines += [f"{k}={int_to_text(v)}" for k, v in fields.items()]
    return "\n".join(lines) + "\n"


def _parse_blocks(text: str) -> dict[str, dict[str, int]]:
    blocks: dict[str, dict[str, int]] = {}
    current = None
    for raw in text.splitlines():
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if line.startswith(MAGIC):
            parts = line.split()
            if len(parts) != 3:
                raise FormatError(f"bad header: {line!r}")
            _, kind, version = parts
            if version != VERSION:
                raise FormatError(f"unsupported {kind} version {version!r}")
            if kind in blocks:
                raise FormatError(f"duplicate {kind} block")
            current = blocks[kind] = {}
            continue
        if current is None:
            raise FormatError("data before header")
        key, sep, value = line.partition("=")
        if not sep:
            raise FormatError(f"expected key=value, got {line!r}")
        try:
            current[key.strip()] = int_from_text(value)
        except ValueError:
            raise FormatError(f"{key.strip()} is not an integer") from None
    return blocks


def _take(blocks, kind: str, names: tuple[str, ...]) -> dict[str, int]:
    if kind not in blocks:
        raise FormatError(f"missing {MAGIC} {kind} block")
    fields = blocks[kind]
    missing = [k for k in names if k not in fields]
    if missing:
        raise FormatError(f"{kind} block missing {', '.join(missing)}")
    return {k: fields[k] for k in names}


def dump_public(pk: PublicKey) -> str:
    return _block("PUBLIC", n=pk.n, e1=pk.e1, e2=pk.e2)


def dump_private(sk: PrivateKey, material: KeyMaterial | None = None) -> str:
    text = _block("PRIVATE", n=sk.n, p=sk.p, d=sk.d)
    if material is not None:
        text += _block("MATERIAL", q=material.q, k1=material.k1, k2=material.k2, u=material.u, v=material.v)
    return text


def dump_ciphertext(ct: Ciphertext) -> str:
    return _block("CT", n=ct.n, c=ct.C)


def load_public(text: str) -> PublicKey:
    f = _take(_parse_blocks(text), "PUBLIC", ("n", "e1", "e2"))
    return PublicKey(**f)


def load_private(text: str) -> PrivateKey:
    f = _take(_parse_blocks(text), "PRIVATE", ("n", "p", "d"))
    return PrivateKey(**f)


def load_material(text: str) -> KeyMaterial:
    blocks = _parse_blocks(text)
    priv = _take(blocks, "PRIVATE", ("n", "p", "d"))
    mat = _take(blocks, "MATERIAL", ("q", "k1", "k2", "u", "v"))
    return KeyMaterial(**priv, **mat)


def load_ciphertext(text: str) -> Ciphertext:
    f = _take(_parse_blocks(text), "CT", ("n", "c"))
    return Ciphertext(f["c"], f["n"])
