"""Hybrid encryption of byte messages: identity-based KEM + AEAD.

The scheme itself encrypts target-group elements and, by design, returns
a wrong-but-valid-looking element when decrypted under the wrong
identity (anonymity forbids the core from inspecting identities).  The
detectable-failure behaviour applications want is recovered here: a
random target-group element is encapsulated, a symmetric key is derived
from its canonical encoding, and the byte payload is sealed with
AES-256-GCM using the serialized encapsulation as associated data.
Decrypting under a non-matching key derives garbage and fails the
authentication tag instead of emitting plaintext.

Container layout: magic ``AHCT``, version byte, encapsulation length
(4 bytes big-endian), encapsulation, 12-byte nonce, AEAD body.
"""

from __future__ import annotations

from cryptography.exceptions import InvalidTag
from cryptography.hazmat.primitives import hashes
from cryptography.hazmat.primitives.ciphers.aead import AESGCM
from cryptography.hazmat.primitives.kdf.hkdf import HKDF

from . import scheme, wire

__all__ = ["HybridError", "AuthenticationError", "encrypt_bytes", "decrypt_bytes"]

MAGIC = b"AHCT"
VERSION = 1
NONCE_LEN = 12
KDF_INFO = b"ahibe hybrid key v1"


class HybridError(ValueError):
    pass


class AuthenticationError(Exception):
    """Tag check failed: wrong identity, wrong key, or tampered data."""


def _derive_key(suite, gt_elem):
    return HKDF(
        algorithm=hashes.SHA256(),
        length=32,
        salt=None,
        info=KDF_INFO,
    ).derive(suite.serialize_elem(gt_elem))


def encrypt_bytes(identity, plaintext, pp, rng):
    """Seal plaintext bytes to a hierarchical identity."""
    session = pp.suite.random_gt(rng)
    header = wire.dump_ciphertext(scheme.encrypt(identity, session, pp, rng))
    key = _derive_key(pp.suite, session)
    nonce = bytes(rng.randrange(256) for _ in range(NONCE_LEN))
    body = AESGCM(key).encrypt(nonce, plaintext, header)
    return (
        MAGIC
        + bytes([VERSION])
        + len(header).to_bytes(4, "big")
        + header
        + nonce
        + body
    )


def decrypt_bytes(blob, sk, pp):
    """Open a sealed container; AuthenticationError on any mismatch."""
    if len(blob) < 9 or blob[:4] != MAGIC:
        raise HybridError("not a hybrid ciphertext container")
    if blob[4] != VERSION:
        raise HybridError(f"unsupported container version {blob[4]}")
    hlen = int.from_bytes(blob[5:9], "big")
    rest = blob[9:]
    if len(rest) < hlen + NONCE_LEN + 16:
        raise HybridError("truncated hybrid ciphertext")
    header, rest = rest[:hlen], rest[hlen:]
    nonce, body = rest[:NONCE_LEN], rest[NONCE_LEN:]
    ct = wire.load_ciphertext(header)
    session = scheme.decrypt(ct, sk, pp)
    key = _derive_key(pp.suite, session)
    try:
        return AESGCM(key).decrypt(nonce, body, header)
    except InvalidTag:
        raise AuthenticationError(
            "authentication failed: wrong identity or corrupted ciphertext"
        ) from None
