"""Mapping human-readable identity paths to scalar identities.

A path like ``corp/eng/alice`` becomes one nonzero scalar mod p per
label.  Each label is hashed with domain separation that covers the
component index and the label length, so ("a", "b") and ("ab",) can
never collide; a counter byte is appended and bumped until the residue
is nonzero (terminates immediately in practice).
"""

from __future__ import annotations

import hashlib

__all__ = ["IdentityError", "parse_path", "hash_identity", "path_to_identity"]

_DOMAIN = b"ahibe identity v1"


class IdentityError(ValueError):
    pass


def parse_path(text):
    """Split ``a/b/c`` into labels, rejecting empty components."""
    labels = text.split("/")
    if not labels or any(label == "" for label in labels):
        raise IdentityError(f"identity path {text!r} has empty labels")
    return labels


def hash_identity(labels, p):
    """Deterministically map labels to a tuple of scalars in Z_p^*."""
    if not labels:
        raise IdentityError("identity needs at least one label")
    out = []
    for index, label in enumerate(labels):
        raw = label.encode()
        counter = 0
        while True:
            digest = hashlib.sha256(
                _DOMAIN
                + index.to_bytes(2, "big")
                + len(raw).to_bytes(2, "big")
                + raw
                + bytes([counter])
            ).digest()
            value = int.from_bytes(digest, "big") % p
            if value:
                out.append(value)
                break
            counter += 1
            if counter > 255:
                raise IdentityError("hash resampling exhausted")  # p > 2 prevents this
    return tuple(out)


def path_to_identity(text, p):
    return hash_identity(parse_path(text), p)
