import random

import pytest

from ahibe import hybrid, scheme
from ahibe.identity import hash_identity


@pytest.fixture
def world(mock1009):
    rng = random.Random(6)
    mk, pp, _ = scheme.setup(mock1009, 3, rng)
    return mock1009, mk, pp, rng


def test_roundtrip(world):
    suite, mk, pp, rng = world
    ident = hash_identity(["corp", "eng"], suite.p)
    sk = scheme.keygen(ident, mk, pp, rng)
    blob = hybrid.encrypt_bytes(ident, b"attack at dawn", pp, rng)
    assert hybrid.decrypt_bytes(blob, sk, pp) == b"attack at dawn"


def test_empty_and_large_messages(world):
    suite, mk, pp, rng = world
    ident = hash_identity(["x"], suite.p)
    sk = scheme.keygen(ident, mk, pp, rng)
    for msg in (b"", bytes(range(256)) * 100):
        blob = hybrid.encrypt_bytes(ident, msg, pp, rng)
        assert hybrid.decrypt_bytes(blob, sk, pp) == msg


def test_wrong_identity_fails_authentication(world):
    suite, mk, pp, rng = world
    ident = hash_identity(["corp", "eng"], suite.p)
    other = hash_identity(["corp", "hr"], suite.p)
    sk = scheme.keygen(other, mk, pp, rng)
    blob = hybrid.encrypt_bytes(ident, b"secret", pp, rng)
    with pytest.raises(hybrid.AuthenticationError):
        hybrid.decrypt_bytes(blob, sk, pp)


def test_ancestor_key_fails_authentication(world):
    # parent identities cannot open a child's ciphertext (they must delegate)
    suite, mk, pp, rng = world
    parent = hash_identity(["corp"], suite.p)
    child = hash_identity(["corp", "eng"], suite.p)
    sk = scheme.keygen(parent, mk, pp, rng)
    blob = hybrid.encrypt_bytes(child, b"secret", pp, rng)
    with pytest.raises(hybrid.AuthenticationError):
        hybrid.decrypt_bytes(blob, sk, pp)


def test_tampered_body_fails(world):
    suite, mk, pp, rng = world
    ident = hash_identity(["a"], suite.p)
    sk = scheme.keygen(ident, mk, pp, rng)
    blob = bytearray(hybrid.encrypt_bytes(ident, b"payload", pp, rng))
    blob[-1] ^= 1
    with pytest.raises(hybrid.AuthenticationError):
        hybrid.decrypt_bytes(bytes(blob), sk, pp)


def test_header_is_authenticated(world):
    # splicing a different encapsulation onto a body trips the tag check
    suite, mk, pp, rng = world
    ident = hash_identity(["a"], suite.p)
    sk = scheme.keygen(ident, mk, pp, rng)
    blob_a = hybrid.encrypt_bytes(ident, b"message one", pp, rng)
    blob_b = hybrid.encrypt_bytes(ident, b"message two", pp, rng)
    hlen = int.from_bytes(blob_a[5:9], "big")
    spliced = blob_b[: 9 + hlen] + blob_a[9 + hlen:]
    with pytest.raises(hybrid.AuthenticationError):
        hybrid.decrypt_bytes(spliced, sk, pp)


def test_container_validation(world):
    suite, mk, pp, rng = world
    sk = scheme.keygen((5,), mk, pp, rng)
    with pytest.raises(hybrid.HybridError):
        hybrid.decrypt_bytes(b"nope", sk, pp)
    with pytest.raises(hybrid.HybridError):
        hybrid.decrypt_bytes(b"AHCT" + bytes([9]) + bytes(8), sk, pp)


def test_container_layout(world):
    suite, _mk, pp, rng = world
    ident = hash_identity(["a"], suite.p)
    blob = hybrid.encrypt_bytes(ident, b"zz", pp, rng)
    assert blob[:4] == b"AHCT"
    assert blob[4] == 1
    hlen = int.from_bytes(blob[5:9], "big")
    assert len(blob) == 9 + hlen + 12 + 2 + 16  # nonce + body + GCM tag
