"""Semi-functional keys and ciphertexts: the dual-system proof machinery.

Nothing here belongs in a deployed system.  Every function needs the
TrapdoorTranscript that setup normally erases, and the objects produced
exist to let the test suite check the dual-system cancellation structure
as exact exponent equations on the mock backend:

* semi-functional ciphertexts still decrypt under normal keys;
* semi-functional keys still decrypt normal ciphertexts;
* a semi-functional ciphertext meeting a semi-functional key leaves a
  nonzero residual factor -- unless the key is *nominally* semi-functional
  (its z-exponent matches the ciphertext's), in which case decryption
  succeeds.

Type-1 keys reuse the same z-exponents in the decryption/delegation and
randomization triples; type-2 keys draw fresh ones for the randomization
triples.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .backend import G1Elem, G2Elem
from .scheme import (
    Ciphertext,
    PrivateKey,
    SchemeError,
    encrypt,
    keygen,
)

__all__ = [
    "SemiFunctionalParams",
    "SFKeyRandomness",
    "SFCiphertextRandomness",
    "sf_params",
    "keygen_sf1",
    "keygen_sf2",
    "nominal_sf1_keygen",
    "encrypt_sf",
    "decrypt_residual",
    "rerandomize_same_depth",
    "solve_key_exponents",
    "recover_sf_exponents",
]


@dataclass
class SemiFunctionalParams:
    y_f: int
    f: G1Elem
    f_hat: G2Elem
    nu: int
    phi2: int


@dataclass
class SFKeyRandomness:
    s_k1: int
    z_k1: int
    z_k2: dict  # level -> z, shared across both halves for type-1
    s_k2: int
    z_k3: Optional[int] = None  # type-2 only: fresh randomization exponents
    z_k4: Optional[dict] = None


@dataclass
class SFCiphertextRandomness:
    s_c: int
    z_c: int


def sf_params(transcript, suite, rng):
    """Draw y_f and derive the semi-functional generators f, f-hat.

    Draw order: y_f.  Records y_f back onto the transcript.
    """
    if transcript is None:
        raise SchemeError("semi-functional algorithms need a setup transcript")
    y_f = suite.random_scalar(rng)
    transcript.y_f = y_f
    return SemiFunctionalParams(
        y_f=y_f,
        f=suite.exp(suite.g1, y_f),
        f_hat=suite.exp(suite.g2, y_f),
        nu=transcript.nu,
        phi2=transcript.phi2,
    )


def _smear_triple(suite, sfp, triple, mass):
    """Multiply a key triple by (f-hat^-nu, f-hat, 1) raised to mass."""
    p = suite.p
    a = suite.exp(sfp.f_hat, (-sfp.nu * mass) % p)
    b = suite.exp(sfp.f_hat, mass % p)
    return (triple[0] * a, triple[1] * b, triple[2])


def _keygen_sf(identity, mk, pp, sfp, rng, type2, forced_z_k1=None):
    sk = keygen(identity, mk, pp, rng)
    suite = pp.suite
    m = sk.depth
    levels = range(m + 1, pp.l + 1)
    s_k1 = suite.random_scalar(rng)
    z_k1 = forced_z_k1 if forced_z_k1 is not None else suite.random_scalar(rng)
    z_k2 = {i: suite.random_scalar(rng) for i in levels}
    s_k2 = suite.random_scalar(rng)
    z_k3 = z_k4 = None
    if type2:
        z_k3 = suite.random_scalar(rng)
        z_k4 = {i: suite.random_scalar(rng) for i in levels}
    rz1 = z_k3 if type2 else z_k1
    rz2 = z_k4 if type2 else z_k2
    out = PrivateKey(
        suite=suite,
        l=sk.l,
        identity=sk.identity,
        k1=_smear_triple(suite, sfp, sk.k1, s_k1 * z_k1),
        k2=_smear_triple(suite, sfp, sk.k2, s_k1),
        kd={i: _smear_triple(suite, sfp, sk.kd[i], s_k1 * z_k2[i]) for i in sk.kd},
        r1=_smear_triple(suite, sfp, sk.r1, s_k2 * rz1),
        r2=_smear_triple(suite, sfp, sk.r2, s_k2),
        rd={i: _smear_triple(suite, sfp, sk.rd[i], s_k2 * rz2[i]) for i in sk.rd},
    )
    rand = SFKeyRandomness(
        s_k1=s_k1, z_k1=z_k1, z_k2=z_k2, s_k2=s_k2, z_k3=z_k3, z_k4=z_k4
    )
    return out, rand


def keygen_sf1(identity, mk, pp, sfp, rng):
    """Semi-functional type-1 key.

    Draw order: the normal keygen draws, then s_k1, z_k1, z_k2[m+1..l],
    s_k2.  The randomization triples reuse z_k1/z_k2.
    """
    return _keygen_sf(identity, mk, pp, sfp, rng, type2=False)


def keygen_sf2(identity, mk, pp, sfp, rng):
    """Semi-functional type-2 key.

    Draw order: as type-1, then fresh z_k3, z_k4[m+1..l] which replace
    z_k1/z_k2 inside the randomization triples.
    """
    return _keygen_sf(identity, mk, pp, sfp, rng, type2=True)


def nominal_sf1_keygen(identity, mk, pp, sfp, z_c, rng):
    """Type-1 key whose z_k1 is pinned to the given ciphertext exponent.

    Such a key decrypts a semi-functional ciphertext built with the same
    z_c exactly.  Draw order: normal keygen draws, then s_k1, z_k2[..],
    s_k2 (no z_k1 draw; it is supplied).
    """
    sk, _rand = _keygen_sf(
        identity, mk, pp, sfp, rng, type2=False, forced_z_k1=int(z_c) % pp.suite.p
    )
    return sk


def encrypt_sf(identity, message, pp, sfp, rng):
    """Semi-functional ciphertext.

    Draw order: the normal encrypt draw (t), then s_c, z_c.  Components
    c, c1[0], c2[0] are exactly the normal ones.
    """
    ct = encrypt(identity, message, pp, rng)
    suite = pp.suite
    p = suite.p
    s_c = suite.random_scalar(rng)
    z_c = suite.random_scalar(rng)
    f, nphi2 = sfp.f, (-sfp.phi2) % p
    out = Ciphertext(
        suite=suite,
        c=ct.c,
        c1=(
            ct.c1[0],
            ct.c1[1] * suite.exp(f, s_c),
            ct.c1[2] * suite.exp(f, nphi2 * s_c % p),
        ),
        c2=(
            ct.c2[0],
            ct.c2[1] * suite.exp(f, s_c * z_c % p),
            ct.c2[2] * suite.exp(f, nphi2 * s_c * z_c % p),
        ),
    )
    return out, SFCiphertextRandomness(s_c=s_c, z_c=z_c)


def decrypt_residual(ct, sk, pp, true_message):
    """decrypt(ct, sk) divided by the known plaintext: the leftover factor.

    Identity for all normal/semi-functional pairings except a
    semi-functional ciphertext against a (non-nominal) semi-functional
    key, where the exponent of the residual is the product of the
    semi-functional masses and the z-mismatch.
    """
    from .scheme import decrypt

    return decrypt(ct, sk, pp) * true_message.inv()


def rerandomize_same_depth(sk, pp, gamma, rng):
    """Mix the randomization triples into the key at the same depth.

    The mixing exponent gamma is supplied (the residual checks need it
    pinned); fresh public w-hat powers refresh every triple.  Draw order:
    delta1, delta2, delta3[m+1..l], gamma2, delta4, delta5, delta6[m+1..l].
    """
    suite = pp.suite
    delta1 = suite.random_scalar(rng)
    delta2 = suite.random_scalar(rng)
    delta3 = {i: suite.random_scalar(rng) for i in sk.kd}
    gamma2 = suite.random_scalar(rng)
    delta4 = suite.random_scalar(rng)
    delta5 = suite.random_scalar(rng)
    delta6 = {i: suite.random_scalar(rng) for i in sk.rd}
    w = (pp.w1, pp.w2, pp.w3)

    def mixed(lead, base, scale, fresh, k):
        out = suite.multi_exp([base, w[k]], [scale, fresh])
        return lead * out if lead is not None else out

    return PrivateKey(
        suite=suite,
        l=sk.l,
        identity=sk.identity,
        k1=tuple(mixed(sk.k1[k], sk.r1[k], gamma, delta1, k) for k in range(3)),
        k2=tuple(mixed(sk.k2[k], sk.r2[k], gamma, delta2, k) for k in range(3)),
        kd={
            i: tuple(
                mixed(sk.kd[i][k], sk.rd[i][k], gamma, delta3[i], k)
                for k in range(3)
            )
            for i in sk.kd
        },
        r1=tuple(mixed(None, sk.r1[k], gamma2, delta4, k) for k in range(3)),
        r2=tuple(mixed(None, sk.r2[k], gamma2, delta5, k) for k in range(3)),
        rd={
            i: tuple(
                mixed(None, sk.rd[i][k], gamma2, delta6[i], k) for k in range(3)
            )
            for i in sk.rd
        },
    )


def _logs(suite, triple):
    return tuple(suite.log(e) for e in triple)


def solve_key_exponents(sk, transcript, suite):
    """Recover (r1, r2, c1, c2, c3, c4, c5, c6) of a normal key; mock only.

    Solves the key-generation equations from the element discrete logs and
    the setup transcript, raising SchemeError if any residual is nonzero.
    A structurally valid delegated key solves just like a fresh one.
    """
    if suite.backend != "mock":
        raise SchemeError("exponent solving requires the mock backend")
    p = suite.p
    t = transcript
    y_w_inv = pow(t.y_w, -1, p)
    ident_sum = (t.y_h + sum(
        y * i for y, i in zip(t.y_u, sk.identity)
    )) % p

    def solve_triple(triple, base_exp, lead_exp=0):
        # triple = (lead * base^r * w1^c, w2^c, w3^c); returns (r-part, c)
        e1, e2, e3 = _logs(suite, triple)
        c = e3 * y_w_inv % p
        if e2 != t.y_w * t.phi2 * c % p:
            raise SchemeError("second triple component inconsistent")
        rpart = (e1 - lead_exp - t.y_w * t.phi1 * c) % p
        return rpart, c

    rp, c2 = solve_triple(sk.k2, 1)
    r1 = rp % p
    rp, c1 = solve_triple(sk.k1, ident_sum, lead_exp=t.alpha)
    if rp != ident_sum * r1 % p:
        raise SchemeError("decryption triple does not match key randomness")
    c3 = {}
    for i, triple in sk.kd.items():
        rp, c3[i] = solve_triple(triple, t.y_u[i - 1])
        if rp != t.y_u[i - 1] * r1 % p:
            raise SchemeError(f"delegation triple at level {i} inconsistent")
    rp, c5 = solve_triple(sk.r2, 1)
    r2 = rp % p
    rp, c4 = solve_triple(sk.r1, ident_sum)
    if rp != ident_sum * r2 % p:
        raise SchemeError("randomization triple does not match key randomness")
    c6 = {}
    for i, triple in sk.rd.items():
        rp, c6[i] = solve_triple(triple, t.y_u[i - 1])
        if rp != t.y_u[i - 1] * r2 % p:
            raise SchemeError(f"randomization triple at level {i} inconsistent")
    return {
        "r1": r1, "r2": r2, "c1": c1, "c2": c2, "c3": c3,
        "c4": c4, "c5": c5, "c6": c6,
    }


def recover_sf_exponents(sk, transcript, suite):
    """Recover semi-functional masses and z-exponents from a key; mock only.

    Returns (s_k1, z_dec, s_k2, z_rnd) where z_dec/z_rnd are the
    z-exponents seen by the decryption and randomization halves (equal for
    type-1 keys, independent for type-2).
    """
    if suite.backend != "mock":
        raise SchemeError("exponent recovery requires the mock backend")
    if transcript.y_f in (None, 0):
        raise SchemeError("transcript carries no usable y_f")
    p = suite.p
    t = transcript
    y_w_inv = pow(t.y_w, -1, p)
    y_f_inv = pow(t.y_f, -1, p)

    def mass(triple):
        # f-hat exponent hiding in the second component
        c = suite.log(triple[2]) * y_w_inv % p
        return (suite.log(triple[1]) - t.y_w * t.phi2 * c) * y_f_inv % p

    s_k1 = mass(sk.k2)
    s_k2 = mass(sk.r2)
    if s_k1 == 0 or s_k2 == 0:
        raise SchemeError("key has no semi-functional mass to recover")
    z_dec = mass(sk.k1) * pow(s_k1, -1, p) % p
    z_rnd = mass(sk.r1) * pow(s_k2, -1, p) % p
    return s_k1, z_dec, s_k2, z_rnd
