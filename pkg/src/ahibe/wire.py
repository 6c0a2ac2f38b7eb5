"""Binary file formats for keys, parameters and ciphertexts.

Every object starts with the magic ``AHIB``, a format version byte, the
backend tag, the maximum depth l (2 bytes big-endian) and the serialized
suite parameters, followed by the object payload: private keys carry
their identity as fixed-width scalars, then all objects list their group
elements length-prefixed, in the order the container types declare them.

Ciphertext files are constant-length for a given backend and l: seven
elements regardless of identity depth, so the encoding leaks neither the
payload nor how deep in the hierarchy the recipient sits.
"""

from __future__ import annotations

import io

from .backend import BackendError
from .scheme import Ciphertext, MasterKey, PrivateKey, PublicParams

__all__ = [
    "WireError",
    "dump_public_params",
    "load_public_params",
    "dump_master_key",
    "load_master_key",
    "dump_private_key",
    "load_private_key",
    "dump_ciphertext",
    "load_ciphertext",
]

MAGIC = b"AHIB"
VERSION = 1
BACKEND_TAGS = {"mock": 1, "bls12-381": 2}
TAG_BACKENDS = {v: k for k, v in BACKEND_TAGS.items()}


class WireError(ValueError):
    pass


def _scalar_size(suite):
    return (suite.p.bit_length() + 7) // 8


def _write_header(out, suite, l):
    out.write(MAGIC)
    out.write(bytes([VERSION, BACKEND_TAGS[suite.backend]]))
    out.write(l.to_bytes(2, "big"))
    params = suite.suite_params()
    out.write(len(params).to_bytes(2, "big"))
    out.write(params)


def _read_exact(buf, n, what):
    data = buf.read(n)
    if len(data) != n:
        raise WireError(f"truncated file while reading {what}")
    return data


def _read_header(buf):
    if _read_exact(buf, 4, "magic") != MAGIC:
        raise WireError("bad magic; not a key/parameter/ciphertext file")
    version, tag = _read_exact(buf, 2, "version")
    if version != VERSION:
        raise WireError(f"unsupported format version {version}")
    if tag not in TAG_BACKENDS:
        raise WireError(f"unknown backend tag {tag}")
    l = int.from_bytes(_read_exact(buf, 2, "depth"), "big")
    plen = int.from_bytes(_read_exact(buf, 2, "suite parameters"), "big")
    params = _read_exact(buf, plen, "suite parameters")
    backend = TAG_BACKENDS[tag]
    try:
        if backend == "mock":
            from .backend.mock import MockSuite

            suite = MockSuite.from_params(params)
        else:
            from .backend.concrete import Bls12381Suite

            suite = Bls12381Suite.from_params(params)
    except BackendError as exc:
        raise WireError(str(exc)) from None
    return suite, l


def _write_elem(out, suite, elem):
    data = suite.serialize_elem(elem)
    out.write(len(data).to_bytes(4, "big"))
    out.write(data)


def _read_elem(buf, suite, group):
    n = int.from_bytes(_read_exact(buf, 4, "element length"), "big")
    data = _read_exact(buf, n, "element")
    if n != suite.elem_size(group):
        raise WireError(f"wrong encoded size for a {group} element")
    try:
        return suite.deserialize_elem(group, data)
    except BackendError as exc:
        raise WireError(str(exc)) from None


def _write_triple(out, suite, triple):
    for e in triple:
        _write_elem(out, suite, e)


def _read_triple(buf, suite, group):
    return tuple(_read_elem(buf, suite, group) for _ in range(3))


def dump_public_params(pp):
    out = io.BytesIO()
    _write_header(out, pp.suite, pp.l)
    for e in (pp.g, pp.g_nu, pp.g_ntau, pp.h, pp.h_nu, pp.h_ntau):
        _write_elem(out, pp.suite, e)
    for triple in pp.u:
        _write_triple(out, pp.suite, triple)
    for e in (pp.w1, pp.w2, pp.w3, pp.omega):
        _write_elem(out, pp.suite, e)
    return out.getvalue()


def load_public_params(data):
    buf = io.BytesIO(data)
    suite, l = _read_header(buf)
    g, g_nu, g_ntau, h, h_nu, h_ntau = (
        _read_elem(buf, suite, "g1") for _ in range(6)
    )
    u = tuple(_read_triple(buf, suite, "g1") for _ in range(l))
    w1 = _read_elem(buf, suite, "g2")
    w2 = _read_elem(buf, suite, "g2")
    w3 = _read_elem(buf, suite, "g2")
    omega = _read_elem(buf, suite, "gt")
    _expect_eof(buf)
    return PublicParams(
        suite=suite, l=l, g=g, g_nu=g_nu, g_ntau=g_ntau,
        h=h, h_nu=h_nu, h_ntau=h_ntau, u=u, w1=w1, w2=w2, w3=w3, omega=omega,
    )


def dump_master_key(mk):
    out = io.BytesIO()
    _write_header(out, mk.suite, mk.l)
    for e in (mk.g_hat, mk.g_hat_alpha, mk.h_hat, *mk.u_hat):
        _write_elem(out, mk.suite, e)
    return out.getvalue()


def load_master_key(data):
    buf = io.BytesIO(data)
    suite, l = _read_header(buf)
    g_hat = _read_elem(buf, suite, "g2")
    g_hat_alpha = _read_elem(buf, suite, "g2")
    h_hat = _read_elem(buf, suite, "g2")
    u_hat = tuple(_read_elem(buf, suite, "g2") for _ in range(l))
    _expect_eof(buf)
    return MasterKey(
        suite=suite, l=l, g_hat=g_hat, g_hat_alpha=g_hat_alpha,
        h_hat=h_hat, u_hat=u_hat,
    )


def dump_private_key(sk):
    out = io.BytesIO()
    _write_header(out, sk.suite, sk.l)
    size = _scalar_size(sk.suite)
    out.write(len(sk.identity).to_bytes(2, "big"))
    for comp in sk.identity:
        out.write(int(comp).to_bytes(size, "big"))
    for triple in (sk.k1, sk.k2):
        _write_triple(out, sk.suite, triple)
    for level in sorted(sk.kd):
        _write_triple(out, sk.suite, sk.kd[level])
    for triple in (sk.r1, sk.r2):
        _write_triple(out, sk.suite, triple)
    for level in sorted(sk.rd):
        _write_triple(out, sk.suite, sk.rd[level])
    return out.getvalue()


def load_private_key(data):
    buf = io.BytesIO(data)
    suite, l = _read_header(buf)
    size = _scalar_size(suite)
    depth = int.from_bytes(_read_exact(buf, 2, "identity depth"), "big")
    if depth > l:
        raise WireError("key identity deeper than the declared maximum")
    identity = tuple(
        int.from_bytes(_read_exact(buf, size, "identity component"), "big")
        for _ in range(depth)
    )
    if any(not 0 < c < suite.p for c in identity):
        raise WireError("identity component outside the scalar range")
    k1 = _read_triple(buf, suite, "g2")
    k2 = _read_triple(buf, suite, "g2")
    kd = {i: _read_triple(buf, suite, "g2") for i in range(depth + 1, l + 1)}
    r1 = _read_triple(buf, suite, "g2")
    r2 = _read_triple(buf, suite, "g2")
    rd = {i: _read_triple(buf, suite, "g2") for i in range(depth + 1, l + 1)}
    _expect_eof(buf)
    return PrivateKey(
        suite=suite, l=l, identity=identity,
        k1=k1, k2=k2, kd=kd, r1=r1, r2=r2, rd=rd,
    )


def dump_ciphertext(ct):
    out = io.BytesIO()
    # the header's l is a property of the parameters, not of this payload;
    # ciphertexts do not reveal identity depth
    _write_header(out, ct.suite, 0)
    _write_elem(out, ct.suite, ct.c)
    _write_triple(out, ct.suite, ct.c1)
    _write_triple(out, ct.suite, ct.c2)
    return out.getvalue()


def load_ciphertext(data):
    buf = io.BytesIO(data)
    suite, _l = _read_header(buf)
    c = _read_elem(buf, suite, "gt")
    c1 = _read_triple(buf, suite, "g1")
    c2 = _read_triple(buf, suite, "g1")
    _expect_eof(buf)
    return Ciphertext(suite=suite, c=c, c1=c1, c2=c2)


def _expect_eof(buf):
    if buf.read(1):
        raise WireError("trailing data after the expected payload")
