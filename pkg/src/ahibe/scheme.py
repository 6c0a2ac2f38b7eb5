"""Anonymous hierarchical IBE over an asymmetric bilinear group suite.

The five algorithms (setup, keygen, delegate, encrypt, decrypt) work over
any :class:`~ahibe.backend.GroupSuite`.  Ciphertexts are constant size:
six source-group elements plus one target-group element, independent of
the identity depth, so neither the payload nor the recipient path length
is visible from the wire format.

Conventions used throughout:

* identities are tuples of scalars in Z_p^* (the CLI maps labels to
  scalars; depth 0 -- the empty tuple -- is accepted by the core as the
  root identity so the benchmark grid can exercise d = 0);
* every function that takes ``rng`` draws scalars with
  ``suite.random_scalar`` in the documented order, which is what lets the
  test suite inject scripted randomness;
* the operation strategy is fixed (see each function) so that the cost
  model in :mod:`ahibe.costs` can pin exact operation counts.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .backend import G1Elem, G2Elem, GTElem, GroupSuite

__all__ = [
    "SchemeError",
    "PublicParams",
    "MasterKey",
    "TrapdoorTranscript",
    "PrivateKey",
    "Ciphertext",
    "setup",
    "keygen",
    "delegate",
    "encrypt",
    "decrypt",
    "normalize_identity",
]


class SchemeError(ValueError):
    """Invalid inputs to a scheme algorithm (depth, prefix, structure)."""


Triple = tuple


@dataclass(frozen=True)
class PublicParams:
    suite: GroupSuite
    l: int
    g: G1Elem
    g_nu: G1Elem
    g_ntau: G1Elem
    h: G1Elem
    h_nu: G1Elem
    h_ntau: G1Elem
    u: tuple  # per level: (u_i, u_i^nu, u_i^-tau)
    w1: G2Elem  # w-hat^phi1
    w2: G2Elem  # w-hat^phi2
    w3: G2Elem  # w-hat
    omega: GTElem


@dataclass(frozen=True)
class MasterKey:
    suite: GroupSuite
    l: int
    g_hat: G2Elem
    g_hat_alpha: G2Elem
    h_hat: G2Elem
    u_hat: tuple


@dataclass
class TrapdoorTranscript:
    """Setup exponents retained for the test harness only.

    Holding these values breaks anonymity (and with alpha, all security),
    which is why setup erases them unless explicitly asked.  y_f is filled
    in by the semi-functional lab.
    """

    nu: int
    phi1: int
    phi2: int
    tau: int
    alpha: int
    y_h: int
    y_u: tuple
    y_w: int
    y_f: Optional[int] = None


@dataclass(frozen=True)
class PrivateKey:
    suite: GroupSuite
    l: int
    identity: tuple
    k1: Triple  # decryption triple carrying the master secret
    k2: Triple  # decryption triple carrying the key randomness
    kd: dict  # delegation triples, keyed by level m+1..l
    r1: Triple  # randomization mirror of k1 (without the master secret)
    r2: Triple
    rd: dict

    @property
    def depth(self):
        return len(self.identity)

    def element_count(self):
        return 6 * (2 + self.l - self.depth)


@dataclass(frozen=True)
class Ciphertext:
    suite: GroupSuite
    c: GTElem
    c1: Triple  # three source-group elements tied to (1, nu, -tau)
    c2: Triple  # three source-group elements tied to the identity product


def normalize_identity(components, p, l, allow_empty=True):
    """Reduce components mod p, enforcing nonzero entries and depth <= l."""
    ident = tuple(int(i) % p for i in components)
    if not allow_empty and len(ident) == 0:
        raise SchemeError("identity must have at least one component")
    if len(ident) > l:
        raise SchemeError(f"identity depth {len(ident)} exceeds maximum {l}")
    if any(i == 0 for i in ident):
        raise SchemeError("identity components must be nonzero mod p")
    return ident


def setup(suite, l, rng, with_transcript=False):
    """Generate a master key and public parameters for max depth l.

    Draw order: nu, phi1, phi2, y_h, y_u[1..l], y_w, alpha.

    Fixed strategy: every public G element is a single exponentiation of
    the G generator (exponent arithmetic happens mod p first), every
    master-key element one exponentiation of the G-hat generator, and the
    pairing constant is one pairing -- (3l+5, l+5, 1) operations.
    """
    if l < 1:
        raise SchemeError("maximum depth must be at least 1")
    p = suite.p
    nu = suite.random_scalar(rng)
    phi1 = suite.random_scalar(rng)
    phi2 = suite.random_scalar(rng)
    tau = (phi1 + nu * phi2) % p
    y_h = suite.random_scalar(rng)
    y_u = tuple(suite.random_scalar(rng) for _ in range(l))
    y_w = suite.random_scalar(rng)
    alpha = suite.random_scalar(rng)

    g = suite.g1
    g_hat = suite.g2
    exp = suite.exp
    g_hat_alpha = exp(g_hat, alpha)
    mk = MasterKey(
        suite=suite,
        l=l,
        g_hat=g_hat,
        g_hat_alpha=g_hat_alpha,
        h_hat=exp(g_hat, y_h),
        u_hat=tuple(exp(g_hat, y) for y in y_u),
    )
    pp = PublicParams(
        suite=suite,
        l=l,
        g=g,
        g_nu=exp(g, nu),
        g_ntau=exp(g, (-tau) % p),
        h=exp(g, y_h),
        h_nu=exp(g, y_h * nu % p),
        h_ntau=exp(g, (-y_h * tau) % p),
        u=tuple(
            (
                exp(g, y),
                exp(g, y * nu % p),
                exp(g, (-y * tau) % p),
            )
            for y in y_u
        ),
        w1=exp(g_hat, y_w * phi1 % p),
        w2=exp(g_hat, y_w * phi2 % p),
        w3=exp(g_hat, y_w),
        omega=suite.pair(g, g_hat_alpha),
    )
    transcript = None
    if with_transcript:
        transcript = TrapdoorTranscript(
            nu=nu, phi1=phi1, phi2=phi2, tau=tau, alpha=alpha,
            y_h=y_h, y_u=y_u, y_w=y_w,
        )
    return mk, pp, transcript


def _identity_product_g2(mk, identity, suite):
    # h-hat * prod u-hat_i^{I_i} as one (d+1)-term multi-exponentiation
    if not identity:
        return mk.h_hat
    bases = [mk.h_hat] + [mk.u_hat[i] for i in range(len(identity))]
    return suite.multi_exp(bases, [1] + list(identity))


def _block(suite, w_triple, base, r, c, lead=None):
    # (lead * base^r * W1^c, W2^c, W3^c): one 2-term multi-exp + two exps
    first = suite.multi_exp([base, w_triple[0]], [r, c])
    if lead is not None:
        first = lead * first
    return (first, suite.exp(w_triple[1], c), suite.exp(w_triple[2], c))


def keygen(identity, mk, pp, rng):
    """Generate a private key for the given identity.

    Draw order: r1, c1, c2, c3[m+1..l], r2, c4, c5, c6[m+1..l].

    Fixed strategy per key: one (d+1)-term multi-exp for the identity
    product (absent at depth 0), then per triple one 2-term multi-exp and
    two single exponentiations, all in G-hat.
    """
    suite = pp.suite
    if mk.l != pp.l or mk.suite.backend != suite.backend:
        raise SchemeError("master key and parameters do not match")
    identity = normalize_identity(identity, suite.p, pp.l)
    m = len(identity)
    r1 = suite.random_scalar(rng)
    c1 = suite.random_scalar(rng)
    c2 = suite.random_scalar(rng)
    c3 = {i: suite.random_scalar(rng) for i in range(m + 1, pp.l + 1)}
    r2 = suite.random_scalar(rng)
    c4 = suite.random_scalar(rng)
    c5 = suite.random_scalar(rng)
    c6 = {i: suite.random_scalar(rng) for i in range(m + 1, pp.l + 1)}

    w = (pp.w1, pp.w2, pp.w3)
    a = _identity_product_g2(mk, identity, suite)
    return PrivateKey(
        suite=suite,
        l=pp.l,
        identity=identity,
        k1=_block(suite, w, a, r1, c1, lead=mk.g_hat_alpha),
        k2=_block(suite, w, mk.g_hat, r1, c2),
        kd={i: _block(suite, w, mk.u_hat[i - 1], r1, c3[i]) for i in c3},
        r1=_block(suite, w, a, r2, c4),
        r2=_block(suite, w, mk.g_hat, r2, c5),
        rd={i: _block(suite, w, mk.u_hat[i - 1], r2, c6[i]) for i in c6},
    )


def delegate(identity, sk, pp, rng):
    """Extend a depth-m key by one level to the given depth-(m+1) identity.

    Draw order: gamma1, delta1, delta2, delta3[m+2..l], gamma2, delta4,
    delta5, delta6[m+2..l].

    The key is privately re-randomized: the randomization triples are
    mixed into the decryption/delegation triples (gamma1) and rescaled
    (gamma2), and every triple is refreshed with public w-hat powers, so
    the output is distributed exactly like a fresh key for the new
    identity.  Fixed strategy: six single exponentiations (the two
    level-component liftings) plus one 2-term multi-exp per produced
    component, all in G-hat.
    """
    suite = pp.suite
    if sk.l != pp.l or sk.suite.backend != suite.backend:
        raise SchemeError("private key and parameters do not match")
    identity = normalize_identity(identity, suite.p, pp.l, allow_empty=False)
    m = sk.depth
    if len(identity) != m + 1:
        raise SchemeError("delegation extends the identity by exactly one level")
    if identity[:m] != sk.identity:
        raise SchemeError("existing key identity is not a prefix of the target")
    level = m + 1
    comp = identity[m]

    gamma1 = suite.random_scalar(rng)
    delta1 = suite.random_scalar(rng)
    delta2 = suite.random_scalar(rng)
    delta3 = {i: suite.random_scalar(rng) for i in range(level + 1, pp.l + 1)}
    gamma2 = suite.random_scalar(rng)
    delta4 = suite.random_scalar(rng)
    delta5 = suite.random_scalar(rng)
    delta6 = {i: suite.random_scalar(rng) for i in range(level + 1, pp.l + 1)}

    w = (pp.w1, pp.w2, pp.w3)
    exp = suite.exp
    mexp = suite.multi_exp
    # lift the consumed level into the identity products
    e = tuple(exp(sk.rd[level][k], comp) for k in range(3))
    v = tuple(sk.r1[k] * e[k] for k in range(3))
    f = tuple(exp(sk.kd[level][k], comp) for k in range(3))

    def mixed(lead, base, scale, fresh, k):
        out = mexp([base, w[k]], [scale, fresh])
        return lead * out if lead is not None else out

    k1 = tuple(mixed(sk.k1[k] * f[k], v[k], gamma1, delta1, k) for k in range(3))
    k2 = tuple(mixed(sk.k2[k], sk.r2[k], gamma1, delta2, k) for k in range(3))
    kd = {
        i: tuple(
            mixed(sk.kd[i][k], sk.rd[i][k], gamma1, delta3[i], k) for k in range(3)
        )
        for i in delta3
    }
    r1 = tuple(mixed(None, v[k], gamma2, delta4, k) for k in range(3))
    r2 = tuple(mixed(None, sk.r2[k], gamma2, delta5, k) for k in range(3))
    rd = {
        i: tuple(
            mixed(None, sk.rd[i][k], gamma2, delta6[i], k) for k in range(3)
        )
        for i in delta6
    }
    return PrivateKey(
        suite=suite, l=pp.l, identity=identity,
        k1=k1, k2=k2, kd=kd, r1=r1, r2=r2, rd=rd,
    )


def encrypt(identity, message, pp, rng):
    """Encrypt a target-group message to an identity.

    Draw order: t (single exponent shared by all seven components).

    Fixed strategy: three single G exponentiations for the components
    tied to (1, nu, -tau), one (d+1)-term multi-exp plus one single G
    exponentiation for each of the three identity-product components, and
    one GT exponentiation for the masked payload.
    """
    suite = pp.suite
    identity = normalize_identity(identity, suite.p, pp.l)
    if not isinstance(message, GTElem):
        raise SchemeError("message must be a target-group element")
    t = suite.random_scalar(rng)
    exp = suite.exp
    n = len(identity)
    if n == 0:
        prods = (pp.h, pp.h_nu, pp.h_ntau)
    else:
        scalars = [1] + list(identity)
        prods = tuple(
            suite.multi_exp(
                [(pp.h, pp.h_nu, pp.h_ntau)[k]]
                + [pp.u[i][k] for i in range(n)],
                scalars,
            )
            for k in range(3)
        )
    return Ciphertext(
        suite=suite,
        c=exp(pp.omega, t) * message,
        c1=(exp(pp.g, t), exp(pp.g_nu, t), exp(pp.g_ntau, t)),
        c2=tuple(exp(prods[k], t) for k in range(3)),
    )


def decrypt(ct, sk, pp):
    """Recover the message; exactly two 3-term multi-pairings.

    If the ciphertext identity differs from the key identity the output
    is a (with overwhelming probability) wrong target-group element, not
    an error: the raw element comes back and detecting the mismatch is
    the caller's job (the CLI does it via authenticated encryption).
    """
    suite = pp.suite
    if not isinstance(ct, Ciphertext) or len(ct.c1) != 3 or len(ct.c2) != 3:
        raise SchemeError("malformed ciphertext")
    if not isinstance(sk, PrivateKey) or len(sk.k1) != 3 or len(sk.k2) != 3:
        raise SchemeError("malformed private key")
    if ct.suite.backend != suite.backend or sk.suite.backend != suite.backend:
        raise SchemeError("ciphertext/key/parameter backend mismatch")
    e1 = suite.multi_pair(list(ct.c1), list(sk.k1))
    e2 = suite.multi_pair(list(ct.c2), list(sk.k2))
    return ct.c * e1.inv() * e2
