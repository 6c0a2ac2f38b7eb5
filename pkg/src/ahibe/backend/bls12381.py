"""BLS12-381 arithmetic provider: fields, curve groups, and the ate pairing.

This module is the low-level arithmetic layer behind the concrete backend.
Everything is written against gmpy2 integers for speed; elements of the
extension tower are plain tuples so the hot paths stay allocation-light.

Tower:  Fq2 = Fq[u]/(u^2 + 1)          elements (a, b) = a + b*u
        Fq6 = Fq2[v]/(v^3 - xi)        xi = 1 + u, elements (c0, c1, c2)
        Fq12 = Fq6[w]/(w^2 - v)        elements (d0, d1)

G1 is E(Fq): y^2 = x^3 + 4, G2 is E'(Fq2): y^2 = x^3 + 4*xi (the sextic
twist), points are affine (x, y) tuples or None for the identity.  Scalar
multiplication uses GLV (G1) and the 4-way Frobenius decomposition (G2);
the pairing is the optimal ate pairing with the standard x-chain final
exponentiation (which computes the cube of the canonical pairing -- still
bilinear and non-degenerate since gcd(3, r) = 1).
"""

from gmpy2 import mpz, invert

# Field modulus, subgroup order, BLS parameter.
Q = mpz(0x1A0111EA397FE69A4B1BA7B6434BACD764774B84F38512BF6730D2A0F6B0F6241EABFFFEB153FFFFB9FEFFFFFFFFAAAB)
R = mpz(0x73EDA753299D7D483339D80809A1D80553BDA402FFFE5BFEFFFFFFFF00000001)
X_PARAM = -0xD201000000010000
X_ABS = mpz(-X_PARAM)
X_BITS = bin(X_ABS)[3:]  # msb-first bits of |x| below the leading one

# Generators (standard, cf. the zkcrypto/supranational parameter files).
G1_GEN = (
    mpz(0x17F1D3A73197D7942695638C4FA9AC0FC3688C4F9774B905A14E3A3F171BAC586C55E83FF97A1AEFFB3AF00ADB22C6BB),
    mpz(0x08B3F481E3AAA0F1A09E30ED741D8AE4FCF5E095D5D00AF600DB18CB2C04B3EDD03CC744A2888AE40CAA232946C5E7E1),
)
G2_GEN = (
    (
        mpz(352701069587466618187139116011060144890029952792775240219908644239793785735715026873347600343865175952761926303160),
        mpz(3059144344244213709971259814753781636986470325476647558659373206291635324768958432433509563104347017837885763365758),
    ),
    (
        mpz(1985150602287291935568054521177171638300868978215655730859378665066344726373823718423869104263333984641494340347905),
        mpz(927553665492332455747201965776037880757740193453592970025027978793976877002675564980949289727957565575433344219582),
    ),
)

ZERO = mpz(0)
ONE = mpz(1)


# ---------------------------------------------------------------------------
# Fq2

F2_ZERO = (ZERO, ZERO)
F2_ONE = (ONE, ZERO)


def f2_add(x, y):
    return ((x[0] + y[0]) % Q, (x[1] + y[1]) % Q)


def f2_sub(x, y):
    return ((x[0] - y[0]) % Q, (x[1] - y[1]) % Q)


def f2_neg(x):
    return ((-x[0]) % Q, (-x[1]) % Q)


def f2_conj(x):
    return (x[0], (-x[1]) % Q)


def f2_mul(x, y):
    a, b = x
    c, d = y
    ac = a * c
    bd = b * d
    return ((ac - bd) % Q, ((a + b) * (c + d) - ac - bd) % Q)


def f2_sqr(x):
    a, b = x
    return ((a + b) * (a - b) % Q, (a * b << 1) % Q)


def f2_scale(x, s):
    return (x[0] * s % Q, x[1] * s % Q)


def f2_mul_xi(x):
    # multiply by xi = 1 + u
    a, b = x
    return ((a - b) % Q, (a + b) % Q)


def f2_inv(x):
    a, b = x
    n = invert(a * a + b * b, Q)
    return (a * n % Q, (-b * n) % Q)


def f2_pow(x, e):
    out = F2_ONE
    for bit in bin(e)[2:]:
        out = f2_sqr(out)
        if bit == "1":
            out = f2_mul(out, x)
    return out


def f2_sqrt(x):
    # sqrt in Fq2 for q = 3 mod 4; returns None for non-squares
    a1 = f2_pow(x, (Q - 3) // 4)
    x0 = f2_mul(a1, x)
    alpha = f2_mul(a1, x0)
    if alpha == ((Q - 1) % Q, ZERO):
        cand = (((-x0[1]) % Q), x0[0])  # u * x0
    else:
        b = f2_pow(f2_add(F2_ONE, alpha), (Q - 1) // 2)
        cand = f2_mul(b, x0)
    if f2_sqr(cand) != x:
        return None
    return cand


XI = (ONE, ONE)


# ---------------------------------------------------------------------------
# Fq6

F6_ZERO = (F2_ZERO, F2_ZERO, F2_ZERO)
F6_ONE = (F2_ONE, F2_ZERO, F2_ZERO)


def f6_add(x, y):
    return (f2_add(x[0], y[0]), f2_add(x[1], y[1]), f2_add(x[2], y[2]))


def f6_sub(x, y):
    return (f2_sub(x[0], y[0]), f2_sub(x[1], y[1]), f2_sub(x[2], y[2]))


def f6_neg(x):
    return (f2_neg(x[0]), f2_neg(x[1]), f2_neg(x[2]))


def f6_mul(x, y):
    a0, a1, a2 = x
    b0, b1, b2 = y
    m0 = f2_mul(a0, b0)
    m1 = f2_mul(a1, b1)
    m2 = f2_mul(a2, b2)
    t0 = f2_sub(f2_sub(f2_mul(f2_add(a1, a2), f2_add(b1, b2)), m1), m2)
    t1 = f2_sub(f2_sub(f2_mul(f2_add(a0, a1), f2_add(b0, b1)), m0), m1)
    t2 = f2_sub(f2_sub(f2_mul(f2_add(a0, a2), f2_add(b0, b2)), m0), m2)
    return (f2_add(m0, f2_mul_xi(t0)), f2_add(t1, f2_mul_xi(m2)), f2_add(t2, m1))


def f6_sqr(x):
    a0, a1, a2 = x
    s0 = f2_sqr(a0)
    t1 = f2_mul(a0, a1)
    s1 = f2_add(t1, t1)
    s2 = f2_sqr(f2_add(f2_sub(a0, a1), a2))
    t3 = f2_mul(a1, a2)
    s3 = f2_add(t3, t3)
    s4 = f2_sqr(a2)
    return (
        f2_add(s0, f2_mul_xi(s3)),
        f2_add(s1, f2_mul_xi(s4)),
        f2_sub(f2_add(f2_add(s1, s2), s3), f2_add(s0, s4)),
    )


def f6_mul_v(x):
    # multiply by v
    return (f2_mul_xi(x[2]), x[0], x[1])


def f6_inv(x):
    a0, a1, a2 = x
    c0 = f2_sub(f2_sqr(a0), f2_mul_xi(f2_mul(a1, a2)))
    c1 = f2_sub(f2_mul_xi(f2_sqr(a2)), f2_mul(a0, a1))
    c2 = f2_sub(f2_sqr(a1), f2_mul(a0, a2))
    t = f2_add(f2_mul(a0, c0), f2_mul_xi(f2_add(f2_mul(a2, c1), f2_mul(a1, c2))))
    ti = f2_inv(t)
    return (f2_mul(c0, ti), f2_mul(c1, ti), f2_mul(c2, ti))


def f6_scale2(x, s):
    # multiply by an Fq2 scalar
    return (f2_mul(x[0], s), f2_mul(x[1], s), f2_mul(x[2], s))


# ---------------------------------------------------------------------------
# Fq12

F12_ONE = (F6_ONE, F6_ZERO)


def _f6_mul_flat(a, b):
    # fully inlined Karatsuba-3 over inlined Fq2 karatsuba; 18 base mults
    (a00, a01), (a10, a11), (a20, a21) = a
    (b00, b01), (b10, b11), (b20, b21) = b
    # m0 = a0*b0, m1 = a1*b1, m2 = a2*b2 (unreduced parts kept as ints)
    p = a00 * b00
    q_ = a01 * b01
    m00 = p - q_
    m01 = (a00 + a01) * (b00 + b01) - p - q_
    p = a10 * b10
    q_ = a11 * b11
    m10 = p - q_
    m11 = (a10 + a11) * (b10 + b11) - p - q_
    p = a20 * b20
    q_ = a21 * b21
    m20 = p - q_
    m21 = (a20 + a21) * (b20 + b21) - p - q_
    # t0 = (a1+a2)(b1+b2) - m1 - m2
    s0, s1 = a10 + a20, a11 + a21
    t0_, t1_ = b10 + b20, b11 + b21
    p = s0 * t0_
    q_ = s1 * t1_
    t00 = p - q_ - m10 - m20
    t01 = (s0 + s1) * (t0_ + t1_) - p - q_ - m11 - m21
    # t1 = (a0+a1)(b0+b1) - m0 - m1
    s0, s1 = a00 + a10, a01 + a11
    t0_, t1_ = b00 + b10, b01 + b11
    p = s0 * t0_
    q_ = s1 * t1_
    u00 = p - q_ - m00 - m10
    u01 = (s0 + s1) * (t0_ + t1_) - p - q_ - m01 - m11
    # t2 = (a0+a2)(b0+b2) - m0 - m2
    s0, s1 = a00 + a20, a01 + a21
    t0_, t1_ = b00 + b20, b01 + b21
    p = s0 * t0_
    q_ = s1 * t1_
    v00 = p - q_ - m00 - m20
    v01 = (s0 + s1) * (t0_ + t1_) - p - q_ - m01 - m21
    # r0 = m0 + xi*t0 ; r1 = t1 + xi*m2 ; r2 = t2 + m1   (xi*(x,y) = (x-y, x+y))
    return (
        ((m00 + t00 - t01) % Q, (m01 + t00 + t01) % Q),
        ((u00 + m20 - m21) % Q, (u01 + m20 + m21) % Q),
        ((v00 + m10) % Q, (v01 + m11) % Q),
    )


def f12_mul(x, y):
    a0, a1 = x
    b0, b1 = y
    m0 = _f6_mul_flat(a0, b0)
    m1 = _f6_mul_flat(a1, b1)
    t = _f6_mul_flat(
        (f2_add(a0[0], a1[0]), f2_add(a0[1], a1[1]), f2_add(a0[2], a1[2])),
        (f2_add(b0[0], b1[0]), f2_add(b0[1], b1[1]), f2_add(b0[2], b1[2])),
    )
    vm1 = (f2_mul_xi(m1[2]), m1[0], m1[1])
    return (
        (f2_add(m0[0], vm1[0]), f2_add(m0[1], vm1[1]), f2_add(m0[2], vm1[2])),
        (
            f2_sub(f2_sub(t[0], m0[0]), m1[0]),
            f2_sub(f2_sub(t[1], m0[1]), m1[1]),
            f2_sub(f2_sub(t[2], m0[2]), m1[2]),
        ),
    )


def f12_sqr(x):
    a0, a1 = x
    m = _f6_mul_flat(a0, a1)
    va1 = (f2_mul_xi(a1[2]), a1[0], a1[1])
    s = _f6_mul_flat(
        (f2_add(a0[0], a1[0]), f2_add(a0[1], a1[1]), f2_add(a0[2], a1[2])),
        (f2_add(a0[0], va1[0]), f2_add(a0[1], va1[1]), f2_add(a0[2], va1[2])),
    )
    vm = (f2_mul_xi(m[2]), m[0], m[1])
    return (
        (
            f2_sub(f2_sub(s[0], m[0]), vm[0]),
            f2_sub(f2_sub(s[1], m[1]), vm[1]),
            f2_sub(f2_sub(s[2], m[2]), vm[2]),
        ),
        (f2_add(m[0], m[0]), f2_add(m[1], m[1]), f2_add(m[2], m[2])),
    )


def f12_conj(x):
    # q^6-power; the inverse on unitary elements
    return (x[0], f6_neg(x[1]))


def f12_inv(x):
    a0, a1 = x
    d = f6_inv(f6_sub(f6_sqr(a0), f6_mul_v(f6_sqr(a1))))
    return (f6_mul(a0, d), f6_neg(f6_mul(a1, d)))


def f12_eq_one(x):
    return x == F12_ONE


# Frobenius constants: gamma[i] = xi^(i*(q-1)/6) scales the coefficient of w^i.
_G = [f2_pow(XI, i * (Q - 1) // 6) for i in range(6)]


def f12_frob(x):
    (c0, c1, c2), (c3, c4, c5) = x
    # coefficients of w^0..w^5 are c0, c3, c1, c4, c2, c5
    return (
        (
            f2_conj(c0),
            f2_mul(f2_conj(c1), _G[2]),
            f2_mul(f2_conj(c2), _G[4]),
        ),
        (
            f2_mul(f2_conj(c3), _G[1]),
            f2_mul(f2_conj(c4), _G[3]),
            f2_mul(f2_conj(c5), _G[5]),
        ),
    )


def f12_frob2(x):
    return f12_frob(f12_frob(x))


def _f4_sqr(a, b):
    # square a + b*t with t^2 = xi (Fq4 arithmetic over Fq2)
    t0 = f2_sqr(a)
    t1 = f2_sqr(b)
    return (f2_add(t0, f2_mul_xi(t1)), f2_sub(f2_sub(f2_sqr(f2_add(a, b)), t0), t1))


def f12_cyclo_sqr(x):
    # Granger-Scott squaring; valid only in the cyclotomic subgroup
    (c0, c1, c2), (c3, c4, c5) = x
    a0, a1 = c0
    b0, b1 = c4
    p = (a0 + a1) * (a0 - a1)
    q_ = (a0 * a1) << 1
    s = (b0 + b1) * (b0 - b1)
    t = (b0 * b1) << 1
    r00 = (p + s - t) % Q            # sq(c0) + xi*sq(c4), real
    r01 = (q_ + s + t) % Q           # imag
    e0, e1 = a0 + b0, a1 + b1
    r10 = ((e0 + e1) * (e0 - e1) - p - s) % Q
    r11 = (((e0 * e1) << 1) - q_ - t) % Q
    a0, a1 = c3
    b0, b1 = c2
    p = (a0 + a1) * (a0 - a1)
    q_ = (a0 * a1) << 1
    s = (b0 + b1) * (b0 - b1)
    t = (b0 * b1) << 1
    s00 = (p + s - t) % Q
    s01 = (q_ + s + t) % Q
    e0, e1 = a0 + b0, a1 + b1
    s10 = ((e0 + e1) * (e0 - e1) - p - s) % Q
    s11 = (((e0 * e1) << 1) - q_ - t) % Q
    a0, a1 = c1
    b0, b1 = c5
    p = (a0 + a1) * (a0 - a1)
    q_ = (a0 * a1) << 1
    s = (b0 + b1) * (b0 - b1)
    t = (b0 * b1) << 1
    u00 = (p + s - t) % Q
    u01 = (q_ + s + t) % Q
    e0, e1 = a0 + b0, a1 + b1
    u10 = ((e0 + e1) * (e0 - e1) - p - s) % Q
    u11 = (((e0 * e1) << 1) - q_ - t) % Q
    # new coefficients: 3*sq -/+ 2*old, with xi folded in for the c3 slot
    xu0 = u10 - u11
    xu1 = u10 + u11
    return (
        (
            ((3 * r00 - 2 * c0[0]) % Q, (3 * r01 - 2 * c0[1]) % Q),
            ((3 * s00 - 2 * c1[0]) % Q, (3 * s01 - 2 * c1[1]) % Q),
            ((3 * u00 - 2 * c2[0]) % Q, (3 * u01 - 2 * c2[1]) % Q),
        ),
        (
            ((3 * xu0 + 2 * c3[0]) % Q, (3 * xu1 + 2 * c3[1]) % Q),
            ((3 * r10 + 2 * c4[0]) % Q, (3 * r11 + 2 * c4[1]) % Q),
            ((3 * s10 + 2 * c5[0]) % Q, (3 * s11 + 2 * c5[1]) % Q),
        ),
    )


def f12_pow_x(x):
    # x^(BLS parameter) for unitary x; the parameter is negative
    out = x
    for bit in X_BITS:
        out = f12_cyclo_sqr(out)
        if bit == "1":
            out = f12_mul(out, x)
    return f12_conj(out)


def final_exponentiation(f):
    # easy part: f^((q^6-1)(q^2+1))
    f = f12_mul(f12_conj(f), f12_inv(f))
    f = f12_mul(f12_frob2(f), f)
    # hard part, computing f^(3(q^4-q^2+1)/r) via
    #   (x-1)^2 (x+q) (x^2+q^2-1) + 3
    m = f
    a = f12_mul(f12_pow_x(m), f12_conj(m))
    a = f12_mul(f12_pow_x(a), f12_conj(a))
    a = f12_mul(f12_pow_x(a), f12_frob(a))
    a = f12_mul(
        f12_pow_x(f12_pow_x(a)),
        f12_mul(f12_frob2(a), f12_conj(a)),
    )
    m3 = f12_mul(f12_cyclo_sqr(m), m)
    return f12_mul(a, m3)


def gt_pow(z, k):
    # exponentiation in the cyclotomic subgroup via the Frobenius
    # decomposition k = sum k_j x^j (z^q = z^x there) and shared squarings
    k = int(k) % R
    if k == 0:
        return F12_ONE
    minis = []
    base_table = [z]  # odd powers z, z^3, z^5, z^7
    z2 = f12_cyclo_sqr(z)
    for _ in range(3):
        base_table.append(f12_mul(base_table[-1], z2))
    tables = [base_table]
    for _ in range(3):
        tables.append([f12_frob(e) for e in tables[-1]])
    for j, kj in enumerate(_gls_split(k)):
        if kj:
            minis.append((j, _wnaf(abs(kj), _WNAF_W), 1 if kj > 0 else -1))
    if not minis:
        return F12_ONE
    top = max(len(d) for _j, d, _s in minis)
    out = F12_ONE
    started = False
    for pos in range(top - 1, -1, -1):
        if started:
            out = f12_cyclo_sqr(out)
        for j, digits, sign in minis:
            if pos < len(digits) and digits[pos]:
                d = digits[pos] * sign
                e = tables[j][(abs(d) - 1) // 2]
                out = f12_mul(out, e if d > 0 else f12_conj(e))
                started = True
    return out


def gt_in_cyclotomic(z):
    # z^(q^4 - q^2 + 1) == 1, i.e. frob^4(z) * z == frob^2(z)
    return f12_mul(f12_frob2(f12_frob2(z)), z) == f12_frob2(z)


def gt_in_subgroup(z):
    # full order-r check: z^r = z^(x^4) * z^(-x^2) * z == 1; requires the
    # cyclotomic property first (pow_x relies on unitarity)
    if not gt_in_cyclotomic(z):
        return False
    zx2 = f12_pow_x(f12_pow_x(z))
    zx4 = f12_pow_x(f12_pow_x(zx2))
    return f12_mul(f12_mul(zx4, f12_conj(zx2)), z) == F12_ONE


# ---------------------------------------------------------------------------
# G1: curve y^2 = x^3 + 4 over Fq; affine points (x, y), None = identity.

B_G1 = mpz(4)

# Cube root of unity giving the endomorphism (x, y) -> (BETA*x, y) that acts
# as multiplication by -x^2 mod r on G1 (checked in the test suite).
BETA_G1 = mpz(0x5F19672FDF76CE51BA69C6076A0F77EADDB3A93BE6F89688DE17D813620A00022E01FFFFFFFEFFFE)


def g1_on_curve(p):
    if p is None:
        return True
    x, y = p
    return (y * y - (x * x % Q) * x - B_G1) % Q == 0


def _j1_dbl(p):
    x, y, z = p
    if not y:
        return (ONE, ONE, ZERO)
    a = x * x % Q
    b = y * y % Q
    c = b * b % Q
    t = (x + b) % Q
    d = (t * t - a - c) * 2 % Q
    e = 3 * a % Q
    x3 = (e * e - 2 * d) % Q
    y3 = (e * (d - x3) - 8 * c) % Q
    z3 = (y * z << 1) % Q
    return (x3, y3, z3)


def _j1_add_mixed(p, q):
    # p jacobian, q affine (not identity)
    x1, y1, z1 = p
    if not z1:
        return (q[0], q[1], ONE)
    x2, y2 = q
    zz = z1 * z1 % Q
    u2 = x2 * zz % Q
    s2 = y2 * z1 % Q * zz % Q
    h = (u2 - x1) % Q
    r = (s2 - y1) % Q
    if not h:
        if not r:
            return _j1_dbl(p)
        return (ONE, ONE, ZERO)
    h2 = h * h % Q
    h3 = h2 * h % Q
    v = x1 * h2 % Q
    x3 = (r * r - h3 - 2 * v) % Q
    y3 = (r * (v - x3) - y1 * h3) % Q
    z3 = z1 * h % Q
    return (x3, y3, z3)


def _j1_norm(p):
    x, y, z = p
    if not z:
        return None
    zi = invert(z, Q)
    zi2 = zi * zi % Q
    return (x * zi2 % Q, y * zi2 % Q * zi % Q)


def g1_neg(p):
    if p is None:
        return None
    return (p[0], (-p[1]) % Q)


def g1_add(p, q):
    if p is None:
        return q
    if q is None:
        return p
    return _j1_norm(_j1_add_mixed((p[0], p[1], ONE), q))


def _g1_endo(p):
    return (p[0] * BETA_G1 % Q, p[1])


# ---------------------------------------------------------------------------
# G2: curve y^2 = x^3 + 4*xi over Fq2.

B_G2 = ((mpz(4)), (mpz(4)))


def g2_on_curve(p):
    if p is None:
        return True
    x, y = p
    return f2_sqr(y) == f2_add(f2_mul(f2_sqr(x), x), B_G2)


def _j2_dbl(p):
    (x0, x1), (y0, y1), (z0, z1) = p
    if not y0 and not y1:
        return (F2_ONE, F2_ONE, F2_ZERO)
    a0 = (x0 + x1) * (x0 - x1) % Q
    a1 = (x0 * x1 << 1) % Q
    b0 = (y0 + y1) * (y0 - y1) % Q
    b1 = (y0 * y1 << 1) % Q
    c0 = (b0 + b1) * (b0 - b1) % Q
    c1 = (b0 * b1 << 1) % Q
    t0, t1 = x0 + b0, x1 + b1
    d0 = (((t0 + t1) * (t0 - t1) - a0 - c0) << 1) % Q
    d1 = (((t0 * t1) << 1) - a1 - c1 << 1) % Q
    e0, e1 = 3 * a0, 3 * a1
    x30 = ((e0 + e1) * (e0 - e1) - (d0 << 1)) % Q
    x31 = ((e0 * e1 << 1) - (d1 << 1)) % Q
    f0, f1 = d0 - x30, d1 - x31
    y30 = (e0 * f0 - e1 * f1 - (c0 << 3)) % Q
    y31 = (e0 * f1 + e1 * f0 - (c1 << 3)) % Q
    z30 = ((y0 * z0 - y1 * z1) << 1) % Q
    z31 = ((y0 * z1 + y1 * z0) << 1) % Q
    return ((x30, x31), (y30, y31), (z30, z31))


def _j2_add_mixed(p, q):
    (x10, x11), (y10, y11), (z10, z11) = p
    if not z10 and not z11:
        return (q[0], q[1], F2_ONE)
    (x20, x21), (y20, y21) = q
    zz0 = (z10 + z11) * (z10 - z11) % Q
    zz1 = (z10 * z11 << 1) % Q
    u20 = (x20 * zz0 - x21 * zz1) % Q
    u21 = (x20 * zz1 + x21 * zz0) % Q
    t0 = (y20 * z10 - y21 * z11) % Q
    t1 = (y20 * z11 + y21 * z10) % Q
    s20 = (t0 * zz0 - t1 * zz1) % Q
    s21 = (t0 * zz1 + t1 * zz0) % Q
    h0, h1 = (u20 - x10) % Q, (u21 - x11) % Q
    r0, r1 = (s20 - y10) % Q, (s21 - y11) % Q
    if not h0 and not h1:
        if not r0 and not r1:
            return _j2_dbl(p)
        return (F2_ONE, F2_ONE, F2_ZERO)
    hh0 = (h0 + h1) * (h0 - h1) % Q
    hh1 = (h0 * h1 << 1) % Q
    hhh0 = (hh0 * h0 - hh1 * h1) % Q
    hhh1 = (hh0 * h1 + hh1 * h0) % Q
    v0 = (x10 * hh0 - x11 * hh1) % Q
    v1 = (x10 * hh1 + x11 * hh0) % Q
    x30 = ((r0 + r1) * (r0 - r1) - hhh0 - (v0 << 1)) % Q
    x31 = ((r0 * r1 << 1) - hhh1 - (v1 << 1)) % Q
    w0, w1 = v0 - x30, v1 - x31
    y30 = (r0 * w0 - r1 * w1 - y10 * hhh0 + y11 * hhh1) % Q
    y31 = (r0 * w1 + r1 * w0 - y10 * hhh1 - y11 * hhh0) % Q
    z30 = (z10 * h0 - z11 * h1) % Q
    z31 = (z10 * h1 + z11 * h0) % Q
    return ((x30, x31), (y30, y31), (z30, z31))


def _j2_norm(p):
    x, y, z = p
    if z == F2_ZERO:
        return None
    zi = f2_inv(z)
    zi2 = f2_sqr(zi)
    return (f2_mul(x, zi2), f2_mul(f2_mul(y, zi2), zi))


def g2_neg(p):
    if p is None:
        return None
    return (p[0], f2_neg(p[1]))


def g2_add(p, q):
    if p is None:
        return q
    if q is None:
        return p
    return _j2_norm(_j2_add_mixed((p[0], p[1], F2_ONE), q))


# psi: untwist-Frobenius-twist endomorphism, acts as multiplication by the
# BLS parameter x on G2.
PSI_CX = f2_inv(f2_pow(XI, (Q - 1) // 3))
PSI_CY = f2_inv(f2_pow(XI, (Q - 1) // 2))


def g2_psi(p):
    if p is None:
        return None
    return (f2_mul(f2_conj(p[0]), PSI_CX), f2_mul(f2_conj(p[1]), PSI_CY))


# ---------------------------------------------------------------------------
# Scalar recoding

def _wnaf(k, w):
    # signed width-w NAF digits, least significant first; k >= 0
    digits = []
    mask = (1 << w) - 1
    half = 1 << (w - 1)
    full = 1 << w
    k = int(k)
    while k:
        if k & 1:
            d = k & mask
            if d >= half:
                d -= full
            k -= d
            digits.append(d)
        else:
            digits.append(0)
        k >>= 1
    return digits


def _glv_split(k):
    # k = k0 - k1 * x^2 mod r with |ki| around 128 bits
    k = int(k) % R
    x2 = int(X_ABS) * int(X_ABS)
    k1 = (k + x2 // 2) // x2
    k0 = k - k1 * x2
    return (k0, -k1)  # k = k0 + k1 * (-x^2)


def _gls_split(k):
    # k = sum_j a_j * x^j mod r with |a_j| < 2^64, x the (negative) parameter
    k = int(k) % R
    xa = int(X_ABS)
    digits = []
    for _ in range(4):
        digits.append(k % xa)
        k //= xa
    # base |x| digits -> base x coefficients (x = -|x|)
    return (digits[0], -digits[1], digits[2], -digits[3])


def _batch_inv_fq(vals):
    # Montgomery batch inversion over Fq; vals nonzero
    n = len(vals)
    prefix = [ONE] * (n + 1)
    for i, v in enumerate(vals):
        prefix[i + 1] = prefix[i] * v % Q
    inv_all = invert(prefix[n], Q)
    out = [ZERO] * n
    for i in range(n - 1, -1, -1):
        out[i] = prefix[i] * inv_all % Q
        inv_all = inv_all * vals[i] % Q
    return out


def _batch_norm_j1(points):
    # normalize a list of jacobian G1 points sharing one field inversion
    zs = [p[2] for p in points]
    zinvs = _batch_inv_fq(zs)
    out = []
    for (x, y, _z), zi in zip(points, zinvs):
        zi2 = zi * zi % Q
        out.append((x * zi2 % Q, y * zi2 % Q * zi % Q))
    return out


def _batch_norm_j2(points):
    # shares one Fq inversion across the Fq2 norms
    norms = [(z[0] * z[0] + z[1] * z[1]) % Q for _x, _y, z in points]
    ninvs = _batch_inv_fq(norms)
    out = []
    for (x, y, z), ni in zip(points, ninvs):
        zi = (z[0] * ni % Q, (-z[1]) * ni % Q)
        zi2 = f2_sqr(zi)
        out.append((f2_mul(x, zi2), f2_mul(f2_mul(y, zi2), zi)))
    return out


_WNAF_W = 4
_TABLE_ODDS = (1, 3, 5, 7)


def _odd_multiples_j1(p):
    # jacobian odd multiples P, 3P, 5P, 7P
    pj = (p[0], p[1], ONE)
    p2 = _j1_dbl(pj)
    p2a = _j1_norm(p2)
    out = [pj]
    cur = pj
    for _ in range(3):
        cur = _j1_add_mixed(cur, p2a)
        out.append(cur)
    return out


def _odd_multiples_j2(p):
    pj = (p[0], p[1], F2_ONE)
    p2 = _j2_dbl(pj)
    p2a = _j2_norm(p2)
    out = [pj]
    cur = pj
    for _ in range(3):
        cur = _j2_add_mixed(cur, p2a)
        out.append(cur)
    return out


def g1_msm(points, scalars):
    """Multi-scalar multiplication in G1 over affine points; returns affine."""
    minis = []  # (table_index, digits, sign)
    bases = []  # affine tables built lazily after batch normalization
    raw_tables = []
    for p, k in zip(points, scalars):
        k = int(k) % R
        if p is None or k == 0:
            continue
        k0, k1 = _glv_split(k)
        raw_tables.append(_odd_multiples_j1(p))
        base_idx = (len(raw_tables) - 1) * 2
        for j, kj in enumerate((k0, k1)):
            if kj == 0:
                continue
            sign = 1 if kj > 0 else -1
            minis.append((base_idx + j, _wnaf(abs(kj), _WNAF_W), sign))
    if not minis:
        return None
    flat = [e for tab in raw_tables for e in tab]
    flat_affine = _batch_norm_j1(flat)
    tables = []
    for t in range(len(raw_tables)):
        tab = flat_affine[4 * t: 4 * t + 4]
        tables.append(tab)
        tables.append([_g1_endo(e) for e in tab])
    top = max(len(d) for _i, d, _s in minis)
    acc = (ONE, ONE, ZERO)
    for pos in range(top - 1, -1, -1):
        acc = _j1_dbl(acc)
        for idx, digits, sign in minis:
            if pos < len(digits) and digits[pos]:
                d = digits[pos] * sign
                e = tables[idx][(abs(d) - 1) // 2]
                acc = _j1_add_mixed(acc, e if d > 0 else (e[0], (-e[1]) % Q))
    return _j1_norm(acc)


def g1_mul(p, k):
    return g1_msm([p], [k])


def g2_msm(points, scalars):
    """Multi-scalar multiplication in G2; 4-way psi decomposition per point."""
    minis = []
    raw_tables = []
    for p, k in zip(points, scalars):
        k = int(k) % R
        if p is None or k == 0:
            continue
        ks = _gls_split(k)
        raw_tables.append(_odd_multiples_j2(p))
        base_idx = (len(raw_tables) - 1) * 4
        for j, kj in enumerate(ks):
            if kj == 0:
                continue
            sign = 1 if kj > 0 else -1
            minis.append((base_idx + j, _wnaf(abs(kj), _WNAF_W), sign))
    if not minis:
        return None
    flat = [e for tab in raw_tables for e in tab]
    flat_affine = _batch_norm_j2(flat)
    # per point: [psi^0 table, psi^1 table, psi^2 table, psi^3 table]
    tables = []
    for t in range(len(raw_tables)):
        tab = flat_affine[4 * t: 4 * t + 4]
        tables.append(tab)
        for _ in range(3):
            tab = [g2_psi(e) for e in tab]
            tables.append(tab)
    top = max(len(d) for _i, d, _s in minis)
    acc = (F2_ONE, F2_ONE, F2_ZERO)
    for pos in range(top - 1, -1, -1):
        acc = _j2_dbl(acc)
        for idx, digits, sign in minis:
            if pos < len(digits) and digits[pos]:
                d = digits[pos] * sign
                e = tables[idx][(abs(d) - 1) // 2]
                acc = _j2_add_mixed(acc, e if d > 0 else (e[0], f2_neg(e[1])))
    return _j2_norm(acc)


def g2_mul(p, k):
    return g2_msm([p], [k])


def g1_in_subgroup(p):
    if p is None:
        return True
    if not g1_on_curve(p):
        return False
    # endomorphism eigenvalue check: BETA-map == multiplication by -x^2
    lhs = _g1_endo(p)
    t = _plain_mul_g1(p, int(X_ABS))
    t = _plain_mul_g1(t, int(X_ABS))
    return t is not None and lhs == g1_neg(t)


def _plain_mul_g1(p, k):
    if p is None or k == 0:
        return None
    acc = (ONE, ONE, ZERO)
    for bit in bin(k)[2:]:
        acc = _j1_dbl(acc)
        if bit == "1":
            acc = _j1_add_mixed(acc, p)
    return _j1_norm(acc)


def _plain_mul_g2(p, k):
    if p is None or k == 0:
        return None
    acc = (F2_ONE, F2_ONE, F2_ZERO)
    for bit in bin(k)[2:]:
        acc = _j2_dbl(acc)
        if bit == "1":
            acc = _j2_add_mixed(acc, p)
    return _j2_norm(acc)


def g2_in_subgroup(p):
    if p is None:
        return True
    if not g2_on_curve(p):
        return False
    # psi(P) == x * P characterizes the order-r subgroup
    rhs = _plain_mul_g2(p, int(X_ABS))
    rhs = g2_neg(rhs)
    return g2_psi(p) == rhs


FIXED_BASE_WIDTH = 8


def g2_fixed_base_table(p, width=FIXED_BASE_WIDTH):
    """Radix-2^width fixed-base table: rows of j * 2^(width*i) * P, affine.

    One-time cost is thousands of point additions; afterwards an
    exponentiation is ~256/width mixed additions and no doublings.
    """
    rows = -(-256 // width)
    span = (1 << width) - 1
    jacs = []
    row_base = (p[0], p[1], F2_ONE)
    for _ in range(rows):
        base_aff = _j2_norm(row_base)
        entry = (base_aff[0], base_aff[1], F2_ONE)
        row = [entry]
        for _j in range(span - 1):
            entry = _j2_add_mixed(entry, base_aff)
            row.append(entry)
        jacs.extend(row)
        for _ in range(width):
            row_base = _j2_dbl(row_base)
    flat = _batch_norm_j2(jacs)
    return [flat[i * span:(i + 1) * span] for i in range(rows)]


def g2_fixed_base_mul(table, k, width=FIXED_BASE_WIDTH):
    k = int(k) % R
    if k == 0:
        return None
    acc = (F2_ONE, F2_ONE, F2_ZERO)
    i = 0
    mask = (1 << width) - 1
    while k:
        digit = k & mask
        if digit:
            acc = _j2_add_mixed(acc, table[i][digit - 1])
        k >>= width
        i += 1
    return _j2_norm(acc)


# ---------------------------------------------------------------------------
# Pairing

def _dbl_step(t, py, npx3, c_list):
    # line coefficients at (v^2, w, v*w), scaled by 2YZ^3 in Fq2
    (x0, x1), (y0, y1), (z0, z1) = t
    a0 = (x0 + x1) * (x0 - x1) % Q
    a1 = (x0 * x1 << 1) % Q
    b0 = (y0 + y1) * (y0 - y1) % Q
    b1 = (y0 * y1 << 1) % Q
    c0 = (b0 + b1) * (b0 - b1) % Q
    c1 = (b0 * b1 << 1) % Q
    zsq0 = (z0 + z1) * (z0 - z1) % Q
    zsq1 = (z0 * z1 << 1) % Q
    t0, t1 = x0 + b0, x1 + b1
    d0 = ((t0 + t1) * (t0 - t1) - a0 - c0 << 1) % Q
    d1 = ((t0 * t1 << 1) - a1 - c1 << 1) % Q
    e0, e1 = 3 * a0, 3 * a1
    x30 = ((e0 + e1) * (e0 - e1) - (d0 << 1)) % Q
    x31 = ((e0 * e1 << 1) - (d1 << 1)) % Q
    f0, f1 = d0 - x30, d1 - x31
    y30 = (e0 * f0 - e1 * f1 - (c0 << 3)) % Q
    y31 = (e0 * f1 + e1 * f0 - (c1 << 3)) % Q
    z30 = ((y0 * z0 - y1 * z1) << 1) % Q
    z31 = ((y0 * z1 + y1 * z0) << 1) % Q
    line_a0 = ((z30 * zsq0 - z31 * zsq1) * py) % Q
    line_a1 = ((z30 * zsq1 + z31 * zsq0) * py) % Q
    ax0 = (a0 * x0 - a1 * x1) % Q
    ax1 = (a0 * x1 + a1 * x0) % Q
    line_b0 = (3 * ax0 - (b0 << 1)) % Q
    line_b1 = (3 * ax1 - (b1 << 1)) % Q
    line_c0 = ((a0 * zsq0 - a1 * zsq1) * npx3) % Q
    line_c1 = ((a0 * zsq1 + a1 * zsq0) * npx3) % Q
    c_list.append(((line_a0, line_a1), (line_b0, line_b1), (line_c0, line_c1)))
    return ((x30, x31), (y30, y31), (z30, z31))


def _add_step(t, q, px, npy, c_list):
    (x10, x11), (y10, y11), (z10, z11) = t
    (xq0, xq1), (yq0, yq1) = q
    zz0 = (z10 + z11) * (z10 - z11) % Q
    zz1 = (z10 * z11 << 1) % Q
    u20 = (xq0 * zz0 - xq1 * zz1) % Q
    u21 = (xq0 * zz1 + xq1 * zz0) % Q
    t0 = (yq0 * z10 - yq1 * z11) % Q
    t1 = (yq0 * z11 + yq1 * z10) % Q
    s20 = (t0 * zz0 - t1 * zz1) % Q
    s21 = (t0 * zz1 + t1 * zz0) % Q
    h0, h1 = (u20 - x10) % Q, (u21 - x11) % Q
    r0, r1 = (s20 - y10) % Q, (s21 - y11) % Q
    hh0 = (h0 + h1) * (h0 - h1) % Q
    hh1 = (h0 * h1 << 1) % Q
    hhh0 = (hh0 * h0 - hh1 * h1) % Q
    hhh1 = (hh0 * h1 + hh1 * h0) % Q
    v0 = (x10 * hh0 - x11 * hh1) % Q
    v1 = (x10 * hh1 + x11 * hh0) % Q
    x30 = ((r0 + r1) * (r0 - r1) - hhh0 - (v0 << 1)) % Q
    x31 = ((r0 * r1 << 1) - hhh1 - (v1 << 1)) % Q
    w0, w1 = v0 - x30, v1 - x31
    y30 = (r0 * w0 - r1 * w1 - y10 * hhh0 + y11 * hhh1) % Q
    y31 = (r0 * w1 + r1 * w0 - y10 * hhh1 - y11 * hhh0) % Q
    z30 = (z10 * h0 - z11 * h1) % Q
    z31 = (z10 * h1 + z11 * h0) % Q
    line_a0 = z30 * npy % Q
    line_a1 = z31 * npy % Q
    line_b0 = (z30 * yq0 - z31 * yq1 - r0 * xq0 + r1 * xq1) % Q
    line_b1 = (z30 * yq1 + z31 * yq0 - r0 * xq1 - r1 * xq0) % Q
    line_c0 = r0 * px % Q
    line_c1 = r1 * px % Q
    c_list.append(((line_a0, line_a1), (line_b0, line_b1), (line_c0, line_c1)))
    return ((x30, x31), (y30, y31), (z30, z31))


def _sparse_mul(f, line):
    # multiply f by c2*v^2 + c3*w + c4*v*w
    (l20, l21), (l30, l31), (l40, l41) = line
    (a, b, c), (d, e, g) = f
    a0, a1 = a
    b0, b1 = b
    c0, c1 = c
    d0, d1 = d
    e0, e1 = e
    g0, g1 = g

    # alpha = (a,b,c) * c2*v^2  ->  (xi*b*c2, xi*c*c2, a*c2)
    t0 = b0 * l20 - b1 * l21
    t1 = b0 * l21 + b1 * l20
    al0 = ((t0 - t1) % Q, (t0 + t1) % Q)
    t0 = c0 * l20 - c1 * l21
    t1 = c0 * l21 + c1 * l20
    al1 = ((t0 - t1) % Q, (t0 + t1) % Q)
    al2 = ((a0 * l20 - a1 * l21) % Q, (a0 * l21 + a1 * l20) % Q)

    # beta = (d,e,g) * (c3 + c4*v)
    m00 = d0 * l30 - d1 * l31
    m01 = d0 * l31 + d1 * l30
    m10 = e0 * l40 - e1 * l41
    m11 = e0 * l41 + e1 * l40
    gx0 = g0 * l40 - g1 * l41
    gx1 = g0 * l41 + g1 * l40
    gy0 = g0 * l30 - g1 * l31
    gy1 = g0 * l31 + g1 * l30
    s0, s1 = d0 + e0, d1 + e1
    u0, u1 = l30 + l40, l31 + l41
    mx0 = s0 * u0 - s1 * u1 - m00 - m10
    mx1 = s0 * u1 + s1 * u0 - m01 - m11
    bt0 = ((m00 + gx0 - gx1) % Q, (m01 + gx0 + gx1) % Q)
    bt1 = (mx0 % Q, mx1 % Q)
    bt2 = ((m10 + gy0) % Q, (m11 + gy1) % Q)

    # gamma = (a,b,c) * (c3 + c4*v)
    n00 = a0 * l30 - a1 * l31
    n01 = a0 * l31 + a1 * l30
    n10 = b0 * l40 - b1 * l41
    n11 = b0 * l41 + b1 * l40
    cx0 = c0 * l40 - c1 * l41
    cx1 = c0 * l41 + c1 * l40
    cy0 = c0 * l30 - c1 * l31
    cy1 = c0 * l31 + c1 * l30
    s0, s1 = a0 + b0, a1 + b1
    nx0 = s0 * u0 - s1 * u1 - n00 - n10
    nx1 = s0 * u1 + s1 * u0 - n01 - n11
    gm0 = ((n00 + cx0 - cx1) % Q, (n01 + cx0 + cx1) % Q)
    gm1 = (nx0 % Q, nx1 % Q)
    gm2 = ((n10 + cy0) % Q, (n11 + cy1) % Q)

    # delta = (d,e,g) * c2*v^2
    t0 = e0 * l20 - e1 * l21
    t1 = e0 * l21 + e1 * l20
    dl0 = ((t0 - t1) % Q, (t0 + t1) % Q)
    t0 = g0 * l20 - g1 * l21
    t1 = g0 * l21 + g1 * l20
    dl1 = ((t0 - t1) % Q, (t0 + t1) % Q)
    dl2 = ((d0 * l20 - d1 * l21) % Q, (d0 * l21 + d1 * l20) % Q)

    # result = (alpha + v*beta, gamma + delta)
    vb = (f2_mul_xi(bt2), bt0, bt1)
    return (
        (f2_add(al0, vb[0]), f2_add(al1, vb[1]), f2_add(al2, vb[2])),
        (f2_add(gm0, dl0), f2_add(gm1, dl1), f2_add(gm2, dl2)),
    )


def multi_miller_loop(g1_points, g2_points):
    """Product of Miller loop values for the given (G1 affine, G2 affine) pairs.

    Identity entries contribute the neutral factor.  The result still needs
    final_exponentiation().
    """
    pairs = [
        (p, q) for p, q in zip(g1_points, g2_points) if p is not None and q is not None
    ]
    if not pairs:
        return F12_ONE
    pre = []
    ts = []
    for p, q in pairs:
        px, py = p
        pre.append((px, py, (-3 * px) % Q, (Q - py) % Q, q))
        ts.append((q[0], q[1], F2_ONE))
    f = F12_ONE
    first = True
    for bit in X_BITS:
        if not first:
            f = f12_sqr(f)
        lines = []
        for i, (px, py, npx3, npy, q) in enumerate(pre):
            ts[i] = _dbl_step(ts[i], py, npx3, lines)
        for line in lines:
            f = _sparse_mul(f, line)
        if bit == "1":
            lines = []
            for i, (px, py, npx3, npy, q) in enumerate(pre):
                ts[i] = _add_step(ts[i], q, px, npy, lines)
            for line in lines:
                f = _sparse_mul(f, line)
        first = False
    return f12_conj(f)  # parameter is negative


def pairing(p, q):
    """Full pairing e(p, q) -> Fq12 (unit element for identity inputs)."""
    if p is None or q is None:
        return F12_ONE
    return final_exponentiation(multi_miller_loop([p], [q]))


# ---------------------------------------------------------------------------
# Serialization: zcash-style compressed points, fixed-width Fq/GT encodings.

FQ_BYTES = 48


def _fq_to_bytes(a):
    return int(a).to_bytes(FQ_BYTES, "big")


def _fq_from_bytes(b):
    a = int.from_bytes(b, "big")
    if a >= Q:
        raise ValueError("field element out of range")
    return mpz(a)


def g1_to_bytes(p):
    if p is None:
        out = bytearray(FQ_BYTES)
        out[0] = 0xC0
        return bytes(out)
    x, y = p
    out = bytearray(_fq_to_bytes(x))
    out[0] |= 0x80
    if y > Q - y:
        out[0] |= 0x20
    return bytes(out)


def g1_from_bytes(data):
    if len(data) != FQ_BYTES:
        raise ValueError("bad G1 encoding length")
    flags = data[0]
    if not flags & 0x80:
        raise ValueError("uncompressed G1 encoding not supported")
    if flags & 0x40:
        if any(data[1:]) or flags != 0xC0:
            raise ValueError("bad G1 infinity encoding")
        return None
    x = _fq_from_bytes(bytes([flags & 0x1F]) + data[1:])
    y2 = (x * x % Q * x + B_G1) % Q
    y = pow(y2, (Q + 1) // 4, Q)
    if y * y % Q != y2:
        raise ValueError("G1 x-coordinate not on curve")
    y = mpz(y)
    if (y > Q - y) != bool(flags & 0x20):
        y = (Q - y) % Q
    p = (x, y)
    if not g1_in_subgroup(p):
        raise ValueError("G1 point not in the prime-order subgroup")
    return p


def g2_to_bytes(p):
    if p is None:
        out = bytearray(2 * FQ_BYTES)
        out[0] = 0xC0
        return bytes(out)
    (x0, x1), (y0, y1) = p
    out = bytearray(_fq_to_bytes(x1) + _fq_to_bytes(x0))
    out[0] |= 0x80
    ny0, ny1 = (Q - y0) % Q, (Q - y1) % Q
    if (y1, y0) > (ny1, ny0):
        out[0] |= 0x20
    return bytes(out)


def g2_from_bytes(data):
    if len(data) != 2 * FQ_BYTES:
        raise ValueError("bad G2 encoding length")
    flags = data[0]
    if not flags & 0x80:
        raise ValueError("uncompressed G2 encoding not supported")
    if flags & 0x40:
        if any(data[1:]) or flags != 0xC0:
            raise ValueError("bad G2 infinity encoding")
        return None
    x1 = _fq_from_bytes(bytes([flags & 0x1F]) + data[1:FQ_BYTES])
    x0 = _fq_from_bytes(data[FQ_BYTES:])
    x = (x0, x1)
    y2 = f2_add(f2_mul(f2_sqr(x), x), B_G2)
    y = f2_sqrt(y2)
    if y is None:
        raise ValueError("G2 x-coordinate not on curve")
    ny = f2_neg(y)
    is_largest = (y[1], y[0]) > (ny[1], ny[0])
    if is_largest != bool(flags & 0x20):
        y = ny
    p = (x, y)
    if not g2_in_subgroup(p):
        raise ValueError("G2 point not in the prime-order subgroup")
    return p


def gt_to_bytes(z):
    (c0, c1, c2), (c3, c4, c5) = z
    parts = []
    for coeff in (c0, c1, c2, c3, c4, c5):
        parts.append(_fq_to_bytes(coeff[0]))
        parts.append(_fq_to_bytes(coeff[1]))
    return b"".join(parts)


def gt_from_bytes(data):
    if len(data) != 12 * FQ_BYTES:
        raise ValueError("bad GT encoding length")
    vals = [
        _fq_from_bytes(data[i * FQ_BYTES:(i + 1) * FQ_BYTES]) for i in range(12)
    ]
    z = (
        ((vals[0], vals[1]), (vals[2], vals[3]), (vals[4], vals[5])),
        ((vals[6], vals[7]), (vals[8], vals[9]), (vals[10], vals[11])),
    )
    if not gt_in_subgroup(z):
        raise ValueError("GT element not in the order-r subgroup")
    return z
