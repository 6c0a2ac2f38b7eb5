"""Symbolic generic-group-model analyzer for pairing assumptions.

An assumption instance lists the formal polynomials handed to the
adversary: P over the source group, Q over the dual group, R over the
target group, plus the two challenge candidates T0/T1.  The checker
decides, by exact linear algebra over the rationals, whether either
challenge is expressible from the given handles:

* ``dependent_on(T, P)``: does alpha*T = sum beta_i P_i have a solution
  with alpha != 0 (equivalently, T in span(P))?
* ``pairing_dependent(T, P, Q, R)``: do the pairing lifts {T*Q_i} admit a
  nontrivial combination inside span({P_i*Q_j} + R)?

If all four tests (both challenges, both levels) come back independent,
any generic adversary issuing q instructions has advantage at most
3*(q+2L)^2*t/p, where L is the largest handle-list size and t the largest
total degree in play.

No floating point anywhere: coefficients are fractions.Fraction.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction

__all__ = [
    "FormalPoly",
    "AssumptionInstance",
    "Verdict",
    "dependent_on",
    "pairing_dependent",
    "check_assumption",
    "builtin_assumption",
    "parse_instance",
    "GgmError",
]


class GgmError(ValueError):
    pass


class FormalPoly:
    """Sparse multivariate polynomial over the rationals.

    Monomials are tuples of (variable, exponent) pairs sorted by variable
    name; the zero polynomial has no terms.  Instances are immutable.
    """

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        clean = {}
        for mono, coeff in (terms or {}).items():
            coeff = Fraction(coeff)
            if coeff:
                clean[tuple(sorted((v, e) for v, e in mono if e))] = coeff
        self.terms = clean

    @classmethod
    def var(cls, name):
        return cls({((name, 1),): Fraction(1)})

    @classmethod
    def const(cls, value):
        return cls({(): Fraction(value)})

    def __add__(self, other):
        other = _coerce(other)
        out = dict(self.terms)
        for mono, coeff in other.terms.items():
            out[mono] = out.get(mono, Fraction(0)) + coeff
        return FormalPoly(out)

    __radd__ = __add__

    def __neg__(self):
        return FormalPoly({m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-_coerce(other))

    def __rsub__(self, other):
        return _coerce(other) + (-self)

    def __mul__(self, other):
        other = _coerce(other)
        out = {}
        for m1, c1 in self.terms.items():
            d1 = dict(m1)
            for m2, c2 in other.terms.items():
                merged = dict(d1)
                for v, e in m2:
                    merged[v] = merged.get(v, 0) + e
                key = tuple(sorted(merged.items()))
                out[key] = out.get(key, Fraction(0)) + c1 * c2
        return FormalPoly(out)

    __rmul__ = __mul__

    def __pow__(self, n):
        if n < 0:
            raise GgmError("negative powers are not polynomials")
        out = FormalPoly.const(1)
        for _ in range(int(n)):
            out = out * self
        return out

    def __eq__(self, other):
        return isinstance(other, FormalPoly) and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def is_zero(self):
        return not self.terms

    def total_degree(self):
        if not self.terms:
            return 0
        return max(sum(e for _v, e in mono) for mono in self.terms)

    def variables(self):
        out = set()
        for mono in self.terms:
            out.update(v for v, _e in mono)
        return out

    def __repr__(self):
        if not self.terms:
            return "0"
        parts = []
        for mono, coeff in sorted(
            self.terms.items(), key=lambda kv: (-sum(e for _v, e in kv[0]), kv[0])
        ):
            body = "*".join(
                v if e == 1 else f"{v}^{e}" for v, e in mono
            )
            if not body:
                parts.append(str(coeff))
            elif coeff == 1:
                parts.append(body)
            elif coeff == -1:
                parts.append(f"-{body}")
            else:
                parts.append(f"{coeff}*{body}")
        out = " + ".join(parts)
        return out.replace("+ -", "- ")


def _coerce(x):
    if isinstance(x, FormalPoly):
        return x
    if isinstance(x, (int, Fraction)):
        return FormalPoly.const(x)
    raise TypeError(f"cannot combine FormalPoly with {type(x).__name__}")


def _rank(polys):
    """Rank of the span of the given polynomials, by sparse elimination."""
    basis = []  # (pivot monomial, reduced coefficient dict)
    rank = 0
    for poly in polys:
        vec = dict(poly.terms)
        for pivot, row in basis:
            if pivot in vec:
                factor = vec[pivot]
                for mono, coeff in row.items():
                    val = vec.get(mono, Fraction(0)) - factor * coeff
                    if val:
                        vec[mono] = val
                    else:
                        vec.pop(mono, None)
        if vec:
            pivot = next(iter(vec))
            inv = 1 / vec[pivot]
            basis.append((pivot, {m: c * inv for m, c in vec.items()}))
            rank += 1
    return rank


def dependent_on(t, polys):
    """True iff alpha*T = sum beta_i P_i has a solution with alpha != 0."""
    if t.is_zero():
        # 0 = sum of nothing with alpha = 1
        return True
    return _rank(list(polys) + [t]) == _rank(list(polys))


def pairing_dependent(t, p_list, q_list, r_list):
    """Pairing-level dependence of the lifts {T*Q_i} on {P_i*Q_j} + R."""
    lifts = [t * q for q in q_list]
    base = [p * q for p in p_list for q in q_list] + list(r_list)
    base_rank = _rank(base)
    return _rank(base + lifts) < base_rank + len(lifts)


@dataclass(frozen=True)
class AssumptionInstance:
    """Polynomial description of a decisional assumption.

    ``challenge`` names the group the challenge element lives in: "g1"
    (the form the dependence definition is stated for), "g2" (checked with
    the two source groups' roles swapped), or "gt" (challenge already in
    the target group, checked directly against the span of pairings).
    """

    name: str
    p_list: tuple
    q_list: tuple
    r_list: tuple
    t0: FormalPoly
    t1: FormalPoly
    challenge: str = "g1"

    def __post_init__(self):
        if not self.p_list or not self.q_list or not self.r_list:
            raise GgmError("P, Q, R must be non-empty")
        if self.t0 == self.t1:
            raise GgmError("challenge polynomials must differ")
        if self.challenge not in ("g1", "g2", "gt"):
            raise GgmError(f"unknown challenge group {self.challenge!r}")


@dataclass(frozen=True)
class Verdict:
    name: str
    t_dependent_on_p: tuple  # per challenge bit
    pairing_dependent: tuple  # per challenge bit
    generic_secure: bool
    list_size: int  # L = max(|P|, |Q|, |R|)
    max_degree: int  # t over all supplied and pairing-derived polynomials
    bound: str  # advantage bound with L and t substituted

    def bound_value(self, q, p):
        """Numeric advantage bound for q instructions over order p."""
        return Fraction(3 * (q + 2 * self.list_size) ** 2 * self.max_degree, p)


def check_assumption(inst):
    """Run both dependence tests for both challenge bits."""
    p_list, q_list, r_list = inst.p_list, inst.q_list, inst.r_list
    direct, lifted = [], []
    pq = [p * q for p in p_list for q in q_list]
    for t in (inst.t0, inst.t1):
        if inst.challenge == "g1":
            direct.append(dependent_on(t, p_list))
            lifted.append(pairing_dependent(t, p_list, q_list, r_list))
        elif inst.challenge == "g2":
            direct.append(dependent_on(t, q_list))
            lifted.append(pairing_dependent(t, q_list, p_list, r_list))
        else:  # challenge in the target group
            direct.append(dependent_on(t, r_list))
            lifted.append(dependent_on(t, pq + list(r_list)))
    degree_pool = (
        list(p_list) + list(q_list) + list(r_list) + [inst.t0, inst.t1] + pq
    )
    if inst.challenge in ("g1", "g2"):
        others = q_list if inst.challenge == "g1" else p_list
        degree_pool += [t * o for t in (inst.t0, inst.t1) for o in others]
    t_max = max(poly.total_degree() for poly in degree_pool)
    l_max = max(len(p_list), len(q_list), len(r_list))
    return Verdict(
        name=inst.name,
        t_dependent_on_p=tuple(direct),
        pairing_dependent=tuple(lifted),
        generic_secure=not (any(direct) or any(lifted)),
        list_size=l_max,
        max_degree=t_max,
        bound=f"3(q+{2 * l_max})^2*{t_max}/p",
    )


def _polys(*specs):
    return tuple(specs)


def builtin_assumption(n):
    """The five decisional assumptions the scheme's security rests on."""
    one = FormalPoly.const(1)
    A, B, C, D, X = (FormalPoly.var(v) for v in "ABCDX")
    if n == 1:
        return AssumptionInstance(
            name="assumption-1",
            p_list=_polys(
                one, A, B, A * B * B, B * B, B ** 3,
                C, A * C, B * C, B * B * C, B ** 3 * C,
            ),
            q_list=_polys(one, B),
            r_list=_polys(one),
            t0=A * B * B * C,
            t1=D,
            challenge="g1",
        )
    if n == 2:
        return AssumptionInstance(
            name="assumption-2",
            p_list=_polys(one, A, A * A, B * X, A * B * X, A * A * X),
            q_list=_polys(one, A, B, C),
            r_list=_polys(one),
            t0=B * C,
            t1=D,
            challenge="g2",
        )
    if n == 3:
        return AssumptionInstance(
            name="assumption-3",
            p_list=_polys(one),
            q_list=_polys(one, A, B),
            r_list=_polys(one),
            t0=A * B,
            t1=D,
            challenge="g2",
        )
    if n == 4:
        return AssumptionInstance(
            name="assumption-4",
            p_list=_polys(one, A, B, C),
            q_list=_polys(one, A, B, C),
            r_list=_polys(one),
            t0=A * B * C,
            t1=D,
            challenge="gt",
        )
    if n == 5:
        return AssumptionInstance(
            name="assumption-5",
            p_list=_polys(one, A, B, C, A * B, A * A * B),
            q_list=_polys(one, A, B),
            r_list=_polys(one),
            t0=A * B * C,
            t1=D,
            challenge="g1",
        )
    raise GgmError(f"no built-in assumption {n}; valid indices are 1..5")


# -- text format for user-supplied instances ---------------------------------

_TOKEN = re.compile(
    r"\s*(?:(?P<num>\d+(?:/\d+)?)|(?P<var>[A-Za-z_][A-Za-z0-9_]*)"
    r"|(?P<op>[\^*+-])|(?P<bad>\S))"
)


def parse_poly(text):
    """Parse e.g. ``A*B + 2*C - A^2`` into a FormalPoly."""
    terms = []
    sign = 1
    coeff = None
    mono = {}
    started = False
    last_var = None
    expect_exponent = False

    def flush():
        nonlocal sign, coeff, mono, started, last_var
        if not started:
            raise GgmError(f"empty term in polynomial {text!r}")
        c = Fraction(coeff if coeff is not None else 1) * sign
        terms.append(FormalPoly({tuple(sorted(mono.items())): c}))
        sign, coeff, mono, started, last_var = 1, None, {}, False, None

    for match in _TOKEN.finditer(text):
        if match.group("bad"):
            raise GgmError(f"unexpected character {match.group('bad')!r} in {text!r}")
        if match.group("num"):
            num = match.group("num")
            if expect_exponent:
                if "/" in num:
                    raise GgmError("exponents must be integers")
                mono[last_var] += int(num) - 1
                expect_exponent = False
            else:
                value = Fraction(num)
                coeff = value if coeff is None else coeff * value
                started = True
            continue
        if match.group("var"):
            if expect_exponent:
                raise GgmError(f"exponent must be a number in {text!r}")
            v = match.group("var")
            mono[v] = mono.get(v, 0) + 1
            last_var = v
            started = True
            continue
        op = match.group("op")
        if op == "^":
            if last_var is None or expect_exponent:
                raise GgmError(f"dangling '^' in {text!r}")
            expect_exponent = True
        elif op in "+-":
            if expect_exponent:
                raise GgmError(f"dangling '^' in {text!r}")
            if started:
                flush()
            if op == "-":
                sign = -sign
        # '*' is decorative
    if expect_exponent:
        raise GgmError(f"dangling '^' in {text!r}")
    if started:
        flush()
    if not terms:
        raise GgmError(f"empty polynomial {text!r}")
    out = FormalPoly()
    for t in terms:
        out = out + t
    return out


def parse_instance(text, name="custom"):
    """Parse the line-oriented instance format.

    One polynomial per line, prefixed with its section::

        P: 1
        P: A*B
        Q: 1
        R: 1
        T0: A*B*C
        T1: D
        challenge: g1        # optional, defaults to g1

    Blank lines and ``#`` comments are ignored.
    """
    sections = {"P": [], "Q": [], "R": [], "T0": [], "T1": []}
    challenge = "g1"
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if ":" not in line:
            raise GgmError(f"missing section prefix in line {raw!r}")
        key, body = (part.strip() for part in line.split(":", 1))
        if key.lower() == "challenge":
            challenge = body.lower()
            continue
        key = key.upper()
        if key not in sections:
            raise GgmError(f"unknown section {key!r}")
        sections[key].append(parse_poly(body))
    if len(sections["T0"]) != 1 or len(sections["T1"]) != 1:
        raise GgmError("exactly one T0 and one T1 polynomial are required")
    if not sections["R"]:
        sections["R"] = [FormalPoly.const(1)]
    return AssumptionInstance(
        name=name,
        p_list=tuple(sections["P"]),
        q_list=tuple(sections["Q"]),
        r_list=tuple(sections["R"]),
        t0=sections["T0"][0],
        t1=sections["T1"][0],
        challenge=challenge,
    )
