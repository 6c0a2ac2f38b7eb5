"""Deterministic mock backend: group elements are their own discrete logs.

An element of G, G-hat or GT is stored as the integer e with the element
being generator**e.  Exponentiation multiplies logs mod p, the pairing
multiplies the two logs.  Bilinearity and all the scheme's exponent-level
identities therefore hold exactly and can be asserted as integer equations.

Not constant-time and not secure; exists so tests can reason about exponents.
"""

from __future__ import annotations

import random

from gmpy2 import is_prime

from . import BackendError, G1Elem, G2Elem, GTElem, GroupSuite

_CLS = {"g1": G1Elem, "g2": G2Elem, "gt": GTElem}


class MockSuite(GroupSuite):
    backend = "mock"

    def __init__(self, p, seed):
        super().__init__()
        p = int(p)
        if p < 101:
            raise BackendError("mock order must be at least 101")
        if p >= 1 << 64:
            raise BackendError("mock order must fit in 8 bytes")
        if not is_prime(p):
            raise BackendError(f"mock order {p} is not prime")
        self.p = p
        self.seed = int(seed)
        self.g1 = G1Elem(self, 1)
        self.g2 = G2Elem(self, 1)
        self.gt = GTElem(self, 1)

    def rng(self):
        """Fresh deterministic RNG derived from (p, seed)."""
        return random.Random((self.p << 64) | self.seed)

    # -- element constructors ----------------------------------------------

    def elem(self, group, log):
        """Element generator**log; test-only shortcut into the representation."""
        return _CLS[group](self, log % self.p)

    def log(self, e):
        """Discrete log of an element (trivially available on this backend)."""
        return e.payload

    def id_g1(self):
        return G1Elem(self, 0)

    def id_g2(self):
        return G2Elem(self, 0)

    def id_gt(self):
        return GTElem(self, 0)

    # -- group operations ----------------------------------------------------

    def mul(self, a, b):
        if type(a) is not type(b):
            raise BackendError("group mismatch in mul")
        return type(a)(self, (a.payload + b.payload) % self.p)

    def inv(self, a):
        return type(a)(self, (-a.payload) % self.p)

    def exp(self, base, k):
        self._tick(f"exp_{base.group}")
        return type(base)(self, base.payload * (int(k) % self.p) % self.p)

    def multi_exp(self, bases, scalars):
        self._check_lists(bases, scalars)
        cls = type(bases[0])
        if any(type(b) is not cls for b in bases):
            raise BackendError("mixed groups in multi_exp")
        self._tick((f"mexp_{bases[0].group}", len(bases)))
        acc = 0
        for b, k in zip(bases, scalars):
            acc += b.payload * (int(k) % self.p)
        return cls(self, acc % self.p)

    def pair(self, a, b):
        self._check_elem(a, G1Elem)
        self._check_elem(b, G2Elem)
        self._tick("pair")
        return GTElem(self, a.payload * b.payload % self.p)

    def multi_pair(self, xs, ys):
        self._check_lists(xs, ys)
        self._tick(("mpair", len(xs)))
        acc = 0
        for a, b in zip(xs, ys):
            self._check_elem(a, G1Elem)
            self._check_elem(b, G2Elem)
            acc += a.payload * b.payload
        return GTElem(self, acc % self.p)

    def _gt_power_uncounted(self, k):
        return GTElem(self, int(k) % self.p)

    # -- serialization --------------------------------------------------------

    def serialize_elem(self, e):
        return int(e.payload).to_bytes(8, "big")

    def deserialize_elem(self, group, data):
        if len(data) != 8:
            raise BackendError("mock element encoding must be 8 bytes")
        val = int.from_bytes(data, "big")
        if val >= self.p:
            raise BackendError("mock element exponent out of range")
        return _CLS[group](self, val)

    def elem_size(self, group):
        return 8

    def suite_params(self):
        return self.p.to_bytes(8, "big") + self.seed.to_bytes(8, "big")

    @classmethod
    def from_params(cls, data):
        if len(data) != 16:
            raise BackendError("bad mock suite parameters")
        return cls(int.from_bytes(data[:8], "big"), int.from_bytes(data[8:], "big"))
