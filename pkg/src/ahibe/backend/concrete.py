"""Concrete backend over BLS12-381 (type-III, >= 128-bit security).

Thin counting/validation layer over the arithmetic provider in
:mod:`ahibe.backend.bls12381`.  G1/G2 payloads are affine points (None is
the identity); GT payloads are Fq12 elements of the order-r subgroup.
"""

from __future__ import annotations

import secrets

from . import BackendError, G1Elem, G2Elem, GTElem, GroupSuite
from . import bls12381 as curve


class Bls12381Suite(GroupSuite):
    backend = "bls12-381"
    curve_id = "bls12-381"

    def __init__(self):
        super().__init__()
        self.p = int(curve.R)
        self.g1 = G1Elem(self, curve.G1_GEN)
        self.g2 = G2Elem(self, curve.G2_GEN)
        self.gt = GTElem(self, curve.pairing(curve.G1_GEN, curve.G2_GEN))

    def rng(self):
        return secrets.SystemRandom()

    def id_g1(self):
        return G1Elem(self, None)

    def id_g2(self):
        return G2Elem(self, None)

    def id_gt(self):
        return GTElem(self, curve.F12_ONE)

    # -- group operations ----------------------------------------------------

    def mul(self, a, b):
        if type(a) is not type(b):
            raise BackendError("group mismatch in mul")
        if isinstance(a, G1Elem):
            return G1Elem(self, curve.g1_add(a.payload, b.payload))
        if isinstance(a, G2Elem):
            return G2Elem(self, curve.g2_add(a.payload, b.payload))
        return GTElem(self, curve.f12_mul(a.payload, b.payload))

    def inv(self, a):
        if isinstance(a, G1Elem):
            return G1Elem(self, curve.g1_neg(a.payload))
        if isinstance(a, G2Elem):
            return G2Elem(self, curve.g2_neg(a.payload))
        # GT values live in the cyclotomic subgroup: conjugation inverts
        return GTElem(self, curve.f12_conj(a.payload))

    def exp(self, base, k):
        self._tick(f"exp_{base.group}")
        k = int(k) % self.p
        if isinstance(base, G1Elem):
            return G1Elem(self, curve.g1_mul(base.payload, k))
        if isinstance(base, G2Elem):
            return G2Elem(self, curve.g2_mul(base.payload, k))
        return GTElem(self, curve.gt_pow(base.payload, k))

    def multi_exp(self, bases, scalars):
        self._check_lists(bases, scalars)
        cls = type(bases[0])
        if any(type(b) is not cls for b in bases):
            raise BackendError("mixed groups in multi_exp")
        self._tick((f"mexp_{bases[0].group}", len(bases)))
        ks = [int(k) % self.p for k in scalars]
        if cls is G1Elem:
            return G1Elem(self, curve.g1_msm([b.payload for b in bases], ks))
        if cls is G2Elem:
            return G2Elem(self, curve.g2_msm([b.payload for b in bases], ks))
        acc = curve.F12_ONE
        for b, k in zip(bases, ks):
            acc = curve.f12_mul(acc, curve.gt_pow(b.payload, k))
        return GTElem(self, acc)

    def pair(self, a, b):
        self._check_elem(a, G1Elem)
        self._check_elem(b, G2Elem)
        self._tick("pair")
        return GTElem(self, curve.pairing(a.payload, b.payload))

    def multi_pair(self, xs, ys):
        self._check_lists(xs, ys)
        for a, b in zip(xs, ys):
            self._check_elem(a, G1Elem)
            self._check_elem(b, G2Elem)
        self._tick(("mpair", len(xs)))
        f = curve.multi_miller_loop(
            [a.payload for a in xs], [b.payload for b in ys]
        )
        return GTElem(self, curve.final_exponentiation(f))

    def _gt_power_uncounted(self, k):
        return GTElem(self, curve.gt_pow(self.gt.payload, int(k) % self.p))

    # -- serialization --------------------------------------------------------

    def serialize_elem(self, e):
        if isinstance(e, G1Elem):
            return curve.g1_to_bytes(e.payload)
        if isinstance(e, G2Elem):
            return curve.g2_to_bytes(e.payload)
        return curve.gt_to_bytes(e.payload)

    def deserialize_elem(self, group, data):
        try:
            if group == "g1":
                return G1Elem(self, curve.g1_from_bytes(data))
            if group == "g2":
                return G2Elem(self, curve.g2_from_bytes(data))
            return GTElem(self, curve.gt_from_bytes(data))
        except ValueError as exc:
            raise BackendError(str(exc)) from None

    def elem_size(self, group):
        return {"g1": 48, "g2": 96, "gt": 576}[group]

    def suite_params(self):
        return self.curve_id.encode()

    @classmethod
    def from_params(cls, data):
        if data.decode(errors="replace") != cls.curve_id:
            raise BackendError("unsupported curve in serialized suite")
        return cls()
