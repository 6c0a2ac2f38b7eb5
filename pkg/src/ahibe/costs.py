"""Operation-count model for the five scheme algorithms.

``predicted_counts`` returns the exact counts of the fixed implementation
strategy in :mod:`ahibe.scheme`; ``verify_counts`` runs an algorithm under
an operation counter and checks the prediction class by class.

The reference cost formulas this model restates are stated as ">=" lower
bounds and omit a constant number of per-key triples.  The
``reference_lower_bound`` vectors keep those original constants so tests
can check dominance and the per-level slopes (4 and 2 for key generation,
6 for delegation) while the pinned predictions stay exactly achievable.

Identity products over d levels are computed as one (d+1)-term
multi-exponentiation (coefficient 1 on the h-part), so predicted vectors
use that arity throughout.
"""

from __future__ import annotations

import random

from . import scheme

__all__ = [
    "CostVector",
    "CostError",
    "predicted_counts",
    "reference_lower_bound",
    "measured_counts",
    "verify_counts",
    "ALGORITHMS",
]

ALGORITHMS = ("setup", "keygen", "delegate", "encrypt", "decrypt")


class CostError(ValueError):
    pass


class CostVector(dict):
    """Counts per operation class; same keys as OperationCounter."""

    def __init__(self, items=()):
        super().__init__()
        for key, val in dict(items).items():
            self.add(key, val)

    def add(self, key, val):
        if val < 0:
            raise CostError("operation counts cannot be negative")
        if val:
            self[key] = self.get(key, 0) + val

    def total(self):
        return sum(self.values())


def _check_args(alg, l, d):
    if alg not in ALGORITHMS:
        raise CostError(f"unknown algorithm {alg!r}")
    if l < 1:
        raise CostError("maximum depth must be at least 1")
    if not 0 <= d <= l:
        raise CostError(f"depth {d} outside 0..{l}")


def predicted_counts(alg, l, d=0):
    """Exact operation counts of the implemented strategy."""
    _check_args(alg, l, d)
    out = CostVector()
    if alg == "setup":
        out.add("exp_g1", 3 * l + 5)
        out.add("exp_g2", l + 5)
        out.add("pair", 1)
    elif alg == "keygen":
        out.add("exp_g2", 4 * (l - d) + 8)
        out.add(("mexp_g2", 2), 2 * (l - d) + 4)
        if d > 0:
            out.add(("mexp_g2", d + 1), 1)
    elif alg == "delegate":
        if d < 1:
            raise CostError("delegation targets depth at least 1")
        out.add("exp_g2", 6)
        out.add(("mexp_g2", 2), 6 * (l - d) + 12)
    elif alg == "encrypt":
        out.add("exp_g1", 6)
        out.add("exp_gt", 1)
        if d > 0:
            out.add(("mexp_g1", d + 1), 3)
    else:  # decrypt
        out.add(("mpair", 3), 2)
    return out


def reference_lower_bound(alg, l, d=0):
    """The reference ">=" cost formulas, (d+1)-term convention applied."""
    _check_args(alg, l, d)
    out = CostVector()
    if alg == "setup":
        out.add("exp_g1", 2 * l + 4)
        out.add("exp_g2", 2)
        out.add("pair", 1)
    elif alg == "keygen":
        out.add("exp_g2", 4 * (l - d) + 4)
        out.add(("mexp_g2", 2), 2 * (l - d) + 2)
        if d > 0:
            out.add(("mexp_g2", d + 1), 1)
    elif alg == "delegate":
        out.add("exp_g2", 9)
        out.add(("mexp_g2", 2), 6 * (l - d) + 6)
    elif alg == "encrypt":
        out.add("exp_g1", 6)
        out.add("exp_gt", 1)
        if d > 0:
            out.add(("mexp_g1", d + 1), 3)
    else:
        out.add(("mpair", 3), 2)
    return out


def _identity_for(suite, d, rng):
    return tuple(suite.random_nonzero_scalar(rng) for _ in range(d))


def measured_counts(alg, l, d, suite, seed=0):
    """Run the algorithm once under a counter and return the counts."""
    _check_args(alg, l, d)
    if alg == "delegate" and d < 1:
        raise CostError("delegation targets depth at least 1")
    rng = random.Random(seed)
    if alg == "setup":
        with suite.counting() as ctr:
            scheme.setup(suite, l, rng)
        return CostVector(ctr.counts)
    mk, pp, _ = scheme.setup(suite, l, rng)
    ident = _identity_for(suite, d, rng)
    if alg == "keygen":
        with suite.counting() as ctr:
            scheme.keygen(ident, mk, pp, rng)
    elif alg == "delegate":
        parent = scheme.keygen(ident[:-1], mk, pp, rng)
        with suite.counting() as ctr:
            scheme.delegate(ident, parent, pp, rng)
    elif alg == "encrypt":
        msg = suite.random_gt(rng)
        with suite.counting() as ctr:
            scheme.encrypt(ident, msg, pp, rng)
    else:
        sk = scheme.keygen(ident, mk, pp, rng)
        ct = scheme.encrypt(ident, suite.random_gt(rng), pp, rng)
        with suite.counting() as ctr:
            scheme.decrypt(ct, sk, pp)
    return CostVector(ctr.counts)


def verify_counts(alg, l, d, suite, seed=0):
    """True iff instrumented counts equal predicted_counts class by class."""
    return measured_counts(alg, l, d, suite, seed) == predicted_counts(alg, l, d)
