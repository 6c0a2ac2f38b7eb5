"""Uniform interface over asymmetric bilinear groups.

Two interchangeable backends sit behind :class:`GroupSuite`:

* ``suite_concrete("bls12-381")`` -- a real type-III pairing-friendly curve
  at the >= 128-bit security level.
* ``suite_mock(p, seed)`` -- a deterministic toy backend over a small prime
  where every group element is represented by its discrete log relative to
  the fixed generator.  Exponentiation scales logs, the pairing multiplies
  them.  All algebraic identities of the scheme become exact integer
  equations, which is what the test suite leans on.

Operation counting is opt-in per scope::

    with suite.counting() as ctr:
        suite.exp(suite.g1, 5)
    assert ctr.counts == {"exp_g1": 1}

Suites and elements are immutable and safe to share; a counting scope is
confined to a single thread of execution.
"""

from __future__ import annotations

from contextlib import contextmanager

__all__ = [
    "G1Elem",
    "G2Elem",
    "GTElem",
    "GroupSuite",
    "OperationCounter",
    "suite_concrete",
    "suite_mock",
    "BackendError",
]


class BackendError(ValueError):
    """Raised for invalid backend parameters or malformed elements."""


class _Elem:
    """Opaque group element; equality and hashing compare payloads."""

    __slots__ = ("suite", "payload")
    group = None  # overridden per subclass

    def __init__(self, suite, payload):
        self.suite = suite
        self.payload = payload

    def __mul__(self, other):
        if type(other) is not type(self):
            return NotImplemented
        return self.suite.mul(self, other)

    def inv(self):
        return self.suite.inv(self)

    def __eq__(self, other):
        return type(other) is type(self) and self.payload == other.payload

    def __hash__(self):
        return hash((self.group, self.payload))

    def __repr__(self):
        return f"<{type(self).__name__} {self.suite.backend}>"


class G1Elem(_Elem):
    __slots__ = ()
    group = "g1"


class G2Elem(_Elem):
    __slots__ = ()
    group = "g2"


class GTElem(_Elem):
    __slots__ = ()
    group = "gt"


class OperationCounter:
    """Counts expensive group operations within a measurement scope.

    Keys are ``exp_g1`` / ``exp_g2`` / ``exp_gt`` / ``pair`` for single
    operations and ``("mexp_g1", m)`` / ``("mexp_g2", m)`` / ``("mexp_gt", m)``
    / ``("mpair", m)`` for m-term ones.
    """

    def __init__(self):
        self.counts = {}

    def bump(self, key, n=1):
        self.counts[key] = self.counts.get(key, 0) + n

    def snapshot(self):
        return dict(self.counts)

    def diff(self, earlier):
        out = {}
        for key, val in self.counts.items():
            delta = val - earlier.get(key, 0)
            if delta:
                out[key] = delta
        return out

    def total(self):
        return sum(self.counts.values())


class GroupSuite:
    """Shared machinery: counting scopes, validation, scalar sampling."""

    backend = None

    def __init__(self):
        self._counter_stack = []

    # -- counting ---------------------------------------------------------

    @contextmanager
    def counting(self):
        ctr = OperationCounter()
        self._counter_stack.append(ctr)
        try:
            yield ctr
        finally:
            self._counter_stack.remove(ctr)

    def _tick(self, key):
        for ctr in self._counter_stack:
            ctr.bump(key)

    # -- shared validation ------------------------------------------------

    def _check_elem(self, e, cls):
        if not isinstance(e, cls) or e.suite.backend != self.backend:
            raise BackendError(f"expected a {cls.__name__} of this suite")
        return e

    @staticmethod
    def _check_lists(xs, ys):
        if len(xs) == 0:
            raise BackendError("multi-operation needs at least one term")
        if len(xs) != len(ys):
            raise BackendError("length mismatch in multi-operation")

    # -- operations implemented per backend --------------------------------

    def exp(self, base, k):
        """base**k, counting one exponentiation in base's group."""
        raise NotImplementedError

    def multi_exp(self, bases, scalars):
        """prod(bases[i] ** scalars[i]), counting one m-term multi-exp."""
        raise NotImplementedError

    def pair(self, a, b):
        raise NotImplementedError

    def multi_pair(self, xs, ys):
        raise NotImplementedError

    def mul(self, a, b):
        raise NotImplementedError

    def inv(self, a):
        raise NotImplementedError

    # -- helpers shared by both backends ------------------------------------

    def random_scalar(self, rng):
        return rng.randrange(self.p)

    def random_nonzero_scalar(self, rng):
        return rng.randrange(1, self.p)

    def random_gt(self, rng):
        """Uniform GT element (used as a KEM payload); not a counted op."""
        return self._gt_power_uncounted(rng.randrange(self.p))

    def identity(self, group):
        return {"g1": self.id_g1, "g2": self.id_g2, "gt": self.id_gt}[group]()


def suite_mock(p, seed):
    from . import mock

    return mock.MockSuite(p, seed)


def suite_concrete(curve_id="bls12-381"):
    from . import concrete

    if curve_id in ("bls12-381", "default"):
        return concrete.Bls12381Suite()
    raise BackendError(f"unknown curve identifier: {curve_id!r}")
