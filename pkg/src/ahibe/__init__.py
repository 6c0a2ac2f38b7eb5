"""Anonymous hierarchical identity-based encryption over asymmetric pairings.

Library layout:

* :mod:`ahibe.backend` -- bilinear group suites (concrete BLS12-381 and a
  deterministic mock) with opt-in operation counting;
* :mod:`ahibe.scheme` -- setup / keygen / delegate / encrypt / decrypt;
* :mod:`ahibe.semifunctional` -- dual-system proof machinery (test-only);
* :mod:`ahibe.ggm` -- symbolic generic-group assumption checker;
* :mod:`ahibe.costs` / :mod:`ahibe.bench` -- operation-count model and
  wall-clock benchmark harness;
* :mod:`ahibe.wire` / :mod:`ahibe.hybrid` / :mod:`ahibe.cli` -- file
  formats, KEM+AEAD hybrid encryption, command-line tool.
"""

from .backend import suite_concrete, suite_mock
from .scheme import decrypt, delegate, encrypt, keygen, setup

__all__ = [
    "suite_concrete",
    "suite_mock",
    "setup",
    "keygen",
    "delegate",
    "encrypt",
    "decrypt",
]

__version__ = "0.1.0"
