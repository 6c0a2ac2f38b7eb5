import random

import pytest

from ahibe.backend import suite_concrete, suite_mock


class ScriptedRng:
    """Feeds a fixed sequence of values to randrange, then a fallback rng.

    The scheme functions document their draw order, so a test can pin any
    subset of exponents (t = 0, gamma = 1, ...) by position.
    """

    def __init__(self, values, fallback_seed=1234):
        self.values = list(values)
        self.fallback = random.Random(fallback_seed)

    def randrange(self, *args):
        if self.values:
            return self.values.pop(0)
        return self.fallback.randrange(*args)


class RecordingRng:
    """Wraps an rng and records every scalar it hands out."""

    def __init__(self, seed):
        self.inner = random.Random(seed)
        self.drawn = []

    def randrange(self, *args):
        value = self.inner.randrange(*args)
        self.drawn.append(value)
        return value


@pytest.fixture
def mock101():
    return suite_mock(101, 7)


@pytest.fixture
def mock1009():
    return suite_mock(1009, 42)


@pytest.fixture(scope="session")
def concrete():
    return suite_concrete()
