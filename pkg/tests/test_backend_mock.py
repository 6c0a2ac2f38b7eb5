import random

import pytest

from ahibe.backend import BackendError, suite_mock


def test_rejects_bad_orders():
    with pytest.raises(BackendError):
        suite_mock(100, 0)  # composite
    with pytest.raises(BackendError):
        suite_mock(97, 0)  # below the minimum
    with pytest.raises(BackendError):
        suite_mock((1 << 64) + 13, 0)  # too wide for the 8-byte encoding


def test_small_bilinearity(mock101):
    s = mock101
    a = s.exp(s.g1, 3)
    b = s.exp(s.g2, 5)
    assert s.pair(a, b) == s.exp(s.gt, 15)


def test_pairing_identity_case(mock101):
    s = mock101
    zero = s.exp(s.g1, 0)
    assert zero == s.id_g1()
    for b in (0, 1, 57, 100):
        assert s.pair(zero, s.exp(s.g2, b)) == s.id_gt()


def test_seeded_bilinearity_product(mock1009):
    # e(g^a, gh^b) * e(g^c, gh^d) = e(g, gh)^(ab + cd), exponents from the
    # suite's deterministic rng
    s = mock1009
    rng = s.rng()
    a, b, c, d = (s.random_scalar(rng) for _ in range(4))
    lhs = s.pair(s.exp(s.g1, a), s.exp(s.g2, b)) * s.pair(
        s.exp(s.g1, c), s.exp(s.g2, d)
    )
    assert lhs == s.exp(s.gt, (a * b + c * d) % 1009)


def test_exp_examples(mock101):
    s = mock101
    assert s.exp(s.g1, 0) == s.id_g1()
    assert s.exp(s.g1, 1) == s.g1
    base = s.exp(s.g1, 7)
    assert s.exp(base, 15) == s.exp(s.g1, 4)  # 105 mod 101


def test_multi_exp_examples(mock101):
    s = mock101
    a, b = 12, 90
    assert s.multi_exp([s.g1], [a]) == s.exp(s.g1, a)
    assert s.multi_exp([s.g1, s.g1], [a, b]) == s.exp(s.g1, a + b)
    bases = [s.exp(s.g1, e) for e in (2, 3, 5)]
    assert s.multi_exp(bases, [1, 2, 3]) == s.exp(s.g1, 23)


def test_multi_pair_examples(mock101):
    s = mock101
    assert s.multi_pair([s.g1], [s.g2]) == s.pair(s.g1, s.g2)
    xs = [s.exp(s.g1, 2), s.exp(s.g1, 3)]
    ys = [s.exp(s.g2, 5), s.exp(s.g2, 7)]
    assert s.multi_pair(xs, ys) == s.exp(s.gt, 31)


def test_multi_ops_match_folds(mock1009):
    s = mock1009
    rng = random.Random(5)
    for m in range(1, 9):
        bases = [s.exp(s.g2, rng.randrange(1009)) for _ in range(m)]
        scalars = [rng.randrange(1009) for _ in range(m)]
        fold = s.id_g2()
        for base, k in zip(bases, scalars):
            fold = fold * s.exp(base, k)
        assert s.multi_exp(bases, scalars) == fold
        g1s = [s.exp(s.g1, rng.randrange(1009)) for _ in range(m)]
        g2s = [s.exp(s.g2, rng.randrange(1009)) for _ in range(m)]
        prod = s.id_gt()
        for a, b in zip(g1s, g2s):
            prod = prod * s.pair(a, b)
        assert s.multi_pair(g1s, g2s) == prod


def test_multi_op_validation(mock101):
    s = mock101
    with pytest.raises(BackendError):
        s.multi_exp([], [])
    with pytest.raises(BackendError):
        s.multi_exp([s.g1], [1, 2])
    with pytest.raises(BackendError):
        s.multi_pair([s.g1, s.g1], [s.g2])
    with pytest.raises(BackendError):
        s.multi_exp([s.g1, s.g2], [1, 1])


def test_counter_scope(mock101):
    s = mock101
    with s.counting() as ctr:
        s.exp(s.g1, 5)
        s.pair(s.g1, s.g2)
    assert ctr.counts == {"exp_g1": 1, "pair": 1}
    # outside any scope nothing is recorded, and scopes are independent
    s.exp(s.g1, 5)
    with s.counting() as other:
        s.multi_exp([s.g2, s.g2], [1, 2])
    assert other.counts == {("mexp_g2", 2): 1}
    assert ctr.counts == {"exp_g1": 1, "pair": 1}


def test_counter_snapshot_diff(mock101):
    s = mock101
    with s.counting() as ctr:
        s.exp(s.g1, 5)
        before = ctr.snapshot()
        s.exp(s.g1, 6)
        s.exp(s.g2, 7)
    assert ctr.diff(before) == {"exp_g1": 1, "exp_g2": 1}


def test_mock_determinism():
    a = suite_mock(101, 7)
    b = suite_mock(101, 7)
    ra, rb = a.rng(), b.rng()
    seq_a = [a.random_scalar(ra) for _ in range(20)]
    seq_b = [b.random_scalar(rb) for _ in range(20)]
    assert seq_a == seq_b
    assert a.random_gt(a.rng()) == b.random_gt(b.rng())
    assert suite_mock(101, 8).rng().randrange(101) != pytest.approx  # smoke: no crash


def test_serialization_roundtrip(mock1009):
    s = mock1009
    e = s.exp(s.g2, 777)
    data = s.serialize_elem(e)
    assert len(data) == 8
    assert s.deserialize_elem("g2", data) == e
    with pytest.raises(BackendError):
        s.deserialize_elem("g2", (1500).to_bytes(8, "big"))  # out of range


def test_gt_multi_exp_counted(mock101):
    s = mock101
    zs = [s.exp(s.gt, 3), s.exp(s.gt, 4)]
    with s.counting() as ctr:
        out = s.multi_exp(zs, [5, 6])
    assert out == s.exp(s.gt, 39)
    assert ctr.counts == {("mexp_gt", 2): 1}
