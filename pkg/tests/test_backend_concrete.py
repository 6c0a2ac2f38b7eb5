import random

import pytest

from ahibe.backend import BackendError, suite_concrete


def test_unknown_curve_rejected():
    with pytest.raises(BackendError):
        suite_concrete("mnt175")


def test_bilinearity_hundred_trials(concrete):
    s = concrete
    rng = random.Random(2024)
    for _ in range(100):
        a = s.random_scalar(rng)
        b = s.random_scalar(rng)
        assert s.pair(s.exp(s.g1, a), s.exp(s.g2, b)) == s.exp(
            s.gt, a * b % s.p
        )


def test_pairing_generates_gt(concrete):
    assert concrete.gt != concrete.id_gt()
    assert concrete.pair(concrete.g1, concrete.g2) == concrete.gt


def test_pair_with_identity(concrete):
    s = concrete
    assert s.pair(s.id_g1(), s.g2) == s.id_gt()
    assert s.pair(s.g1, s.id_g2()) == s.id_gt()


def test_exp_degenerate_cases(concrete):
    s = concrete
    assert s.exp(s.g1, 0) == s.id_g1()
    assert s.exp(s.g1, 1) == s.g1
    assert s.exp(s.g2, s.p) == s.id_g2()
    assert s.exp(s.gt, 0) == s.id_gt()


def test_multi_ops_match_folds(concrete):
    s = concrete
    rng = random.Random(99)
    for m in range(1, 9):
        for gen in (s.g1, s.g2):
            bases = [s.exp(gen, rng.randrange(1, 2**20)) for _ in range(m)]
            scalars = [s.random_scalar(rng) for _ in range(m)]
            fold = s.identity(gen.group)
            for base, k in zip(bases, scalars):
                fold = fold * s.exp(base, k)
            assert s.multi_exp(bases, scalars) == fold
        xs = [s.exp(s.g1, rng.randrange(1, 2**20)) for _ in range(m)]
        ys = [s.exp(s.g2, rng.randrange(1, 2**20)) for _ in range(m)]
        prod = s.id_gt()
        for a, b in zip(xs, ys):
            prod = prod * s.pair(a, b)
        assert s.multi_pair(xs, ys) == prod


def test_serialization_bit_exact_roundtrip(concrete):
    s = concrete
    rng = random.Random(7)
    for group, gen in (("g1", s.g1), ("g2", s.g2), ("gt", s.gt)):
        e = s.exp(gen, s.random_scalar(rng))
        data = s.serialize_elem(e)
        assert len(data) == s.elem_size(group)
        again = s.deserialize_elem(group, data)
        assert again == e
        assert s.serialize_elem(again) == data
    assert s.serialize_elem(s.id_g1())[0] == 0xC0


def test_deserialize_rejects_tampering(concrete):
    s = concrete
    data = bytearray(s.serialize_elem(s.exp(s.g1, 12345)))
    data[7] ^= 0x40
    with pytest.raises(BackendError):
        s.deserialize_elem("g1", bytes(data))


def test_counting_scope(concrete):
    s = concrete
    with s.counting() as ctr:
        s.exp(s.g1, 3)
        s.pair(s.g1, s.g2)
        s.multi_pair([s.g1] * 3, [s.g2] * 3)
    assert ctr.counts == {"exp_g1": 1, "pair": 1, ("mpair", 3): 1}


def test_inverse_and_mul(concrete):
    s = concrete
    a = s.exp(s.g1, 555)
    assert a * a.inv() == s.id_g1()
    z = s.exp(s.gt, 777)
    assert z * z.inv() == s.id_gt()
