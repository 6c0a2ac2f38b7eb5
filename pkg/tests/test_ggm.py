import random
from fractions import Fraction

import pytest

from ahibe import ggm
from ahibe.ggm import FormalPoly

A, B, C, D = (FormalPoly.var(v) for v in "ABCD")
ONE = FormalPoly.const(1)


def test_poly_arithmetic():
    assert (A + B) * (A - B) == A * A - B * B
    assert (A + 1) ** 2 == A * A + 2 * A + 1
    assert 2 * A + A == 3 * A
    assert (A - A).is_zero()
    assert (A * B * C).total_degree() == 3
    assert (Fraction(1, 2) * A + Fraction(1, 2) * A) == A


def test_dependent_on_membership():
    assert ggm.dependent_on(A * B, [ONE, A, B, C, A * B, A * A * B])


def test_dependent_on_degree_three_differs():
    assert not ggm.dependent_on(A * B * C, [ONE, A, B, C, A * B, A * A * B])


def test_dependent_on_linear_combination():
    assert ggm.dependent_on(2 * A + 3 * B, [A, B])


def test_dependent_on_scaling_invariance():
    rng = random.Random(4)
    polys = [ONE, A, B, A * B + C]
    targets = [A + B, A * B, C - A, A * B + C]
    for t in targets:
        base = ggm.dependent_on(t, polys)
        for _ in range(5):
            scale = rng.randrange(1, 50)
            assert ggm.dependent_on(scale * t, polys) == base


def test_pairing_dependent_direct_match():
    # e(T, A) = A^2 available in the target list
    assert ggm.pairing_dependent(A, [ONE], [A], [A * A])


def test_pairing_dependent_fresh_variable():
    assert not ggm.pairing_dependent(D, [ONE, A, B], [ONE, A], [ONE])


def test_pairing_dependent_monotone_in_r():
    rng = random.Random(9)
    p_list = [ONE, A, B]
    q_list = [ONE, A]
    t = A * B
    extras = [B * B, A * C, C, A * A * B]
    base_r = [ONE]
    was = ggm.pairing_dependent(t, p_list, q_list, base_r)
    grown = list(base_r)
    for _ in range(6):
        grown.append(extras[rng.randrange(len(extras))])
        now = ggm.pairing_dependent(t, p_list, q_list, grown)
        assert now or not was  # true never flips back to false
        was = was or now


def test_assumption5_transcription():
    inst = ggm.builtin_assumption(5)
    assert set(inst.p_list) == {ONE, A, B, C, A * B, A * A * B}
    assert set(inst.q_list) == {ONE, A, B}
    assert set(inst.r_list) == {ONE}
    assert inst.t0 == A * B * C
    assert inst.t1 == D
    lifts = {inst.t0 * q for q in inst.q_list}
    assert lifts == {A * B * C, A * A * B * C, A * B * B * C}


def test_assumption3_roles_swapped():
    inst = ggm.builtin_assumption(3)
    assert inst.challenge == "g2"
    assert set(inst.p_list) == {ONE}
    assert set(inst.q_list) == {ONE, A, B}
    assert inst.t0 == A * B


def test_all_builtins_generic_secure():
    for n in range(1, 6):
        verdict = ggm.check_assumption(ggm.builtin_assumption(n))
        assert verdict.generic_secure, (n, verdict)
        assert verdict.t_dependent_on_p == (False, False)
        assert verdict.pairing_dependent == (False, False)


def test_builtin_range_validation():
    with pytest.raises(ggm.GgmError):
        ggm.builtin_assumption(0)
    with pytest.raises(ggm.GgmError):
        ggm.builtin_assumption(6)


def test_mutated_instance_flagged():
    a5 = ggm.builtin_assumption(5)
    mutant = ggm.AssumptionInstance(
        name="mutant", p_list=a5.p_list, q_list=a5.q_list, r_list=a5.r_list,
        t0=A * B, t1=D, challenge="g1",
    )
    verdict = ggm.check_assumption(mutant)
    assert not verdict.generic_secure
    assert verdict.t_dependent_on_p[0]


def test_assumption5_bound_numbers():
    verdict = ggm.check_assumption(ggm.builtin_assumption(5))
    assert verdict.list_size == 6  # max(|P|, |Q|, |R|) = max(6, 3, 1)
    assert verdict.max_degree == 4  # from the degree-4 lift A^2*B*C
    assert verdict.bound == "3(q+12)^2*4/p"
    assert verdict.bound_value(0, 101) == Fraction(1728, 101)
    assert verdict.bound_value(10, 10**9) == Fraction(3 * 22 * 22 * 4, 10**9)


def test_instance_validation():
    with pytest.raises(ggm.GgmError):
        ggm.AssumptionInstance(
            name="bad", p_list=(), q_list=(ONE,), r_list=(ONE,),
            t0=A, t1=B,
        )
    with pytest.raises(ggm.GgmError):
        ggm.AssumptionInstance(
            name="bad", p_list=(ONE,), q_list=(ONE,), r_list=(ONE,),
            t0=A, t1=A,
        )


def test_exactness_rational_coefficients():
    # coefficients that would break under floating point stay exact
    big = Fraction(1, 3 ** 40)
    t = big * A + B
    assert ggm.dependent_on(t, [A, B])
    assert not ggm.dependent_on(t, [A + B])


def test_parse_poly():
    assert ggm.parse_poly("A*B + 2*C") == A * B + 2 * C
    assert ggm.parse_poly("A^2*B - B + 2*C") == A * A * B - B + 2 * C
    assert ggm.parse_poly("1") == ONE
    assert ggm.parse_poly("-A") == -A
    assert ggm.parse_poly("3/2*A") == Fraction(3, 2) * A
    with pytest.raises(ggm.GgmError):
        ggm.parse_poly("A^")
    with pytest.raises(ggm.GgmError):
        ggm.parse_poly("A ? B")


def test_parse_instance_roundtrip():
    text = """
    # asymmetric three-party style instance
    P: 1
    P: A
    P: B
    Q: 1
    Q: A
    R: 1
    T0: A*B
    T1: D
    """
    inst = ggm.parse_instance(text, name="from-text")
    verdict = ggm.check_assumption(inst)
    assert verdict.name == "from-text"
    assert isinstance(verdict.generic_secure, bool)
    with pytest.raises(ggm.GgmError):
        ggm.parse_instance("P: A")  # missing challenges
