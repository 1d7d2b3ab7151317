import math
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from merodiff.dkp import RTable
from merodiff.firstcount import (
    FirstProfile,
    ProfileClass,
    ProfileError,
    classify_profile,
    count_first,
    count_first_closed_n2,
    count_first_coeff,
    count_first_dkp,
    count_first_sl2,
    cross_check_first,
    expected_dimension,
    first_profiles,
    pole_multisets,
)
from merodiff.oracles import DegreeBoundError

TABLE = RTable().fill(16)

EXAMPLES = [((1, 1, (2, 2)), 1), ((2, 2, (3, 3)), 2), ((2, 2, (2, 2, 2)), 2)]


@pytest.mark.parametrize("args, want", EXAMPLES)
@pytest.mark.parametrize("method", [count_first_coeff, count_first_sl2, count_first])
def test_worked_examples(args, want, method):
    assert method(FirstProfile(*args)) == want


@pytest.mark.parametrize("args, want", EXAMPLES + [((1, 3, (3, 3)), 1)])
def test_dkp_method_on_examples(args, want):
    assert count_first_dkp(FirstProfile(*args), TABLE) == want


def test_closed_n2_examples():
    assert count_first_closed_n2(1, 1, 2, 2) == 1
    assert count_first_closed_n2(2, 2, 3, 3) == 2
    assert count_first_closed_n2(0, 4, 3, 3) == 0


def test_closed_n2_checks_balance():
    with pytest.raises(ProfileError):
        count_first_closed_n2(1, 1, 2, 3)


def test_profile_validation():
    with pytest.raises(ProfileError):
        FirstProfile(1, 1, (2, 3))
    with pytest.raises(ProfileError):
        FirstProfile(-1, 1, (2,))
    with pytest.raises(ProfileError):
        FirstProfile(0, 0, ())
    with pytest.raises(ProfileError):
        FirstProfile(0, 1, (1, 2))


def test_profile_properties():
    p = FirstProfile(2, 2, (2, 2, 2))
    assert (p.n, p.degree, str(p)) == (3, 3, "(2,2;-2,-2,-2)")


def test_full_cross_check_example_one():
    rep = cross_check_first(FirstProfile(1, 1, (2, 2)), ["coeff", "sl2", "dkp", "hurwitz", "oracle"])
    assert rep.agree and rep.value == 1
    assert set(rep.per_method) == {"coeff", "sl2", "dkp", "hurwitz", "oracle"}


def test_default_methods_example_two():
    rep = cross_check_first(FirstProfile(2, 2, (3, 3)))
    assert rep.agree and rep.value == 2
    assert rep.as_dict()["value"] == "2"


def test_cross_check_reports_disagreement():
    table = RTable().perturbed(2, 2, TABLE.get(1, 3))
    rep = cross_check_first(FirstProfile(1, 1, (2, 2)), ["coeff", "dkp"], table)
    assert rep.agree  # R_{2,2} gains w3, which a two-pole derivative in w1 never sees
    rep = cross_check_first(FirstProfile(1, 1, (4,)), ["coeff", "dkp"], table)
    assert not rep.agree and rep.value is None


def test_cross_check_method_preconditions():
    p = FirstProfile(2, 2, (2, 2, 2))
    with pytest.raises(ValueError):
        cross_check_first(p, ["oracle"])
    with pytest.raises(DegreeBoundError):
        cross_check_first(FirstProfile(5, 5, (6, 6)), ["hurwitz"])
    with pytest.raises(ValueError):
        cross_check_first(p, ["nonsense"])


@pytest.mark.parametrize("weight", range(2, 15))
def test_three_closed_methods_agree(weight):
    for p in first_profiles(weight):
        if sum(p.poles) != weight:
            continue
        coeff = count_first_coeff(p)
        assert count_first_sl2(p) == coeff
        dkp = count_first_dkp(p, TABLE)
        assert dkp == coeff and dkp.denominator == 1 and dkp >= 0


@pytest.mark.parametrize("weight", range(2, 13))
def test_oracles_agree(weight):
    for p in first_profiles(weight):
        if sum(p.poles) != weight:
            continue
        methods = []
        if p.degree <= 6:
            methods.append("hurwitz")
        if p.n <= 2:
            methods.append("oracle")
        if methods:
            rep = cross_check_first(p, methods + ["coeff"], TABLE)
            assert rep.agree, rep.as_dict()


def test_single_pole_count_is_one():
    for c in range(2, 15):
        for a in range(c - 1):
            assert count_first_coeff(FirstProfile(a, c - 2 - a, (c,))) == 1


def test_n2_closed_form_to_twenty():
    for s in range(4, 21):
        for c1 in range(2, s - 1):
            for a in range(s - 1):
                b, c2 = s - 2 - a, s - c1
                assert count_first_coeff(FirstProfile(a, b, (c1, c2))) == min(a, b, c1 - 1, c2 - 1)


profiles = st.lists(st.integers(2, 6), min_size=1, max_size=4).flatmap(
    lambda poles: st.integers(0, sum(poles) - 2).map(
        lambda a: FirstProfile(a, sum(poles) - 2 - a, poles)))


@given(profiles, st.randoms())
def test_symmetry_in_zeros_and_poles(p, rnd):
    poles = list(p.poles)
    rnd.shuffle(poles)
    q = FirstProfile(p.b, p.a, poles)
    for method in (count_first_coeff, count_first_sl2):
        assert method(p) == method(q)
    assert count_first_dkp(p, TABLE) == count_first_dkp(q, TABLE)


@given(profiles)
def test_fast_count_matches_coefficient_method(p):
    assert count_first(p) == count_first_coeff(p)


def test_pole_multisets():
    assert list(pole_multisets(6)) == [(6,), (4, 2), (3, 3), (2, 2, 2)]
    assert list(pole_multisets(0)) == [()]
    assert list(pole_multisets(1)) == []


def test_profile_enumeration_size():
    profiles = list(first_profiles(14))
    assert len(profiles) == len(set(profiles))
    assert len(profiles) == sum(
        len(list(pole_multisets(s))) * (s - 1) for s in range(2, 15))


# -- classification -----------------------------------------------------------------

@pytest.mark.parametrize("a", range(0, 5))
def test_points(a):
    assert classify_profile([0, a], [-a - 2]) is ProfileClass.FINITE_POINT


def test_first_type():
    assert classify_profile([1, 1], [-2, -2]) is ProfileClass.FINITE_FIRST_TYPE


def test_second_type():
    assert classify_profile([3, -1, -1], [-3]) is ProfileClass.FINITE_SECOND_TYPE
    assert classify_profile([4, -2, -2], [-2]) is ProfileClass.FINITE_SECOND_TYPE


def test_positive_dimension():
    A = [1, 1, 1]
    assert expected_dimension(A) == 1
    assert classify_profile(A, [-5]) is ProfileClass.POSITIVE_DIM


def test_classify_balance():
    with pytest.raises(ProfileError):
        classify_profile([1, 1], [-2])
    with pytest.raises(ProfileError):
        classify_profile([1, 2], [-1, -2, -2])
