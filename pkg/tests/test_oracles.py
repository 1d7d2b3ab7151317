import itertools
import math
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from merodiff import oracles
from merodiff.oracles import (
    DegreeBoundError,
    RamificationData,
    count_admissible_roots,
    cycle_type,
    example3_regression,
    genus_check,
    hurwitz_count,
    hurwitz_first,
    residue_count_first_n1,
    residue_count_first_n2,
    residue_count_first_n2_detail,
    residue_count_second_n1,
    residue_poly_first_n2,
)

F = Fraction


# -- Hurwitz --------------------------------------------------------------------

def _naive_hurwitz(r: RamificationData) -> Fraction:
    """Every (s1, s3) pair over all of S_d, no class shortcut."""
    d = r.d
    types = [tuple(sorted(list(m) + [1] * (d - sum(m)), reverse=True)) for m in r.marks]
    perms = list(itertools.permutations(range(d)))
    count = 0
    for s1 in perms:
        if cycle_type(s1) != types[0]:
            continue
        for s3 in perms:
            if cycle_type(s3) != types[2]:
                continue
            prod = [s3[s1[k]] for k in range(d)]
            s2 = [0] * d
            for k, v in enumerate(prod):
                s2[v] = k
            if cycle_type(s2) != types[1]:
                continue
            # orbit of 0 under the group generated by s1, s3
            seen, todo = {0}, [0]
            while todo:
                x = todo.pop()
                for g in (s1, s3):
                    if g[x] not in seen:
                        seen.add(g[x])
                        todo.append(g[x])
            if len(seen) == d:
                count += 1
    weight = 1
    for t, parts in zip(types, r.marks):
        # ordered choice of a distinct cycle of each marked length
        for length, need in {m: list(parts).count(m) for m in parts}.items():
            weight *= math.perm(t.count(length), need)
    return F(count * weight, math.factorial(d))


def test_degree_two_double_cover():
    assert hurwitz_count(RamificationData(2, ((2,), (2,), (1, 1)))) == 1


def test_parity_obstruction():
    assert hurwitz_count(RamificationData(3, ((2,), (1,), (1,)))) == 0


@pytest.mark.parametrize("marks", [
    ((2,), (2,), (1, 1)),
    ((3,), (2,), (2,)),
    ((2,), (3,), (1, 2)),
    ((3,), (3,), (1, 1, 1)),
    ((4,), (2,), (3,)),
    ((2,), (2,), (1, 1, 1)),
])
def test_hurwitz_matches_naive_enumeration(marks):
    d = max(sum(m) for m in marks)
    r = RamificationData(d, marks)
    assert hurwitz_count(r) == _naive_hurwitz(r)


@pytest.mark.parametrize("marks", [((3,), (2,), (1, 2)), ((2,), (3,), (1, 1, 1)), ((4,), (2,), (3,))])
def test_hurwitz_invariant_under_branch_point_permutation(marks):
    d = max(sum(m) for m in marks)
    values = {hurwitz_count(RamificationData(d, perm)) for perm in itertools.permutations(marks)}
    assert len(values) == 1


def test_hurwitz_degree_bound():
    with pytest.raises(DegreeBoundError):
        hurwitz_count(RamificationData(8, ((2,), (2,), (1,))), bound=7)


def test_genus_of_first_type_data():
    assert genus_check(RamificationData(2, ((2,), (2,), (1, 1)))) == 0
    assert genus_check(RamificationData(2, ((2,), (2,), ()))) == 0


def test_genus_rejects_inconsistent_data():
    with pytest.raises(ValueError):
        genus_check(RamificationData(3, ((2,), (1,), (1,))))


def test_hurwitz_first_with_part_longer_than_degree():
    # (3, 0; -2, -3) has degree 3 < a + 1, and min(a, b, ...) = 0
    assert hurwitz_first(3, 0, (2, 3)) == 0


# -- residue systems --------------------------------------------------------------

def test_first_n1():
    assert residue_count_first_n1(1, 1, 4) == 1
    for a in range(6):
        assert residue_count_first_n1(0, a, a + 2) == 1
    with pytest.raises(ValueError):
        residue_count_first_n1(1, 1, 3)


def test_example_one_polynomial():
    assert residue_poly_first_n2(1, 1, 2, 2) == [F(-1), F(-1)]
    assert residue_count_first_n2(1, 1, 2, 2) == 1


def test_example_two_polynomial():
    assert residue_poly_first_n2(2, 2, 3, 3) == [F(1), F(4), F(1)]
    assert residue_count_first_n2(2, 2, 3, 3) == 2


def test_first_n2_zero_orders_give_zero():
    for b in range(0, 6):
        for c1 in range(2, b + 1):
            c2 = b + 2 - c1
            if c2 >= 2:
                assert residue_count_first_n2(0, b, c1, c2) == 0


def test_first_n2_balance():
    with pytest.raises(ValueError):
        residue_count_first_n2(1, 1, 2, 3)


def _n2_profiles(max_weight):
    for s in range(4, max_weight + 1):
        for c1 in range(2, s - 1):
            for a in range(s - 1):
                yield a, s - 2 - a, c1, s - c1


@pytest.mark.parametrize("s", range(4, 13))
def test_first_n2_matches_min_formula(s):
    for a, b, c1, c2 in _n2_profiles(s):
        if c1 + c2 != s:
            continue
        rc = residue_count_first_n2_detail(a, b, c1, c2)
        assert rc.count == min(a, b, c1 - 1, c2 - 1)
        assert rc.reduced


@pytest.mark.parametrize("a", range(1, 6))
def test_second_n1_example_family(a):
    for b in range(2, 9):
        assert residue_count_second_n1(a + b - 1, 1, a, b) == b - 1


def test_second_n1_sweep():
    for d in range(2, 11):
        for b in range(1, 8):
            for c in range(1, 9 - b):
                assert residue_count_second_n1(b + c + d - 2, b, c, d) == d - 1


def test_second_n1_needs_residueless_order():
    with pytest.raises(ValueError):
        residue_count_second_n1(1, 1, 1, 1)


def test_example_three_elimination():
    assert example3_regression() == 2


def test_root_counting_flags_repeated_roots():
    # (t + 2)^2 (t - 1)
    rc = count_admissible_roots([F(-4), F(0), F(3), F(1)])
    assert rc.count == 1
    assert not rc.reduced


def test_root_counting_refuses_zero_polynomial():
    with pytest.raises(ArithmeticError):
        count_admissible_roots([F(0)])


@given(st.lists(st.integers(-4, 4).filter(lambda r: r not in (0, 1)), min_size=1, max_size=5))
def test_root_counting_counts_distinct_roots(roots):
    poly = [F(1)]
    for r in roots:
        poly = oracles._pmul(poly, [F(-r), F(1)])
    rc = count_admissible_roots(poly)
    assert rc.count == len(set(roots))
    assert rc.reduced == (len(set(roots)) == len(roots))
