import pytest

from detper.kernels import Kind, build_generic
from detper.oracles import (
    ORACLE_RUNNERS,
    cycle_sum,
    derangement_sums,
    fixed_point_sums,
    matching_sum,
    perm_sign,
)
from detper.permanent import permanent_enum


def test_perm_sign():
    assert perm_sign((0, 1, 2)) == 1
    assert perm_sign((1, 0, 2)) == -1
    assert perm_sign((1, 2, 0)) == 1


def test_three_cycle_two_terms():
    # the two oriented 3-cycles cancel
    x = (2, 5, 9)
    mod = 13**2
    t1 = pow((x[0] - x[1]) * (x[1] - x[2]) * (x[2] - x[0]), -1, mod)
    t2 = pow((x[0] - x[2]) * (x[2] - x[1]) * (x[1] - x[0]), -1, mod)
    assert (t1 + t2) % mod == 0
    assert cycle_sum(x, mod) == 0


@pytest.mark.parametrize("s", [3, 4, 5, 6])
def test_cycle_sum_vanishes(s):
    assert cycle_sum(list(range(1, s + 1)), 11**2) == 0


def test_matching_sum_small():
    mod = 13**2
    assert matching_sum([], mod) == 1
    assert matching_sum([1, 2, 3], mod) == 0
    assert matching_sum([1, 3], mod) == pow(4, -1, mod)
    X = [1, 2, 3, 4]
    A = build_generic(Kind.GENERIC_CAUCHY, X, 13, 2)
    assert permanent_enum(A).value == matching_sum(X, mod)
    with pytest.raises(ValueError):
        matching_sum(list(range(16)), mod)


def test_derangement_and_fixed_point_sums():
    A = [[0, 2, 3], [4, 0, 5], [6, 7, 0]]
    mod = 1000
    # derangements of 3 points are the two 3-cycles
    assert derangement_sums(A, mod) == ((2 * 5 * 6 + 3 * 4 * 7) % mod, (2 * 5 * 6 + 3 * 4 * 7) % mod)
    per, det = fixed_point_sums(A, mod)
    assert per == (1 + 2 * 4 + 3 * 6 + 5 * 7 + 60 + 84) % mod
    assert det == (1 - 8 - 18 - 35 + 60 + 84) % mod


@pytest.mark.parametrize("name", sorted(ORACLE_RUNNERS))
def test_runners_all_pass(name):
    passed, total = ORACLE_RUNNERS[name](25, 11)
    assert passed == total == 25


def test_runners_are_deterministic():
    assert ORACLE_RUNNERS["cycle"](10, 3) == ORACLE_RUNNERS["cycle"](10, 3)
    assert ORACLE_RUNNERS["ryser-vs-enum"](0, 0) == (0, 0)
