import pytest

from detper.kernels import Kind, build_kernel
from detper.linalg import certified_det, identity_plus
from detper.report import Verdict
from detper.ring import odd_primes, wilson_quotient
from detper.structural import (
    check_l41,
    check_l42e,
    check_l54,
    check_l61,
    check_l62,
    check_p57,
    check_structural,
    theta_decomposition,
)

# E_R restricted to rows/columns {0, h}, as (E00, E0h, Eh0, Ehh) mod p, from an
# exact rational computation of V^{-1} R_p V (sympy, outside the package)
ER_BLOCK_ORACLE = {
    13: (0, 2, 11, 12),
    17: (0, 2, 15, 16),
    29: (0, 26, 3, 28),
    37: (0, 3, 34, 36),
    41: (0, 39, 2, 40),
    53: (0, 34, 19, 52),
}


def test_l41_example():
    r = check_l41(5)
    assert r.passed
    assert r.lhs == (1, 2, 3, 4, 0)


def test_l42e_wilson_entry():
    for p in (5, 7, 11, 13):
        r = check_l42e(p)
        assert r.passed
        w = wilson_quotient(p)
        assert r.lhs[0] == ((p + 1) // 2 - w) % p
        assert r.lhs[-1] == (w - 1) % p
    assert check_l42e(3).verdict is Verdict.SKIPPED


def test_l54_example_p5():
    r = check_l54(5)
    assert r.passed
    assert r.lhs[:4] == (0, 3, 0, 2)  # (0, 3, 5, 7) mod 5
    assert r.lhs[5:9] == (0, 2, 3, 4)  # [[0, 2], [-2, -1]] mod 5


def test_l54_three_mod_four_block():
    for p in (7, 11, 19, 23):
        r = check_l54(p)
        assert r.passed
        assert r.lhs[p:p + 4] == (0, 0, 0, p - 1)


@pytest.mark.parametrize("p", sorted(ER_BLOCK_ORACLE))
def test_l54_block_matches_exact_oracle(p):
    r = check_l54(p)
    assert r.lhs[p:p + 4] == ER_BLOCK_ORACLE[p]
    # off-diagonal pair is always (x, -x): the block determinant is a nonzero square
    x, y = ER_BLOCK_ORACLE[p][1:3]
    assert (x + y) % p == 0 and x % p
    # every other asserted quantity (diagonal, E_* diagonal) holds at every one of these primes
    assert r.lhs[:p - 1] == r.rhs[:p - 1]
    assert r.lhs[p + 4:] == r.rhs[p + 4:]


def test_l61_example():
    r = check_l61(7)
    assert r.passed
    assert r.lhs == (1, 0, 2, 0, 1)
    assert check_l61(13).verdict is Verdict.SKIPPED
    assert check_l61(3).verdict is Verdict.SKIPPED


def test_l62_reconstruction():
    for p in (7, 11, 19, 23, 31, 43, 47):
        r = check_l62(p)
        assert r.passed, r
        if p % 8 == 7:
            assert r.lhs[2] == 0
    assert check_l62(5).verdict is Verdict.SKIPPED


def test_theta_vanishes_for_7_mod_8():
    for p in (7, 23, 31, 47):
        assert theta_decomposition(p)[3] == 0
    # for p = 3 mod 8 the determinant has valuation exactly 2, so Theta is a unit
    for p in (11, 19, 43):
        assert theta_decomposition(p)[3] != 0
        build = lambda K, p=p: identity_plus(build_kernel(Kind.QUAD_CAYLEY, p, K), p, K)
        assert certified_det(build, p, 1, 2).valuation == 2


def test_p57():
    for p in odd_primes(3, 40):
        r = check_p57(p)
        assert r.passed
        assert r.lhs[-1] == (-pow(2, -1, p)) % p


def test_dispatch():
    assert check_structural("L4.1", 7).passed
    assert check_structural("L6.2", 7, guard=2).passed
    with pytest.raises(KeyError):
        check_structural("L9.9", 7)
