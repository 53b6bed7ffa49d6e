import random

import pytest

from detper.errors import UnknownCheckId
from detper.kernels import Kind, build_kernel
from detper.linalg import det_exact_oracle, identity_plus
from detper.report import Verdict
from detper.ring import odd_primes
from detper.theorems import (
    ALL_CHECK_IDS,
    Budgets,
    check_conjecture,
    check_identity,
    resolve_check_ids,
    run_check,
    run_suite,
)

# det(I + R_p) and det(I_p + full Cayley) mod p^2, from exact rational
# determinants computed outside the package
DET_I_PLUS_R = {3: 1, 5: 22, 7: 45}
DET_I_PLUS_RFULL = {3: 3, 5: 10, 7: 21}
# exact valuation of det(I_m + T_p)
VAL_I_PLUS_T = {7: 3, 11: 2, 19: 2, 23: 3, 31: 3}


def test_c47b_example():
    r = check_conjecture("C4.7b", 5)
    assert r.passed and (r.lhs, r.rhs, r.modulus_exponent) == (1, 1, 2)


def test_c411ii_example():
    for p, v in DET_I_PLUS_R.items():
        r = check_conjecture("C4.11ii", p)
        assert r.passed and r.lhs == v
    assert check_conjecture("C4.11ii", 5).rhs == (-1) ** 3 * pow(3, -1, 25) * 9 % 25 == 22


def test_c410ii_example():
    for p, v in DET_I_PLUS_RFULL.items():
        r = check_conjecture("C4.10ii", p)
        assert r.passed and r.lhs == v
    assert check_conjecture("C4.10ii", 5).rhs == 10


def test_c47a_routes_agree():
    for p in odd_primes(3, 23):
        r = check_conjecture("C4.7a", p)
        assert r.passed and "ryser" in r.method
    r = check_conjecture("C4.7a", 29)
    assert r.passed and r.method == "det-route"


def test_c411i_routes_agree():
    for p in odd_primes(3, 23):
        r = check_conjecture("C4.11i", p)
        assert r.passed and r.method.startswith("ryser")


def test_c48ii():
    assert check_conjecture("C4.8ii", 3).verdict is Verdict.SKIPPED
    for p in (5, 7, 11, 13):
        r = check_conjecture("C4.8ii", p)
        assert r.passed and "pfaffian" in r.method
        k0 = 2 if p % 4 == 1 else 4
        # exact rational computation gives p^-k0 det R_p = 4 mod p here
        assert r.lhs == 4 * p**k0
    r = check_conjecture("C4.8ii", 53)
    assert r.passed and "sqrt-search" in r.method


def test_c49():
    for p in (3, 5, 7, 13):
        r = check_conjecture("C4.9a", p)
        assert r.passed and len(r.lhs) == p
        assert r.lhs[0] == 1
    r = check_conjecture("C4.9b", 7)
    assert r.passed and r.lhs == (1,) * 7
    assert check_conjecture("C4.9b", 13).verdict is Verdict.SKIPPED


def test_c412_valuations():
    for p, v in VAL_I_PLUS_T.items():
        r = check_conjecture("C4.12", p)
        assert r.passed
        assert r.modulus_exponent == (3 if p % 8 == 7 else 2)
        assert r.modulus_exponent <= v
    assert check_conjecture("C4.12", 3).verdict is Verdict.SKIPPED
    assert check_conjecture("C4.12", 5).verdict is Verdict.SKIPPED


def test_c46_delegates():
    assert check_conjecture("C4.6", 5).lhs == 3


def test_identities():
    r = check_identity("I.morley", 7)
    assert r.passed and r.lhs == r.rhs == 29 == 225 % 49
    assert (-1 * 2**6 * 720) % 49 == 29
    r = check_identity("I.ssx", 13, X=[1, 2, 3, 4])
    assert r.passed and r.lhs == 0
    r = check_identity("I.cov66", 5)
    assert r.passed and r.lhs == r.rhs == 3
    assert check_identity("I.cov66", 7).verdict is Verdict.SKIPPED
    for p in odd_primes(3, 200):
        assert check_identity("I.morley", p).passed
        assert check_identity("I.halfpow", p).passed
    for p in (3, 7, 11, 19, 23):
        assert check_identity("I.musum", p).passed
    for p in (3, 5, 7, 11):
        assert check_identity("I.factor", p).passed
        assert check_identity("I.ssx", p).passed


def test_budgets_skip():
    tiny = Budgets(ryser_cap=4, det_cap=6, guard=4)
    assert check_identity("I.factor", 7, tiny).verdict is Verdict.SKIPPED
    assert check_conjecture("C4.7b", 11, tiny).verdict is Verdict.SKIPPED
    r = check_conjecture("C4.7a", 7, tiny)
    assert r.passed and r.method == "det-route"
    with pytest.raises(Exception):
        check_identity("I.ssx", 13, X=list(range(1, 11)))
    assert run_check("I.ssx", 3).passed


def test_unknown_ids():
    with pytest.raises(UnknownCheckId):
        check_conjecture("C9.9", 5)
    with pytest.raises(UnknownCheckId):
        check_identity("I.nope", 5)
    with pytest.raises(UnknownCheckId):
        run_suite((3, 7), ["BOGUS"])
    with pytest.raises(ValueError):
        check_conjecture("C4.7b", 9)


def test_run_suite_examples():
    rs = run_suite((3, 30), ["C4.7b"])
    assert [r.p for r in rs] == odd_primes(3, 30)
    assert all(r.passed for r in rs)
    rs = run_suite((3, 30), ["C4.9b"])
    # p = 3 is also 3 mod 4 (m = 1, Q_3 = [0])
    assert [r.p for r in rs if r.passed] == [3, 7, 11, 19, 23]
    assert all(r.verdict is Verdict.SKIPPED for r in rs if r.p % 4 == 1)
    assert run_suite((4, 4), ["all"]) == []
    assert run_suite([], ["C4.7b"]) == []


def test_run_suite_ordering_and_parallel():
    ids = ["C4.7b", "L4.1", "I.morley", "C4.10ii"]
    serial = run_suite((3, 23), ids)
    keys = [(r.check_id, r.p) for r in serial]
    assert keys == sorted(keys)
    assert run_suite((3, 23), ids, jobs=3) == serial
    assert resolve_check_ids(["all"]) == sorted(ALL_CHECK_IDS)


def _lhs_by_exact_oracle(r):
    p, k = r.p, r.modulus_exponent
    if r.check_id == "C4.7b":
        M = build_kernel(Kind.CAUCHY, p, k).rows()
    elif r.check_id == "C4.11ii":
        M = identity_plus(build_kernel(Kind.CAYLEY, p, k), p, k)
    elif r.check_id == "C4.10ii":
        M = identity_plus(build_kernel(Kind.CAYLEY_FULL, p, k), p, k)
    elif r.check_id == "C4.12":
        M = identity_plus(build_kernel(Kind.QUAD_CAYLEY, p, k), p, k)
    else:
        M = build_kernel(Kind.CAYLEY, p, k).rows()
    return det_exact_oracle(M, p=p, K=k).residue(k)


def test_pass_reports_recomputed_by_exact_oracle():
    reports = run_suite((3, 80), ["C4.7b", "C4.8ii", "C4.10ii", "C4.11ii", "C4.12"])
    passes = [r for r in reports if r.passed]
    sample = random.Random(2024).sample(passes, max(1, len(passes) // 10))
    for r in sample:
        assert _lhs_by_exact_oracle(r) == r.lhs == r.rhs
