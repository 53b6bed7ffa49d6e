"""The verification suite: one check per congruence, plus identity checks.

Every check returns a CongruenceReport.  Residues are compared exactly at
the stated power of p; a check that cannot run within its budget, or whose
prime lies outside the congruence class it needs, is SKIPPED.
"""

from __future__ import annotations

import functools
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Callable, Iterable, Optional, Sequence

from .errors import BudgetExceeded, DetperError, UnknownCheckId
from .kernels import Kind, build_dpab, build_generic, build_kernel, mu_m_nodes
from .linalg import DEFAULT_GUARD, certified_det, det_mod, identity_plus, per_pencil_transfer, pfaffian
from .oracles import matching_sum, perm_sign
from .permanent import RYSER_CAP, permanent_enum, permanent_ryser
from .quadform import thm1_verdict
from .report import CongruenceReport, Verdict, compare, skipped
from .ring import chi, double_factorial_sq, is_prime, legendre, odd_primes
from .structural import STRUCTURAL_CHECKS, check_structural

DET_CAP = 300
PF_MAX_P = 50
RYSER_SPOT_MAX_P = 13
SSX_MAX_SIZE = 8


@dataclass(frozen=True)
class Budgets:
    ryser_cap: int = RYSER_CAP
    det_cap: int = DET_CAP
    guard: int = DEFAULT_GUARD


def _cayley_full_plus_identity(p):
    return lambda K: identity_plus(build_kernel(Kind.CAYLEY_FULL, p, K), p, K)


def _kernel_builder(kind, p, plus_identity=False):
    def build(K):
        M = build_kernel(kind, p, K)
        return identity_plus(M, p, K) if plus_identity else M

    return build


@functools.lru_cache(maxsize=None)
def det_cauchy(p: int, guard: int = DEFAULT_GUARD):
    """det C_p, certified modulo p^2; shared by the checks that need it."""
    return certified_det(_kernel_builder(Kind.CAUCHY, p), p, 2, 0, guard)


def _over_det_cap(cid, p, n, budgets):
    if n > budgets.det_cap:
        return skipped(cid, p, f"dimension {n} exceeds det budget {budgets.det_cap}", 2)
    return None


def _per_cauchy_det_route(p, guard):
    vu = det_cauchy(p, guard)
    p2 = p * p
    sign = 1 if (p - 1) // 2 % 2 == 0 else -1
    return sign * vu.residue(2) % p2, min(2, vu.precision)


def check_c47a(p, budgets):
    cid = "C4.7a"
    skip = _over_det_cap(cid, p, p - 1, budgets)
    if skip:
        return skip
    p2 = p * p
    det_route, achieved = _per_cauchy_det_route(p, budgets.guard)
    method = "det-route"
    lhs, side, reason = det_route, True, ""
    if p - 1 <= budgets.ryser_cap:
        ryser = permanent_ryser(build_kernel(Kind.CAUCHY, p, 2), cap=budgets.ryser_cap).value
        method = "ryser+det-route"
        lhs = ryser
        if ryser != det_route:
            side, reason = False, f"Ryser {ryser} disagrees with det route {det_route}"
    return compare(cid, p, 2, lhs, chi(p) % p2, method, achieved, side, reason)


def check_c47b(p, budgets):
    cid = "C4.7b"
    skip = _over_det_cap(cid, p, p - 1, budgets)
    if skip:
        return skip
    vu = det_cauchy(p, budgets.guard)
    return compare(cid, p, 2, vu.residue(2), 1, "det_mod", min(2, vu.precision))


def _sqrt_mod_p(x, p):
    for r in range((p + 1) // 2):
        if r * r % p == x % p:
            return r
    return None


def check_c48ii(p, budgets):
    """det R_p = p^(3 - chi_p) r^2 mod p^(4 - chi_p) for some r."""
    cid = "C4.8ii"
    if p == 3:
        return skipped(cid, p, "needs p > 3", 1)
    skip = _over_det_cap(cid, p, p - 1, budgets)
    if skip:
        return skip
    k0 = 3 - chi(p)
    k = k0 + 1
    mod = p**k
    build = _kernel_builder(Kind.CAYLEY, p)
    vu = certified_det(build, p, 1, k0, budgets.guard)
    lhs = vu.residue(k)
    method = "det_mod"
    reasons = []
    if not vu.is_zero and vu.valuation < k0:
        reasons.append(f"valuation {vu.valuation} below {k0}")
    normalized = lhs // p**k0
    r = None
    if p <= PF_MAX_P:
        method += "+pfaffian"
        pf = _pfaffian_certified(build, p, k, budgets.guard)
        if pf.residue(k) ** 2 % mod != lhs:
            reasons.append("Pf^2 != det")
        if pf.is_zero or pf.valuation > k0 // 2:
            r = 0
        elif pf.valuation == k0 // 2:
            r = pf.unit % p
    if r is None:
        method += "+sqrt-search"
        r = _sqrt_mod_p(normalized, p)
    rhs = None if r is None else p**k0 * (r * r % p) % mod
    if r is None:
        reasons.append(f"{normalized} is not a square mod {p}")
    return compare(cid, p, k, lhs, rhs, method, min(k, vu.precision), not reasons, "; ".join(reasons))


def _pfaffian_certified(build, p, k, guard):
    # the Pfaffian carries half the valuation, so k + guard digits suffice
    K = k + guard
    try:
        return pfaffian(build(K), 1, p=p, K=K)
    except DetperError:
        K += guard
        return pfaffian(build(K), 1, p=p, K=K)


def _pencil_sweep(A, p, rhs_of_u):
    lhs = tuple(per_pencil_transfer(A, u, p) for u in range(p))
    rhs = tuple(rhs_of_u(u) % p for u in range(p))
    return lhs, rhs


def check_c49a(p, budgets):
    cid = "C4.9a"
    skip = _over_det_cap(cid, p, p - 1, budgets)
    if skip:
        return skip
    C = build_kernel(Kind.CAUCHY, p, 1)
    c = chi(p)
    lhs, rhs = _pencil_sweep(C.array(), p, lambda u: 1 + c * pow(u, p - 1, p))
    method = "pencil-transfer"
    side, reason = True, ""
    if p <= RYSER_SPOT_MAX_P and p - 1 <= budgets.ryser_cap:
        method += "+ryser"
        for u in (1, 2):
            u %= p
            got = permanent_ryser(identity_plus(C, p, 1, u), p=p, K=1, cap=budgets.ryser_cap).value
            if got != lhs[u]:
                side, reason = False, f"Ryser disagrees with transfer at u={u}"
    return compare(cid, p, 1, lhs, rhs, method, 1, side, reason)


def check_c49b(p, budgets):
    cid = "C4.9b"
    if p % 4 != 3:
        return skipped(cid, p, "needs p = 3 mod 4", 1)
    m = (p - 1) // 2
    skip = _over_det_cap(cid, p, m, budgets)
    if skip:
        return skip
    Q = build_kernel(Kind.QUAD_CAUCHY, p, 1)
    lhs, rhs = _pencil_sweep(Q.array(), p, lambda u: 1)
    method = "pencil-transfer"
    side, reason = True, ""
    if m <= budgets.ryser_cap:
        method += "+ryser"
        got = permanent_ryser(identity_plus(Q, p, 1, 1), p=p, K=1, cap=budgets.ryser_cap).value
        if got != lhs[1 % p]:
            side, reason = False, "Ryser disagrees with transfer at u=1"
    return compare(cid, p, 1, lhs, rhs, method, 1, side, reason)


def check_c410ii(p, budgets):
    cid = "C4.10ii"
    skip = _over_det_cap(cid, p, p, budgets)
    if skip:
        return skip
    p2 = p * p
    vu = certified_det(_cayley_full_plus_identity(p), p, 1, 1, budgets.guard)
    rhs = -p * pow(2, -1, p2) % p2
    return compare(cid, p, 2, vu.residue(min(2, vu.precision)), rhs, "det_mod", min(2, vu.precision))


def check_c411i(p, budgets):
    cid = "C4.11i"
    skip = _over_det_cap(cid, p, p - 1, budgets)
    if skip:
        return skip
    p2 = p * p
    h = (p - 1) // 2
    per_c, achieved = _per_cauchy_det_route(p, budgets.guard)
    factor = pow(4, h, p2) * math.factorial(p - 1) * per_c % p2
    rhs = double_factorial_sq(p, 2).value
    method = "factorization+det-route"
    lhs, side, reason = factor, True, ""
    if p - 1 <= budgets.ryser_cap:
        M = identity_plus(build_kernel(Kind.CAYLEY, p, 2), p, 2)
        ryser = permanent_ryser(M, p=p, K=2, cap=budgets.ryser_cap).value
        method = "ryser+" + method
        lhs = ryser
        if ryser != factor:
            side, reason = False, f"Ryser {ryser} disagrees with factorization {factor}"
    return compare(cid, p, 2, lhs, rhs, method, achieved, side, reason)


def check_c411ii(p, budgets):
    cid = "C4.11ii"
    skip = _over_det_cap(cid, p, p - 1, budgets)
    if skip:
        return skip
    p2 = p * p
    vu = certified_det(_kernel_builder(Kind.CAYLEY, p, True), p, 2, 0, budgets.guard)
    sign = 1 if (p + 1) // 2 % 2 == 0 else -1
    rhs = sign * pow(p - 2, -1, p2) * double_factorial_sq(p, 2).value % p2
    achieved = min(2, vu.precision)
    return compare(cid, p, 2, vu.residue(achieved), rhs, "det_mod", achieved)


def check_c412(p, budgets):
    cid = "C4.12"
    if p % 4 != 3:
        return skipped(cid, p, "needs p = 3 mod 4", 2)
    if p == 3:
        return skipped(cid, p, "needs p > 3", 2)
    m = (p - 1) // 2
    skip = _over_det_cap(cid, p, m, budgets)
    if skip:
        return skip
    k = 3 if p % 8 == 7 else 2
    vu = certified_det(_kernel_builder(Kind.QUAD_CAYLEY, p, True), p, 1, k, budgets.guard)
    achieved = min(k, vu.precision)
    return compare(cid, p, k, vu.residue(achieved), 0, "det_mod", achieved)


def check_c46(p, budgets):
    return thm1_verdict(p, min(200, budgets.det_cap + 1))


CONJECTURE_CHECKS: dict[str, Callable] = {
    "C4.6": check_c46,
    "C4.7a": check_c47a,
    "C4.7b": check_c47b,
    "C4.8ii": check_c48ii,
    "C4.9a": check_c49a,
    "C4.9b": check_c49b,
    "C4.10ii": check_c410ii,
    "C4.11i": check_c411i,
    "C4.11ii": check_c411ii,
    "C4.12": check_c412,
}


def check_conjecture(check_id: str, p: int, budgets: Optional[Budgets] = None) -> CongruenceReport:
    if check_id not in CONJECTURE_CHECKS:
        raise UnknownCheckId(check_id)
    _require_odd_prime(p)
    return CONJECTURE_CHECKS[check_id](p, budgets or Budgets())


# identities ----------------------------------------------------------------


def identity_morley(p, budgets=None):
    """((p-2)!!)^2 = chi_p 2^(p-1) (p-1)! mod p^2."""
    p2 = p * p
    lhs = double_factorial_sq(p, 2).value
    rhs = chi(p) * pow(2, p - 1, p2) * math.factorial(p - 1) % p2
    return compare("I.morley", p, 2, lhs, rhs, "integer-arithmetic", 2)


def identity_halfpow(p, budgets=None):
    """-2^(p-1)/(p-2) = 2^(p-2)(1 + p/2) mod p^2."""
    p2 = p * p
    lhs = -pow(2, p - 1, p2) * pow(p - 2, -1, p2) % p2
    rhs = pow(2, p - 2, p2) * (1 + p * pow(2, -1, p2)) % p2
    return compare("I.halfpow", p, 2, lhs, rhs, "integer-arithmetic", 2)


def identity_musum(p, budgets=None):
    """Sums of t^k/(1-t) over the nontrivial m-th roots of unity mod p."""
    cid = "I.musum"
    if p % 4 != 3:
        return skipped(cid, p, "needs p = 3 mod 4", 1)
    m = (p - 1) // 2
    mu = [t for t in mu_m_nodes(p) if t != 1]
    lhs = tuple(sum(pow(t, k, p) * pow(1 - t, -1, p) for t in mu) % p for k in range(m))
    half = pow(2, -1, p)
    rhs = ((m - 1) * half % p,) + tuple((k - (m + 1) * half) % p for k in range(1, m))
    return compare(cid, p, 1, lhs, rhs, "direct-sum", 1)


def identity_ssx(p, budgets=None, X: Optional[Sequence[int]] = None):
    """per(I + R_X) = (-4)^h prod x * (matching sum), mod p^2."""
    cid = "I.ssx"
    if X is None:
        X = list(range(1, min(SSX_MAX_SIZE, p - 1) + 1))
    X = list(X)
    if len(X) % 2:
        raise ValueError("I.ssx needs an even number of points")
    if len(X) > SSX_MAX_SIZE:
        raise BudgetExceeded(f"|X|={len(X)} exceeds the enumeration budget {SSX_MAX_SIZE}")
    p2 = p * p
    h = len(X) // 2
    R = build_generic(Kind.GENERIC_CAYLEY, X, p, 2)
    lhs = permanent_enum(identity_plus(R, p, 2), p=p, K=2).value
    rhs = pow(-4, h, p2) * math.prod(X) * matching_sum(R.nodes, p2) % p2
    return compare(cid, p, 2, lhs, rhs, "enumeration+matching-recursion", 2)


def identity_factor(p, budgets=None):
    """per(I + R_p) = 4^h (p-1)! per C_p, both permanents by Ryser mod p^2."""
    cid = "I.factor"
    budgets = budgets or Budgets()
    if p - 1 > budgets.ryser_cap:
        return skipped(cid, p, f"dimension {p - 1} exceeds Ryser budget {budgets.ryser_cap}", 2)
    p2 = p * p
    h = (p - 1) // 2
    per_r = permanent_ryser(identity_plus(build_kernel(Kind.CAYLEY, p, 2), p, 2), p=p, K=2,
                            cap=budgets.ryser_cap).value
    per_c = permanent_ryser(build_kernel(Kind.CAUCHY, p, 2), cap=budgets.ryser_cap).value
    rhs = pow(4, h, p2) * math.factorial(p - 1) * per_c % p2
    return compare(cid, p, 2, per_r, rhs, "ryser", 2)


def identity_cov66(p, budgets=None):
    """D_p(6,6) = sign * D_p(s,1) mod p where s^2 = 6 and sign is the parity of j -> sj."""
    cid = "I.cov66"
    if p == 3 or legendre(6, p) != 1:
        return skipped(cid, p, "needs 6 to be a nonzero square mod p", 1)
    s = _sqrt_mod_p(6, p)
    lhs = det_mod(build_dpab(p, 6, 6), 1).residue(1)
    perm = [s * j % p - 1 for j in range(1, p)]
    rhs = perm_sign(perm) * det_mod(build_dpab(p, s, 1), 1).residue(1) % p
    return compare(cid, p, 1, lhs, rhs, "direct-det", 1)


IDENTITY_CHECKS: dict[str, Callable] = {
    "I.cov66": identity_cov66,
    "I.factor": identity_factor,
    "I.halfpow": identity_halfpow,
    "I.morley": identity_morley,
    "I.musum": identity_musum,
    "I.ssx": identity_ssx,
}


def check_identity(check_id: str, p: int, budgets: Optional[Budgets] = None, **kwargs) -> CongruenceReport:
    if check_id not in IDENTITY_CHECKS:
        raise UnknownCheckId(check_id)
    _require_odd_prime(p)
    return IDENTITY_CHECKS[check_id](p, budgets, **kwargs)


# suite ---------------------------------------------------------------------

ALL_CHECK_IDS = tuple(sorted(list(CONJECTURE_CHECKS) + list(STRUCTURAL_CHECKS) + list(IDENTITY_CHECKS)))


def _require_odd_prime(p):
    if p < 3 or not is_prime(p):
        raise ValueError(f"{p} is not an odd prime")


def run_check(check_id: str, p: int, budgets: Optional[Budgets] = None) -> CongruenceReport:
    """Any check by id.  Budget overruns become SKIPPED, other errors FAIL."""
    budgets = budgets or Budgets()
    try:
        if check_id in CONJECTURE_CHECKS:
            return check_conjecture(check_id, p, budgets)
        if check_id in STRUCTURAL_CHECKS:
            return check_structural(check_id, p, budgets.guard)
        if check_id in IDENTITY_CHECKS:
            return check_identity(check_id, p, budgets)
    except BudgetExceeded as exc:
        return skipped(check_id, p, str(exc))
    except DetperError as exc:
        return CongruenceReport(check_id, p, 0, None, None, "-", 0, Verdict.FAIL,
                                f"{type(exc).__name__}: {exc}")
    raise UnknownCheckId(check_id)


def _run_pair(args):
    return run_check(*args)


def resolve_check_ids(check_ids: Iterable[str]) -> list[str]:
    out = []
    for cid in check_ids:
        if cid == "all":
            out.extend(ALL_CHECK_IDS)
        elif cid in ALL_CHECK_IDS:
            out.append(cid)
        else:
            raise UnknownCheckId(f"unknown check id {cid!r}")
    return sorted(set(out))


def run_suite(primes, check_ids: Iterable[str], budgets: Optional[Budgets] = None,
              jobs: int = 1) -> list[CongruenceReport]:
    """Run every (check, p) pair, sorted by check id and then p.

    ``primes`` is either a (lo, hi) pair, taken inclusively, or an iterable of
    odd primes.
    """
    budgets = budgets or Budgets()
    ids = resolve_check_ids(check_ids)
    if isinstance(primes, tuple) and len(primes) == 2:
        plist = odd_primes(primes[0], primes[1])
    else:
        plist = sorted(set(primes))
    pairs = [(cid, p, budgets) for cid in ids for p in plist]
    if jobs > 1 and len(pairs) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            reports = list(pool.map(_run_pair, pairs))
    else:
        reports = [_run_pair(x) for x in pairs]
    return sorted(reports, key=lambda r: (r.check_id, r.p))
