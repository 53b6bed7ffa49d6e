"""Brute-force sums over permutations, cycles and matchings.

These are independent of the elimination and Ryser code paths and serve as
oracles for them.  The ``run_*`` functions drive seeded randomized trials
and return ``(passed, total)``.
"""

from __future__ import annotations

import itertools
import random
from typing import Sequence

from .kernels import Kind, build_generic
from .linalg import det_exact_oracle, det_mod, identity_plus
from .permanent import permanent_enum, permanent_ryser

ORACLE_PRIMES = (5, 7, 11, 13, 17, 19, 23, 29, 31)
MATCHING_CAP = 14


def perm_sign(sigma: Sequence[int]) -> int:
    seen = [False] * len(sigma)
    sign = 1
    for i in range(len(sigma)):
        if seen[i]:
            continue
        j, length = i, 0
        while not seen[j]:
            seen[j] = True
            j = sigma[j]
            length += 1
        if length % 2 == 0:
            sign = -sign
    return sign


def cycle_sum(xs: Sequence[int], mod: int) -> int:
    """Sum over oriented s-cycles (up to rotation) of prod 1/(x_r - x_{r+1})."""
    s = len(xs)
    total = 0
    for rest in itertools.permutations(range(1, s)):
        seq = (0,) + rest
        prod = 1
        for r in range(s):
            prod = prod * pow(xs[seq[r]] - xs[seq[(r + 1) % s]], -1, mod) % mod
        total += prod
    return total % mod


def matching_sum(xs: Sequence[int], mod: int) -> int:
    """Sum over perfect matchings of prod 1/(x - y)^2, by recursion on the first point."""
    if len(xs) > MATCHING_CAP:
        raise ValueError(f"matching recursion limited to {MATCHING_CAP} points")
    if len(xs) % 2:
        return 0

    def rec(pts):
        if not pts:
            return 1
        x, rest = pts[0], pts[1:]
        total = 0
        for k, y in enumerate(rest):
            w = pow((x - y) * (x - y), -1, mod)
            total += w * rec(rest[:k] + rest[k + 1 :])
        return total % mod

    return rec(tuple(xs))


def derangement_sums(A, mod: int) -> tuple[int, int]:
    """(unsigned, signed) sums over derangements of prod a_{j, tau(j)}."""
    n = len(A)
    per = det = 0
    for tau in itertools.permutations(range(n)):
        if any(tau[j] == j for j in range(n)):
            continue
        prod = 1
        for j in range(n):
            prod = prod * A[j][tau[j]] % mod
        per += prod
        det += perm_sign(tau) * prod
    return per % mod, det % mod


def fixed_point_sums(A, mod: int) -> tuple[int, int]:
    """(unsigned, signed) sums over S_n of products over the moved points only."""
    n = len(A)
    per = det = 0
    for tau in itertools.permutations(range(n)):
        prod = 1
        for j in range(n):
            if tau[j] != j:
                prod = prod * A[j][tau[j]] % mod
        per += prod
        det += perm_sign(tau) * prod
    return per % mod, det % mod


def _distinct_points(rng: random.Random, p: int, s: int) -> list[int]:
    return rng.sample(range(p), s)


def run_cycle_trials(trials: int, seed: int) -> tuple[int, int]:
    rng = random.Random(seed)
    passed = 0
    for _ in range(trials):
        p = rng.choice(ORACLE_PRIMES[2:])
        s = rng.randint(3, 6)
        passed += cycle_sum(_distinct_points(rng, p, s), p * p) == 0
    return passed, trials


def run_matching_trials(trials: int, seed: int) -> tuple[int, int]:
    rng = random.Random(seed)
    passed = 0
    for _ in range(trials):
        p = rng.choice(ORACLE_PRIMES[2:])
        size = rng.choice((2, 4, 6, 8))
        xs = _distinct_points(rng, p, size)
        A = build_generic(Kind.GENERIC_CAUCHY, xs, p, 2)
        mod = p * p
        lhs = permanent_enum(A).value
        rhs = (-1) ** (size // 2) * matching_sum(A.nodes, mod) % mod
        passed += lhs == rhs
    return passed, trials


def run_derangement_trials(trials: int, seed: int) -> tuple[int, int]:
    rng = random.Random(seed)
    passed = 0
    for _ in range(trials):
        p = rng.choice(ORACLE_PRIMES)
        K = rng.randint(1, 3)
        mod = p**K
        n = rng.randint(1, 7)
        A = [[0 if i == j else rng.randrange(mod) for j in range(n)] for i in range(n)]
        dper, ddet = derangement_sums(A, mod)
        fper, fdet = fixed_point_sums(A, mod)
        IA = identity_plus(A, p, K)
        ok = (
            dper == permanent_enum(A, p=p, K=K).value
            and ddet == det_exact_oracle(A, p=p, K=K).residue(K)
            and fper == permanent_enum(IA, p=p, K=K).value
            and fdet == det_exact_oracle(IA, p=p, K=K).residue(K)
        )
        passed += ok
    return passed, trials


def run_ryser_vs_enum_trials(trials: int, seed: int) -> tuple[int, int]:
    rng = random.Random(seed)
    passed = 0
    for _ in range(trials):
        p = rng.choice(ORACLE_PRIMES)
        K = rng.randint(1, 4)
        n = rng.randint(1, 8)
        mod = p**K
        A = [[rng.randrange(mod) for _ in range(n)] for _ in range(n)]
        passed += permanent_ryser(A, p=p, K=K) == permanent_enum(A, p=p, K=K)
    return passed, trials


def run_det_vs_exact_trials(trials: int, seed: int) -> tuple[int, int]:
    rng = random.Random(seed)
    passed = 0
    for _ in range(trials):
        p = rng.choice((5, 7, 13))
        K = rng.randint(1, 4)
        n = rng.randint(2, 8)
        mod = p**K
        # bias towards non-units so that valuation pivoting is exercised
        A = [[rng.randrange(mod) * (p ** rng.choice((0, 0, 1, 2))) % mod for _ in range(n)]
             for _ in range(n)]
        got = det_mod(A, 0, p=p, K=K)
        exact = det_exact_oracle(A, p=p, K=K)
        passed += got.residue(K) == exact.residue(K)
    return passed, trials


ORACLE_RUNNERS = {
    "cycle": run_cycle_trials,
    "matching": run_matching_trials,
    "derangement": run_derangement_trials,
    "ryser-vs-enum": run_ryser_vs_enum_trials,
    "det-vs-exact": run_det_vs_exact_trials,
}
