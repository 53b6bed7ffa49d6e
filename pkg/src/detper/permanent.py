"""Permanents over Z/p^K: Ryser's formula with Gray-code updates, and enumeration."""

from __future__ import annotations

import itertools
from typing import Optional

import numpy as np
from numba import njit

from .errors import BudgetExceeded
from .kernels import KernelMatrix
from .ring import PadicResidue

RYSER_CAP = 26
ENUM_CAP = 10

_I64_LIMIT = 1 << 63


def _grid(M, p, K):
    if isinstance(M, KernelMatrix):
        return [list(r) for r in M.entries], M.p, M.K
    if p is None or K is None:
        raise TypeError("p and K are required for a bare grid")
    return [list(r) for r in M], p, K


def _batch(mod: int) -> int:
    """How many factors below ``mod`` may be multiplied onto a reduced product in int64."""
    c = 0
    while mod ** (c + 2) < _I64_LIMIT:
        c += 1
    return c


@njit(cache=True)
def _ryser_gray_i64(A, mod, batch):
    n = A.shape[0]
    rowsum = np.zeros(n, dtype=np.int64)
    total = 0
    size = 0
    gray = 0
    for k in range(1, 1 << n):
        j = 0
        t = k
        while (t & 1) == 0:
            t >>= 1
            j += 1
        if (gray >> j) & 1:
            for i in range(n):
                r = rowsum[i] - A[i, j]
                if r < 0:
                    r += mod
                rowsum[i] = r
            size -= 1
        else:
            for i in range(n):
                r = rowsum[i] + A[i, j]
                if r >= mod:
                    r -= mod
                rowsum[i] = r
            size += 1
        gray ^= 1 << j
        prod = 1
        cnt = 0
        for i in range(n):
            x = rowsum[i]
            if x == 0:
                prod = 0
                break
            prod *= x
            cnt += 1
            if cnt == batch:
                prod %= mod
                cnt = 0
        prod %= mod
        if size & 1:
            total -= prod
            if total < 0:
                total += mod
        else:
            total += prod
            if total >= mod:
                total -= mod
    if n & 1:
        total = (mod - total) % mod
    return total


def _ryser_gray_py(A, mod):
    n = len(A)
    rowsum = [0] * n
    total = 0
    size = 0
    gray = 0
    for k in range(1, 1 << n):
        j = (k & -k).bit_length() - 1
        col = [A[i][j] for i in range(n)]
        if (gray >> j) & 1:
            rowsum = [(r - c) % mod for r, c in zip(rowsum, col)]
            size -= 1
        else:
            rowsum = [(r + c) % mod for r, c in zip(rowsum, col)]
            size += 1
        gray ^= 1 << j
        prod = 1
        for x in rowsum:
            prod = prod * x % mod
        total += -prod if size & 1 else prod
    if n & 1:
        total = -total
    return total % mod


def permanent_ryser(M, *, p: Optional[int] = None, K: Optional[int] = None,
                    cap: int = RYSER_CAP) -> PadicResidue:
    """per M = (-1)^n sum_S (-1)^|S| prod_i sum_{j in S} a_ij, mod p^K."""
    A, p, K = _grid(M, p, K)
    n = len(A)
    if n > cap:
        raise BudgetExceeded(f"n={n} exceeds the Ryser budget {cap}")
    mod = p**K
    if n == 0:
        return PadicResidue(p, K, 1)
    A = [[x % mod for x in row] for row in A]
    batch = _batch(mod)
    if batch >= 1:
        value = int(_ryser_gray_i64(np.array(A, dtype=np.int64), mod, batch))
    else:
        value = _ryser_gray_py(A, mod)
    return PadicResidue(p, K, value)


def permanent_enum(M, *, p: Optional[int] = None, K: Optional[int] = None,
                   cap: int = ENUM_CAP) -> PadicResidue:
    """Direct sum over all n! permutations."""
    A, p, K = _grid(M, p, K)
    n = len(A)
    if n > cap:
        raise BudgetExceeded(f"n={n} exceeds the enumeration budget {cap}")
    mod = p**K
    total = 0
    for sigma in itertools.permutations(range(n)):
        prod = 1
        for i, j in enumerate(sigma):
            prod = prod * A[i][j] % mod
            if not prod:
                break
        total += prod
    return PadicResidue(p, K, total)
