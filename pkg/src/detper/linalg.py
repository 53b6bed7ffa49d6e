"""Exact linear algebra over Z/p^K.

Matrices are numpy arrays of Python ints (``dtype=object``) unless the
modulus is small enough for int64 products, in which case int64 is used.
Every row operation is an exact elementary operation over Z/p^K, so the
determinant of the working matrix never drifts; only the unit part of a
result loses trusted digits, one per power of p pulled out of a pivot.
"""

from __future__ import annotations

from typing import Callable, Optional, Sequence

import numpy as np

from .errors import (
    BudgetExceeded,
    DegreeOverflow,
    NodesCollide,
    NotInBaseField,
    OddDimension,
    PrecisionExhausted,
)
from .kernels import KernelMatrix
from .ring import INFINITE, ValUnit, val_unit_split, PadicResidue

DEFAULT_GUARD = 4
BAREISS_CAP = 300

_INT64_SAFE = 1 << 31


def as_array(M, mod: int) -> np.ndarray:
    """Copy of ``M`` reduced mod ``mod``; int64 when products cannot overflow."""
    if isinstance(M, KernelMatrix):
        M = M.entries
    if mod < _INT64_SAFE:
        a = np.array(M, dtype=object)
        return (a % mod).astype(np.int64).reshape(a.shape)
    a = np.array(M, dtype=object)
    if a.size == 0:
        return a.reshape(a.shape)
    return a % mod


def _ring(M, p, K):
    if isinstance(M, KernelMatrix):
        return M.p, M.K
    if p is None or K is None:
        raise TypeError("p and K are required for a bare grid")
    return p, K


def identity_plus(M, p: int, K: int, u: int = 1) -> list[list[int]]:
    """Rows of I + u*M modulo p^K."""
    mod = p**K
    a = as_array(M, mod)
    n = a.shape[0]
    out = (a * u) % mod
    for i in range(n):
        out[i, i] = (out[i, i] + 1) % mod
    return out.tolist()


def matmul_mod(A, B, mod: int) -> np.ndarray:
    a = np.array(A, dtype=object)
    b = np.array(B, dtype=object)
    return a.dot(b) % mod


def _first_min_valuation(S: np.ndarray, p: int, K: int):
    """(row, col, v) of the first entry of minimal valuation, row-major; None if S == 0."""
    pv = p
    for v in range(K):
        # a hit in the first row is already first in row-major order
        head = (S[0] % pv) != 0
        if head.any():
            return 0, int(np.argmax(head)), v
        mask = (S % pv) != 0
        if mask.any():
            r, c = divmod(int(np.argmax(mask)), S.shape[1])
            return r, c, v
        pv *= p
    return None


def _split(x: int, p: int, v: int) -> int:
    return int(x) // p**v


def _det_once(M, p: int, K: int) -> ValUnit:
    mod = p**K
    A = as_array(M, mod)
    n = A.shape[0]
    if A.ndim != 2 or A.shape[1] != n:
        raise ValueError("determinant needs a square matrix")
    sign, vtot, unit = 1, 0, 1
    for k in range(n):
        hit = _first_min_valuation(A[k:, k:], p, K)
        if hit is None:
            return ValUnit.zero(p, K)
        r, c, v = hit
        if r:
            A[[k, k + r]] = A[[k + r, k]]
            sign = -sign
        if c:
            A[:, [k, k + c]] = A[:, [k + c, k]]
            sign = -sign
        vtot += v
        if vtot >= K:
            return ValUnit.zero(p, K)
        pk = p**v
        u = _split(A[k, k], p, v)
        unit = unit * u % mod
        if k + 1 < n:
            uinv = pow(u, -1, mod)
            col = A[k + 1 :, k] // pk
            mult = col * uinv % mod
            A[k + 1 :, k + 1 :] = (A[k + 1 :, k + 1 :] - np.outer(mult, A[k, k + 1 :])) % mod
    return ValUnit(p, vtot, sign * unit, K - vtot)


def det_mod(
    M,
    target_k: int = 1,
    *,
    p: Optional[int] = None,
    K: Optional[int] = None,
    rebuild: Optional[Callable[[int], object]] = None,
    escalate_by: int = DEFAULT_GUARD,
) -> ValUnit:
    """Determinant as p^v * unit, with the unit trusted to at least ``target_k`` digits.

    Pivots are chosen by minimal valuation, ties broken by row then column.
    If the unit comes out with fewer than ``target_k`` trusted digits (or the
    value vanishes at the working precision) and ``rebuild(K)`` is available,
    the matrix is rebuilt once at ``K + escalate_by``.  A vanishing result is
    returned as ``ValUnit.zero(p, K)``; a nonzero one with too little precision
    raises PrecisionExhausted.  KernelMatrix inputs rebuild themselves.
    """
    p, K = _ring(M, p, K)
    if rebuild is None and isinstance(M, KernelMatrix) and M.kind.value != "dpab":
        rebuild = M.with_precision
    res = _det_once(M, p, K)
    if _short(res, target_k) and rebuild is not None:
        K2 = K + escalate_by
        res = _det_once(rebuild(K2), p, K2)
    if not res.is_zero and res.known_to < target_k:
        raise PrecisionExhausted(
            f"unit known to p^{res.known_to} after valuation {res.valuation}; need p^{target_k}"
        )
    return res


def _short(res: ValUnit, target_k: int) -> bool:
    return res.is_zero or res.known_to < target_k


def certified_det(build: Callable[[int], object], p: int, k: int, v_expected: int = 0,
                  guard: int = DEFAULT_GUARD) -> ValUnit:
    """det_mod under the standard precision policy.

    Works at K = k + v_expected + guard and doubles the guard once if that
    turns out to be short.
    """
    K = k + v_expected + guard
    return det_mod(build(K), k, p=p, K=K, rebuild=build, escalate_by=guard)


def bareiss_det(rows: Sequence[Sequence[int]]) -> int:
    """Exact integer determinant by fraction-free elimination."""
    A = np.array(rows, dtype=object)
    n = A.shape[0]
    if n == 0:
        return 1
    sign = 1
    prev = 1
    for k in range(n - 1):
        if A[k, k] == 0:
            nz = [i for i in range(k + 1, n) if A[i, k] != 0]
            if not nz:
                return 0
            A[[k, nz[0]]] = A[[nz[0], k]]
            sign = -sign
        piv = A[k, k]
        A[k + 1 :, k + 1 :] = (A[k + 1 :, k + 1 :] * piv - np.outer(A[k + 1 :, k], A[k, k + 1 :])) // prev
        A[k + 1 :, k] = 0
        prev = piv
    return sign * int(A[n - 1, n - 1])


def det_exact_oracle(M, *, p: Optional[int] = None, K: Optional[int] = None,
                     cap: int = BAREISS_CAP) -> ValUnit:
    """Determinant of the integer lift of M, reduced mod p^K."""
    p, K = _ring(M, p, K)
    rows = M.entries if isinstance(M, KernelMatrix) else M
    n = len(rows)
    if n > cap:
        raise BudgetExceeded(f"n={n} exceeds the exact-determinant budget {cap}")
    return val_unit_split(PadicResidue(p, K, bareiss_det(rows)))


def pfaffian(M, target_k: int = 1, *, p: Optional[int] = None, K: Optional[int] = None) -> ValUnit:
    """Pfaffian of a skew-symmetric matrix by skew Gaussian elimination.

    Each step moves an entry of minimal valuation above the diagonal to
    position (0, 1) by a symmetric permutation and takes the Schur
    complement of the leading 2x2 block.
    """
    p, K = _ring(M, p, K)
    mod = p**K
    A = as_array(M, mod)
    n = A.shape[0]
    if n % 2:
        raise OddDimension(f"Pfaffian of odd dimension {n}")
    if ((A + A.T) % mod).any() or (np.diagonal(A) % mod).any():
        raise ValueError("matrix is not skew-symmetric modulo p^K")
    sign, vtot, unit = 1, 0, 1
    while A.shape[0]:
        m = A.shape[0]
        upper = np.triu(np.ones((m, m), dtype=bool), 1)
        S = np.where(upper, A, 0)
        hit = _first_min_valuation(S, p, K)
        if hit is None:
            return ValUnit.zero(p, K)
        i, j, v = hit
        for src, dst in ((i, 0), (j, 1)):
            if src != dst:
                perm = list(range(m))
                perm[src], perm[dst] = perm[dst], perm[src]
                A = A[np.ix_(perm, perm)]
                sign = -sign
        vtot += v
        if vtot >= K:
            return ValUnit.zero(p, K)
        pk = p**v
        u = _split(A[0, 1], p, v)
        unit = unit * u % mod
        if m > 2:
            uinv = pow(u, -1, mod)
            c0 = A[2:, 0]
            c1 = A[2:, 1]
            # Schur complement: A22 + (c1 c0^T - c0 c1^T) / a01
            upd = (np.outer(c1 // pk, c0) - np.outer(c0 // pk, c1)) % mod
            A = (A[2:, 2:] + upd * uinv) % mod
        else:
            A = A[2:, 2:]
    res = ValUnit(p, vtot, sign * unit, K - vtot)
    if res.known_to < target_k:
        raise PrecisionExhausted(
            f"Pfaffian unit known to p^{res.known_to}; need p^{target_k}"
        )
    return res


def interpolate_columns(nodes: Sequence[int], W: np.ndarray, mod: int, p: int) -> np.ndarray:
    """Monomial coefficients of the degree < N interpolants of every column of W.

    Row r of the result holds the coefficients of X^r.  Newton divided
    differences followed by expansion; all divisors are node differences,
    which must be units.
    """
    N = len(nodes)
    xs = [int(x) % mod for x in nodes]
    for i in range(N):
        for j in range(i):
            if (xs[i] - xs[j]) % p == 0:
                raise NodesCollide(f"nodes {nodes[j]} and {nodes[i]} coincide modulo {p}")
    dd = np.array(W, dtype=object) % mod
    for level in range(1, N):
        inv = np.array(
            [pow(xs[i] - xs[i - level], -1, mod) for i in range(level, N)], dtype=object
        )
        dd[level:] = ((dd[level:] - dd[level - 1 : N - 1]) * inv[:, None]) % mod
    coeffs = np.zeros_like(dd)
    coeffs[0] = dd[N - 1]
    deg = 0
    for level in range(N - 2, -1, -1):
        # coeffs <- coeffs * (X - x_level) + dd[level]
        shifted = np.zeros_like(coeffs)
        shifted[1 : deg + 2] = coeffs[: deg + 1]
        shifted[: deg + 1] -= coeffs[: deg + 1] * xs[level]
        shifted[0] += dd[level]
        coeffs = shifted % mod
        deg += 1
    return coeffs


def vandermonde(nodes: Sequence[int], mod: int) -> np.ndarray:
    N = len(nodes)
    return np.array([[pow(int(x), k, mod) for k in range(N)] for x in nodes], dtype=object)


def conjugate_vandermonde(M, nodes: Sequence[int], p: int, K: int) -> list[list[int]]:
    """V^{-1} M V mod p^K with V = (x_i^k), computed by interpolation."""
    mod = p**K
    A = np.array(M.entries if isinstance(M, KernelMatrix) else M, dtype=object) % mod
    W = A.dot(vandermonde(nodes, mod)) % mod
    return interpolate_columns(nodes, W, mod, p).tolist()


def inverse_mod(M, p: int, K: int) -> list[list[int]]:
    """Inverse over Z/p^K by Gauss-Jordan; det(M) must be a unit."""
    mod = p**K
    A = np.array(M, dtype=object) % mod
    n = A.shape[0]
    aug = np.concatenate([A, np.identity(n, dtype=object)], axis=1)
    for k in range(n):
        rows = [i for i in range(k, n) if aug[i, k] % p]
        if not rows:
            raise ZeroDivisionError("matrix is not invertible modulo p")
        r = rows[0]
        if r != k:
            aug[[k, r]] = aug[[r, k]]
        aug[k] = aug[k] * pow(int(aug[k, k]), -1, mod) % mod
        factors = aug[:, k].copy()
        factors[k] = 0
        aug = (aug - np.outer(factors, aug[k])) % mod
    return aug[:, n:].tolist()


def _rref_mod_p(A: np.ndarray, p: int):
    A = A.copy() % p
    rows, cols = A.shape
    pivots = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.nonzero(A[r:, c])[0]
        if nz.size == 0:
            continue
        k = r + int(nz[0])
        if k != r:
            A[[r, k]] = A[[k, r]]
        A[r] = A[r] * pow(int(A[r, c]), -1, p) % p
        f = A[:, c].copy()
        f[r] = 0
        A = (A - np.outer(f, A[r])) % p
        pivots.append(c)
        r += 1
    return A, pivots


def nullspace_mod_p(M, p: int) -> list[list[int]]:
    """Basis of {x : M x = 0} over F_p."""
    A = as_array(M, p).astype(object)
    R, pivots = _rref_mod_p(A, p)
    n = A.shape[1]
    free = [c for c in range(n) if c not in pivots]
    basis = []
    for f in free:
        x = [0] * n
        x[f] = 1
        for i, c in enumerate(pivots):
            x[c] = int(-R[i, f]) % p
        basis.append(x)
    return basis


def adjugate_mod_p(M, p: int) -> list[list[int]]:
    """Adjugate over F_p, valid for singular matrices as well.

    Rank n: det * inverse.  Rank n-1: adj = c v w^T with v, w spanning the
    right and left kernels and c fixed by one cofactor.  Lower rank: zero.
    """
    A = as_array(M, p).astype(object)
    n = A.shape[0]
    ker = nullspace_mod_p(A, p)
    if not ker:
        d = det_mod(A.tolist(), 1, p=p, K=1).residue(1)
        inv = np.array(inverse_mod(A.tolist(), p, 1), dtype=object)
        return (inv * d % p).tolist()
    if len(ker) > 1:
        return [[0] * n for _ in range(n)]
    v = ker[0]
    w = nullspace_mod_p(A.T, p)[0]
    i = next(t for t in range(n) if v[t])
    j = next(t for t in range(n) if w[t])
    minor = np.delete(np.delete(A, j, axis=0), i, axis=1)
    cof = (-1) ** (i + j) * det_mod(minor.tolist(), 1, p=p, K=1).residue(1)
    c = cof * pow(v[i] * w[j], -1, p) % p
    return [[c * v[r] * w[s] % p for s in range(n)] for r in range(n)]


def lagrange_coefficients(xs: Sequence[int], ys: Sequence[int], p: int) -> list[int]:
    """Coefficients (constant first) of the interpolant through (xs, ys) over F_p."""
    W = np.array([[y] for y in ys], dtype=object)
    return [int(c) for c in interpolate_columns(xs, W, p, p)[:, 0]]


def det_pencil_poly(M, p: int) -> list[int]:
    """Coefficients of det(I + tM) over F_p, constant term first (length n+1)."""
    A = as_array(M, p)
    n = A.shape[0]
    if n >= p:
        raise DegreeOverflow(f"degree {n} polynomial cannot be recovered from {p} points")
    ts = list(range(p))
    vals = [det_mod(identity_plus(A, p, 1, t), 1, p=p, K=1).residue(1) for t in ts]
    coeffs = lagrange_coefficients(ts, vals, p)
    if any(coeffs[n + 1 :]):
        raise AssertionError("pencil determinant exceeded its degree")
    return coeffs[: n + 1]


def sqrt_minus_one(p: int) -> int:
    """A square root of -1 mod p (p = 1 mod 4)."""
    if p % 4 != 1:
        raise ValueError(f"-1 is not a square modulo {p}")
    for g in range(2, p):
        a = pow(g, (p - 1) // 4, p)
        if a * a % p == p - 1:
            return a
    raise AssertionError("unreachable for prime p")


def det_gaussian_int(re, im, p: int) -> tuple[int, int]:
    """Determinant over F_p[i] = F_p[X]/(X^2 + 1), p = 3 mod 4.

    ``re`` and ``im`` are the coordinate matrices; returns (c0, c1).
    """
    R = np.array(re, dtype=np.int64) % p
    I = np.array(im, dtype=np.int64) % p
    n = R.shape[0]
    dr, di = 1, 0
    for k in range(n):
        nz = np.nonzero((R[k:, k] != 0) | (I[k:, k] != 0))[0]
        if nz.size == 0:
            return 0, 0
        r = k + int(nz[0])
        if r != k:
            R[[k, r]] = R[[r, k]]
            I[[k, r]] = I[[r, k]]
            dr, di = -dr, -di
        a, b = int(R[k, k]), int(I[k, k])
        dr, di = (dr * a - di * b) % p, (dr * b + di * a) % p
        if k + 1 == n:
            break
        ninv = pow(a * a + b * b, -1, p)
        ia, ib = a * ninv % p, -b * ninv % p
        cr, ci = R[k + 1 :, k], I[k + 1 :, k]
        mr, mi = (cr * ia - ci * ib) % p, (cr * ib + ci * ia) % p
        rr, ri = R[k, k + 1 :], I[k, k + 1 :]
        R[k + 1 :, k + 1 :] = (R[k + 1 :, k + 1 :] - (np.outer(mr, rr) - np.outer(mi, ri))) % p
        I[k + 1 :, k + 1 :] = (I[k + 1 :, k + 1 :] - (np.outer(mr, ri) + np.outer(mi, rr))) % p
    return dr % p, di % p


def per_pencil_transfer(A, u: int, p: int, sign: int = 1) -> int:
    """per(I + uA) over F_p via det(I + alpha u A) with alpha^2 = -1.

    Valid for Cauchy-kernel matrices on distinct nodes.  ``sign`` selects
    alpha or -alpha.
    """
    a = as_array(A, p)
    n = a.shape[0]
    if p % 4 == 1:
        alpha = sign * sqrt_minus_one(p) % p
        return det_mod(identity_plus(a, p, 1, alpha * u), 1, p=p, K=1).residue(1)
    # alpha = sign * i in F_p[i]
    re = np.identity(n, dtype=np.int64)
    im = (a * (sign * u % p)) % p
    c0, c1 = det_gaussian_int(re, im, p)
    if c1:
        raise NotInBaseField(f"det(I + alpha u A) = {c0} + {c1} i is not in F_{p}")
    return c0


def trace_mod(M, mod: int) -> int:
    return sum(int(M[i][i]) for i in range(len(M))) % mod
