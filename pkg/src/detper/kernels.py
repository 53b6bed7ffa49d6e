"""Builders for the Cauchy/Cayley kernel matrices and the D_p(a, b) family."""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Optional, Sequence

import numpy as np

from .errors import BadCongruenceClass, NodesCollide
from .ring import PadicResidue


class Kind(str, enum.Enum):
    CAUCHY = "cauchy"
    CAYLEY = "cayley"
    CAYLEY_FULL = "cayley_full"
    QUAD_CAUCHY = "quad_cauchy"
    QUAD_CAYLEY = "quad_cayley"
    DPAB = "dpab"
    GENERIC_CAUCHY = "generic_cauchy"
    GENERIC_CAYLEY = "generic_cayley"


CAUCHY_KINDS = (Kind.CAUCHY, Kind.QUAD_CAUCHY, Kind.GENERIC_CAUCHY)
CAYLEY_KINDS = (Kind.CAYLEY, Kind.CAYLEY_FULL, Kind.QUAD_CAYLEY, Kind.GENERIC_CAYLEY)


@dataclass(frozen=True)
class KernelMatrix:
    """A square matrix over Z/p^K together with the nodes that index it.

    ``entries`` holds canonical integer residues row by row; use
    :meth:`entry` for a :class:`PadicResidue` view.
    """

    kind: Kind
    p: int
    K: int
    nodes: tuple[int, ...]
    entries: tuple[tuple[int, ...], ...]
    params: tuple[int, ...] = field(default=())

    @property
    def n(self) -> int:
        return len(self.nodes)

    @property
    def modulus(self) -> int:
        return self.p**self.K

    def entry(self, i: int, j: int) -> PadicResidue:
        return PadicResidue(self.p, self.K, self.entries[i][j])

    def rows(self) -> list[list[int]]:
        return [list(r) for r in self.entries]

    def array(self) -> np.ndarray:
        return np.array(self.entries, dtype=object).reshape(self.n, self.n)

    def with_precision(self, K: int) -> KernelMatrix:
        """Rebuild the same matrix at another precision."""
        if self.kind is Kind.DPAB:
            if K != 1:
                raise ValueError("D_p(a,b) matrices exist only modulo p")
            return self
        if self.kind in (Kind.GENERIC_CAUCHY, Kind.GENERIC_CAYLEY):
            return build_generic(self.kind, self.nodes, self.p, K)
        return build_kernel(self.kind, self.p, K)

    def to_json(self) -> dict:
        return {
            "kind": self.kind.value,
            "p": self.p,
            "K": self.K,
            "n": self.n,
            "nodes": [str(x) for x in self.nodes],
            "entries": [[str(x) for x in row] for row in self.entries],
        }


def _check_distinct(nodes: Sequence[int], p: int) -> None:
    seen: dict[int, int] = {}
    for x in nodes:
        r = x % p
        if r in seen:
            raise NodesCollide(f"nodes {seen[r]} and {x} coincide modulo {p}")
        seen[r] = x


def _cauchy_rows(nodes, mod):
    n = len(nodes)
    return tuple(
        tuple(0 if i == j else pow(nodes[i] - nodes[j], -1, mod) for j in range(n))
        for i in range(n)
    )


def _cayley_rows(nodes, mod):
    n = len(nodes)
    return tuple(
        tuple(
            0 if i == j else (nodes[i] + nodes[j]) * pow(nodes[i] - nodes[j], -1, mod) % mod
            for j in range(n)
        )
        for i in range(n)
    )


def build_generic(kind: Kind, nodes: Sequence[int], p: int, K: int) -> KernelMatrix:
    """Cauchy 1/(x-y) or Cayley (x+y)/(x-y) kernel on arbitrary distinct nodes."""
    kind = Kind(kind)
    mod = p**K
    nodes = tuple(int(x) % mod for x in nodes)
    _check_distinct(nodes, p)
    if kind in CAUCHY_KINDS:
        rows = _cauchy_rows(nodes, mod)
    elif kind in CAYLEY_KINDS:
        rows = _cayley_rows(nodes, mod)
    else:
        raise ValueError(f"{kind} is not a kernel kind")
    return KernelMatrix(kind, p, K, nodes, rows)


def kernel_nodes(kind: Kind, p: int) -> list[int]:
    kind = Kind(kind)
    if kind in (Kind.CAUCHY, Kind.CAYLEY, Kind.DPAB):
        return list(range(1, p))
    if kind is Kind.CAYLEY_FULL:
        # index p is read as the residue 0
        return list(range(1, p)) + [0]
    if kind in (Kind.QUAD_CAUCHY, Kind.QUAD_CAYLEY):
        if p % 4 != 3:
            raise BadCongruenceClass(f"{kind.value} needs p = 3 mod 4, got p={p}")
        return [i * i for i in range(1, (p - 1) // 2 + 1)]
    raise ValueError(f"{kind} has no canonical node set")


def build_kernel(kind: Kind, p: int, K: int = 1) -> KernelMatrix:
    kind = Kind(kind)
    if kind is Kind.DPAB:
        raise ValueError("use build_dpab for D_p(a,b)")
    if K < 1:
        raise ValueError("precision exponent must be >= 1")
    nodes = kernel_nodes(kind, p)
    generic = build_generic(
        Kind.GENERIC_CAUCHY if kind in CAUCHY_KINDS else Kind.GENERIC_CAYLEY, nodes, p, K
    )
    return KernelMatrix(kind, p, K, generic.nodes, generic.entries)


def build_dpab(p: int, a: int, b: int) -> KernelMatrix:
    """(p-1)x(p-1) matrix of (i^2 + a i j + b j^2)^(p-2) mod p."""
    a %= p
    b %= p
    n = p - 1
    rows = tuple(
        tuple(pow((i * i + a * i * j + b * j * j) % p, p - 2, p) for j in range(1, n + 1))
        for i in range(1, n + 1)
    )
    return KernelMatrix(Kind.DPAB, p, 1, tuple(range(1, p)), rows, (a, b))


def mu_m_nodes(p: int) -> list[int]:
    """Squares 1^2, ..., m^2 mod p; for p = 3 mod 4 these are the m-th roots of unity."""
    if p % 4 != 3:
        raise BadCongruenceClass(f"mu_m nodes need p = 3 mod 4, got p={p}")
    m = (p - 1) // 2
    out = [i * i % p for i in range(1, m + 1)]
    roots = {x for x in range(1, p) if pow(x, m, p) == 1}
    if set(out) != roots or len(out) != len(roots):
        raise AssertionError(f"squares mod {p} are not the {m}-th roots of unity")
    return out


def node_polynomial(nodes: Sequence[int], mod: int) -> list[int]:
    """Coefficients (constant first) of prod (X - x) modulo ``mod``."""
    c = [1]
    for x in nodes:
        nxt = [0] * (len(c) + 1)
        for r, cr in enumerate(c):
            nxt[r + 1] += cr
            nxt[r] -= cr * x
        c = [v % mod for v in nxt]
    return c


def phi_correction(p: int) -> Optional[list[int]]:
    """B(X) with prod_{i<=m} (X - i^2) = X^m - 1 - p B(X) mod p^2, or None.

    None means the product is not congruent to X^m - 1 modulo p.
    """
    m = (p - 1) // 2
    p2 = p * p
    c = node_polynomial([i * i for i in range(1, m + 1)], p2)
    target = [-1 % p2] + [0] * (m - 1) + [1]
    diff = [(t - x) % p2 for t, x in zip(target, c)]
    if c[m] != 1 or any(d % p for d in diff):
        return None
    return [d // p for d in diff[:m]]


def phi_check(p: int) -> bool:
    if p % 4 != 3 or p <= 3:
        raise BadCongruenceClass(f"phi_check needs p = 3 mod 4 and p > 3, got p={p}")
    return phi_correction(p) is not None
