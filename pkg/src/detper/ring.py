"""Residue arithmetic modulo p^K and in the quadratic extension F_{p^2}.

Everything here works on plain Python integers; values are immutable and
canonical (``0 <= value < p**K``), so equality is structural.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Optional, Union

from .errors import (
    BudgetExceeded,
    DivisionByZero,
    FactorizationBudgetExceeded,
    NonUnit,
    NotIrreducible,
    NotNormOne,
)

INFINITE = math.inf

# trial-division cap for factoring p + 1
ORDER_PRIME_CAP = 1 << 20
# largest p for which (p - 1)! is formed exactly
WILSON_CAP = 200_000


@lru_cache(maxsize=4096)
def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


def odd_primes(lo: int, hi: int) -> list[int]:
    """Odd primes in the closed interval [lo, hi], ascending."""
    lo = max(lo, 3)
    if hi < lo:
        return []
    sieve = bytearray([1]) * (hi + 1)
    sieve[0:2] = b"\x00\x00"
    for i in range(2, math.isqrt(hi) + 1):
        if sieve[i]:
            sieve[i * i :: i] = bytearray(len(range(i * i, hi + 1, i)))
    return [q for q in range(lo, hi + 1) if sieve[q] and q % 2]


def factorize(n: int, cap: int = ORDER_PRIME_CAP) -> dict[int, int]:
    """Prime factorization of ``n`` by trial division (``n <= cap + 1``)."""
    if n > cap + 1:
        raise FactorizationBudgetExceeded(f"{n} exceeds trial-division cap {cap}")
    out: dict[int, int] = {}
    f = 2
    while f * f <= n:
        while n % f == 0:
            out[f] = out.get(f, 0) + 1
            n //= f
        f += 1 if f == 2 else 2
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


@dataclass(frozen=True)
class PadicResidue:
    """An integer modulo ``p**K`` kept in canonical form."""

    p: int
    K: int
    value: int

    def __post_init__(self):
        if self.K < 1:
            raise ValueError(f"precision exponent must be >= 1, got {self.K}")
        object.__setattr__(self, "value", self.value % self.p**self.K)

    @property
    def modulus(self) -> int:
        return self.p**self.K

    def _other(self, other) -> Optional[int]:
        if isinstance(other, PadicResidue):
            if (other.p, other.K) != (self.p, self.K):
                raise ValueError("operands live in different rings")
            return other.value
        if isinstance(other, int):
            return other
        return None

    def _new(self, value: int) -> PadicResidue:
        return PadicResidue(self.p, self.K, value)

    def __add__(self, other):
        v = self._other(other)
        return NotImplemented if v is None else self._new(self.value + v)

    __radd__ = __add__

    def __sub__(self, other):
        v = self._other(other)
        return NotImplemented if v is None else self._new(self.value - v)

    def __rsub__(self, other):
        v = self._other(other)
        return NotImplemented if v is None else self._new(v - self.value)

    def __mul__(self, other):
        v = self._other(other)
        return NotImplemented if v is None else self._new(self.value * v)

    __rmul__ = __mul__

    def __neg__(self):
        return self._new(-self.value)

    def __pow__(self, n: int):
        if n < 0:
            return mod_inv(self) ** (-n)
        return self._new(pow(self.value, n, self.modulus))

    def __int__(self):
        return self.value

    def reduce(self, k: int) -> PadicResidue:
        """The same residue viewed modulo ``p**k`` (``k <= K``)."""
        if k > self.K:
            raise ValueError(f"cannot raise precision from {self.K} to {k}")
        return PadicResidue(self.p, k, self.value)


def mod_inv(x: PadicResidue) -> PadicResidue:
    if x.value % x.p == 0:
        raise NonUnit(f"{x.value} is not a unit modulo {x.p}^{x.K}")
    return PadicResidue(x.p, x.K, pow(x.value, -1, x.modulus))


def legendre(a: int, p: int) -> int:
    a %= p
    if a == 0:
        return 0
    return 1 if pow(a, (p - 1) // 2, p) == 1 else -1


def chi(p: int) -> int:
    """Legendre symbol of -1, i.e. (-1)^((p-1)/2)."""
    return 1 if p % 4 == 1 else -1


@dataclass(frozen=True)
class ValUnit:
    """A value written as ``p**valuation * unit``.

    ``unit`` is trusted modulo ``p**known_to``.  When ``valuation`` is
    INFINITE the unit is ``None`` and ``known_to`` is the exponent to which
    the vanishing is certain (INFINITE for an exact zero).
    """

    p: int
    valuation: Union[int, float]
    unit: Optional[int]
    known_to: Union[int, float]

    def __post_init__(self):
        if self.valuation == INFINITE:
            if self.unit is not None:
                raise ValueError("a zero value carries no unit")
            return
        if self.unit % self.p == 0:
            raise ValueError("unit part must be coprime to p")
        if self.known_to < 1:
            raise ValueError("unit must be known at least modulo p")
        object.__setattr__(self, "unit", self.unit % self.p**self.known_to)

    @classmethod
    def zero(cls, p: int, known_to=INFINITE) -> ValUnit:
        return cls(p, INFINITE, None, known_to)

    @property
    def is_zero(self) -> bool:
        return self.valuation == INFINITE

    @property
    def precision(self):
        """Exponent k such that the value itself is known modulo p^k."""
        if self.is_zero:
            return self.known_to
        return self.valuation + self.known_to

    def residue(self, k: int) -> int:
        """The value modulo ``p**k``; requires ``k <= precision``."""
        if k > self.precision:
            raise ValueError(f"value known only modulo p^{self.precision}, asked p^{k}")
        if self.is_zero or self.valuation >= k:
            return 0
        return self.p**self.valuation * self.unit % self.p**k


def val_unit_split(x: PadicResidue) -> ValUnit:
    if x.value == 0:
        return ValUnit.zero(x.p, x.K)
    v, u = 0, x.value
    while u % x.p == 0:
        u //= x.p
        v += 1
    return ValUnit(x.p, v, u, x.K - v)


def wilson_quotient(p: int) -> int:
    """((p-1)! + 1) / p reduced mod p, cross-checked against (p-2)! mod p^2."""
    if p > WILSON_CAP:
        raise BudgetExceeded(f"p={p} exceeds the factorial budget {WILSON_CAP}")
    f = math.factorial(p - 1)
    w, r = divmod(f + 1, p)
    if r:
        raise AssertionError(f"Wilson's theorem fails for {p}; is it prime?")
    p2 = p * p
    if (f // (p - 1) - (1 + p * (1 - w))) % p2:
        raise AssertionError(f"(p-2)! != 1 + p(1 - W_p) mod p^2 at p={p}")
    return w % p


def double_factorial_sq(p: int, K: int) -> PadicResidue:
    """((p-2)!!)^2 modulo p^K; (p-2)!! is the product of odd numbers below p."""
    mod = p**K
    o = 1
    for t in range(3, p - 1, 2):
        o = o * t % mod
    return PadicResidue(p, K, o * o)


def morley_holds(p: int) -> bool:
    """Morley's congruence (-1)^h C(p-1, h) == 4^(p-1) mod p^3, h = (p-1)/2.

    True for every prime p >= 5; false at p = 3.
    """
    h = (p - 1) // 2
    p3 = p**3
    return ((-1) ** h * math.comb(p - 1, h) - pow(4, p - 1, p3)) % p3 == 0


@lru_cache(maxsize=1024)
def _irreducible(p: int, a: int, b: int) -> bool:
    return legendre(a * a - 4 * b, p) == -1


@dataclass(frozen=True)
class QuadExtElem:
    """``c0 + c1*lam`` in F_p[X]/(X^2 + a X + b), lam the class of X."""

    p: int
    a: int
    b: int
    c0: int
    c1: int

    def __post_init__(self):
        p = self.p
        for name in ("a", "b", "c0", "c1"):
            object.__setattr__(self, name, getattr(self, name) % p)
        if not _irreducible(p, self.a, self.b):
            raise NotIrreducible(f"X^2 + {self.a}X + {self.b} splits over F_{p}")

    @classmethod
    def gen(cls, p: int, a: int, b: int) -> QuadExtElem:
        return cls(p, a, b, 0, 1)

    def scalar(self, c: int) -> QuadExtElem:
        return QuadExtElem(self.p, self.a, self.b, c, 0)

    @property
    def in_base_field(self) -> bool:
        return self.c1 == 0

    def __bool__(self):
        return bool(self.c0 or self.c1)

    def _other(self, other):
        if isinstance(other, QuadExtElem):
            if (other.p, other.a, other.b) != (self.p, self.a, self.b):
                raise ValueError("operands live in different fields")
            return other
        if isinstance(other, int):
            return self.scalar(other)
        return None

    def __add__(self, other):
        y = self._other(other)
        if y is None:
            return NotImplemented
        return QuadExtElem(self.p, self.a, self.b, self.c0 + y.c0, self.c1 + y.c1)

    __radd__ = __add__

    def __neg__(self):
        return QuadExtElem(self.p, self.a, self.b, -self.c0, -self.c1)

    def __sub__(self, other):
        y = self._other(other)
        return NotImplemented if y is None else self + (-y)

    def __rsub__(self, other):
        y = self._other(other)
        return NotImplemented if y is None else y + (-self)

    def __mul__(self, other):
        y = self._other(other)
        if y is None:
            return NotImplemented
        # lam^2 = -a lam - b
        hi = self.c1 * y.c1
        c0 = self.c0 * y.c0 - self.b * hi
        c1 = self.c0 * y.c1 + self.c1 * y.c0 - self.a * hi
        return QuadExtElem(self.p, self.a, self.b, c0, c1)

    __rmul__ = __mul__

    def __truediv__(self, other):
        y = self._other(other)
        return NotImplemented if y is None else self * y.inverse()

    def __rtruediv__(self, other):
        y = self._other(other)
        return NotImplemented if y is None else y * self.inverse()

    def __pow__(self, n: int):
        base = self
        if n < 0:
            base, n = self.inverse(), -n
        out = self.scalar(1)
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def frobenius(self) -> QuadExtElem:
        # lam -> mu = -a - lam
        return QuadExtElem(self.p, self.a, self.b, self.c0 - self.a * self.c1, -self.c1)

    def norm(self) -> int:
        n = self * self.frobenius()
        return n.c0

    def inverse(self) -> QuadExtElem:
        if not self:
            raise DivisionByZero("inverse of zero in F_{p^2}")
        ninv = pow(self.norm(), -1, self.p)
        return self.frobenius() * ninv


def ext_arith(x: QuadExtElem, y: Optional[QuadExtElem], op: str, n: int = 0) -> QuadExtElem:
    """Dispatch one of add, mul, pow, frobenius, inv by name."""
    if op == "add":
        return x + y
    if op == "mul":
        return x * y
    if op == "pow":
        return x**n
    if op == "frobenius":
        return x.frobenius()
    if op == "inv":
        return x.inverse()
    raise ValueError(f"unknown operation {op!r}")


def norm_one_order(x: QuadExtElem) -> int:
    """Multiplicative order of an element with x^(p+1) = 1."""
    p = x.p
    one = x.scalar(1)
    if x ** (p + 1) != one:
        raise NotNormOne(f"{x} is not in the norm-one subgroup")
    h = p + 1
    for q in factorize(p + 1):
        while h % q == 0 and x ** (h // q) == one:
            h //= q
    return h
