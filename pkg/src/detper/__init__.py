"""Exact p-adic verification of determinant and permanent congruences for
Cauchy- and Cayley-type kernel matrices over Z/p^K."""

__version__ = "0.1.0"
