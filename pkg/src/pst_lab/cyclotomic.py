"""Exact arithmetic in Z[zeta_L].

An element sum_k c_k zeta_L^k is stored as its coefficient vector of length
L. The canonical form is the remainder modulo the cyclotomic polynomial
Phi_L, written in the power basis 1, zeta, ..., zeta^(phi(L)-1); an element
is rational iff only the constant coefficient survives.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Sequence

import numpy as np

from pst_lab.abelian import divisors


def poly_divmod(num: Sequence[int], den: Sequence[int]) -> tuple[list[int], list[int]]:
    """Exact division of integer polynomials by a monic divisor (coefficients low -> high)."""
    den = list(den)
    while den and den[-1] == 0:
        den.pop()
    if not den or den[-1] != 1:
        raise ValueError("divisor must be monic")
    rem = list(num)
    dd = len(den) - 1
    if len(rem) <= dd:
        return [0], rem + [0] * (dd - len(rem))
    quot = [0] * (len(rem) - dd)
    for i in range(len(rem) - 1, dd - 1, -1):
        c = rem[i]
        if c:
            quot[i - dd] = c
            for j in range(dd + 1):
                rem[i - dd + j] -= c * den[j]
    return quot, rem[:dd]


@lru_cache(maxsize=None)
def cyclotomic_polynomial(L: int) -> tuple[int, ...]:
    """Phi_L, by dividing x^L - 1 by Phi_d for every proper divisor d of L."""
    if L < 1:
        raise ValueError(f"order must be positive, got {L}")
    poly = [-1] + [0] * (L - 1) + [1]
    for d in divisors(L)[:-1]:
        poly, rem = poly_divmod(poly, cyclotomic_polynomial(d))
        if any(rem):
            raise ArithmeticError(f"Phi_{d} does not divide x^{L}-1")
    return tuple(poly)


def totient(L: int) -> int:
    return len(cyclotomic_polynomial(L)) - 1


@lru_cache(maxsize=None)
def reduction_rows(L: int) -> tuple[tuple[int, ...], ...]:
    """Row k holds zeta_L^k in the power basis, i.e. x^k mod Phi_L."""
    phi = cyclotomic_polynomial(L)
    deg = len(phi) - 1
    rows = []
    cur = [1] + [0] * (deg - 1) if deg > 0 else []
    for _ in range(L):
        rows.append(tuple(cur))
        # multiply by x, then reduce the overflowing top coefficient
        top = cur[-1] if deg else 0
        cur = [0] + cur[:-1]
        if top:
            cur = [c - top * p for c, p in zip(cur, phi[:deg])]
    return tuple(rows)


@lru_cache(maxsize=None)
def _reduction_array(L: int) -> tuple[np.ndarray, np.ndarray, int]:
    rows = reduction_rows(L)
    arr = np.array(rows, dtype=object).reshape(L, -1)
    bound = max((abs(c) for row in rows for c in row), default=0)
    return arr, arr.astype(np.int64), bound


def reduce_counts(counts: np.ndarray, L: int) -> np.ndarray:
    """Canonical forms of many elements at once.

    ``counts`` has shape (M, L); row i is the coefficient vector of one
    element. Returns an (M, phi(L)) integer array. Falls back to Python
    integers when int64 could overflow.
    """
    counts = np.asarray(counts)
    arr, arr64, bound = _reduction_array(L)
    if counts.dtype != object:
        worst = int(np.abs(counts).sum(axis=1).max(initial=0)) * bound
        if worst < 2**62:
            return counts.astype(np.int64) @ arr64
    return counts.astype(object) @ arr


@dataclass(frozen=True)
class CyclotomicInt:
    order: int
    coeffs: tuple[int, ...]

    def __post_init__(self):
        coeffs = tuple(int(c) for c in self.coeffs)
        if len(coeffs) < self.order:
            coeffs = coeffs + (0,) * (self.order - len(coeffs))
        elif len(coeffs) > self.order:
            # fold exponents mod L
            folded = [0] * self.order
            for k, c in enumerate(coeffs):
                folded[k % self.order] += c
            coeffs = tuple(folded)
        object.__setattr__(self, "coeffs", coeffs)

    @classmethod
    def from_exponents(cls, L: int, exponents) -> CyclotomicInt:
        coeffs = [0] * L
        for e in exponents:
            coeffs[int(e) % L] += 1
        return cls(L, tuple(coeffs))

    @classmethod
    def rational(cls, L: int, value: int) -> CyclotomicInt:
        return cls(L, (value,))

    def reduce(self) -> CyclotomicInt:
        """Canonical representative: remainder of the exact division by Phi_L."""
        _, rem = poly_divmod(self.coeffs, cyclotomic_polynomial(self.order))
        return CyclotomicInt(self.order, tuple(rem))

    def canonical(self) -> tuple[int, ...]:
        return self.reduce().coeffs[: totient(self.order)]

    @property
    def is_rational(self) -> bool:
        return not any(self.canonical()[1:])

    def rational_value(self) -> int:
        c = self.canonical()
        if any(c[1:]):
            raise ValueError("element is not rational")
        return c[0]

    def __add__(self, other: CyclotomicInt) -> CyclotomicInt:
        self._same_order(other)
        return CyclotomicInt(self.order, tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    def __neg__(self) -> CyclotomicInt:
        return CyclotomicInt(self.order, tuple(-a for a in self.coeffs))

    def __sub__(self, other: CyclotomicInt) -> CyclotomicInt:
        return self + (-other)

    def __mul__(self, other: CyclotomicInt) -> CyclotomicInt:
        self._same_order(other)
        L = self.order
        out = [0] * L
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    if b:
                        out[(i + j) % L] += a * b
        return CyclotomicInt(L, tuple(out))

    def __eq__(self, other):
        if not isinstance(other, CyclotomicInt):
            return NotImplemented
        return self.order == other.order and self.canonical() == other.canonical()

    def __hash__(self):
        return hash((self.order, self.canonical()))

    def to_complex(self) -> complex:
        k = np.arange(self.order)
        return complex(np.dot(np.array(self.coeffs, dtype=float), np.exp(2j * np.pi * k / self.order)))

    def _same_order(self, other):
        if self.order != other.order:
            raise ValueError(f"orders differ: {self.order} vs {other.order}")
