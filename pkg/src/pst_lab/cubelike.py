"""Cubelike graphs X(C): Cayley graphs over Z_2^n.

Bit vectors are tuples (c_0, ..., c_{n-1}); on the command line they are
written as bitstrings in the same order, so ``"100"`` is (1, 0, 0).
Translations P_u : x -> x + u are kept as index maps.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import reduce
from typing import Iterable, Sequence

import numpy as np

from pst_lab.abelian import Element, GroupSpec
from pst_lab.analysis import Periodic, PstShift
from pst_lab.cayley import CayleyGraph
from pst_lab.config import LIMITS
from pst_lab.evolution import Entry


def xor(u: Sequence[int], v: Sequence[int]) -> Element:
    return tuple((a + b) % 2 for a, b in zip(u, v))


def parse_bitstring(text: str) -> Element:
    text = text.strip()
    if not text or set(text) - {"0", "1"}:
        raise ValueError(f"not a bitstring: {text!r}")
    return tuple(int(c) for c in text)


def format_bits(u: Sequence[int]) -> str:
    return "".join(str(int(c)) for c in u)


@dataclass(frozen=True)
class CubelikeSpec:
    n: int
    C: frozenset[Element]

    def __post_init__(self):
        C = frozenset(tuple(int(c) for c in u) for u in self.C)
        for u in C:
            if len(u) != self.n or any(c not in (0, 1) for c in u):
                raise ValueError(f"{u} is not a bit vector of length {self.n}")
        object.__setattr__(self, "C", C)

    @classmethod
    def from_bitstrings(cls, n: int, bits: Iterable[str]) -> CubelikeSpec:
        return cls(n, frozenset(parse_bitstring(b) for b in bits))

    @property
    def sigma(self) -> Element:
        return reduce(xor, self.C, (0,) * self.n)

    @property
    def group(self) -> GroupSpec:
        return GroupSpec((2,) * self.n)

    def cayley(self) -> CayleyGraph:
        return CayleyGraph(self.group, self.C)


def translation(u: Sequence[int], n: int) -> np.ndarray:
    """Index map of P_u: position x holds the index of x + u."""
    shift = sum(int(c) << (n - 1 - j) for j, c in enumerate(u))
    return np.arange(2**n) ^ shift


def permutation_matrix(u: Sequence[int], n: int) -> np.ndarray:
    P = np.zeros((2**n, 2**n), dtype=np.int64)
    P[np.arange(2**n), translation(u, n)] = 1
    return P


def cubelike_adjacency(spec: CubelikeSpec, cap: int = LIMITS.cubelike_cap) -> np.ndarray:
    """A = sum of P_u over u in C."""
    if spec.n > cap:
        raise ValueError(f"dimension {spec.n} exceeds cap {cap}")
    A = np.zeros((2**spec.n, 2**spec.n), dtype=np.int64)
    for u in spec.C:
        A += permutation_matrix(u, spec.n)
    return A


@dataclass(frozen=True)
class HalfPiTransition:
    """H(pi/2) = i^phase_power * P_shift."""

    n: int
    phase_power: int
    shift: Element

    @property
    def phase(self) -> Entry:
        return Entry.i_power(self.phase_power)

    def to_array(self) -> np.ndarray:
        return complex(self.phase) * permutation_matrix(self.shift, self.n).astype(complex)


def cubelike_half_pi(spec: CubelikeSpec) -> HalfPiTransition:
    return HalfPiTransition(spec.n, len(spec.C) % 4, spec.sigma)


def classify_half_pi(spec: CubelikeSpec) -> Periodic | PstShift:
    h = cubelike_half_pi(spec)
    if any(h.shift):
        return PstShift(h.shift, h.phase)
    return Periodic(h.phase)


def cubelike_transition(spec: CubelikeSpec, t: float) -> np.ndarray:
    """Ordered product over u in C of (cos t I + i sin t P_u)."""
    size = 2**spec.n
    H = np.eye(size, dtype=complex)
    for u in sorted(spec.C):
        H = H @ (math.cos(t) * np.eye(size) + 1j * math.sin(t) * permutation_matrix(u, spec.n))
    return H
