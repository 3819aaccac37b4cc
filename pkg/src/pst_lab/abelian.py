"""Finite abelian groups Z_{m_1} + ... + Z_{m_r} given by their moduli.

Elements, divisor tuples and character indices are plain tuples of ints.
Everything that enumerates elements uses lexicographic (mixed-radix) order
on coordinate tuples, first coordinate most significant; matrix rows and
columns across the package follow this order.
"""

from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass
from functools import cached_property, lru_cache
from typing import Iterable, Sequence

import numpy as np

Element = tuple[int, ...]


def parse_int_list(text: str) -> tuple[int, ...]:
    """Parse ``"4,2,3"`` into ``(4, 2, 3)``."""
    text = text.strip()
    if not text:
        return ()
    try:
        return tuple(int(part) for part in text.split(","))
    except ValueError:
        raise ValueError(f"expected comma-separated integers, got {text!r}") from None


def format_int_list(values: Iterable[int]) -> str:
    return ",".join(str(int(v)) for v in values)


def divisors(n: int) -> list[int]:
    """Positive divisors of ``n`` in increasing order."""
    if n < 1:
        raise ValueError(f"divisors of non-positive integer {n}")
    small, large = [], []
    d = 1
    while d * d <= n:
        if n % d == 0:
            small.append(d)
            if d * d != n:
                large.append(n // d)
        d += 1
    return small + large[::-1]


def two_adic_split(n: int) -> tuple[int, int]:
    """Write ``n = 2**alpha * m`` with ``m`` odd; return ``(alpha, m)``."""
    if n < 1:
        raise ValueError(f"expected a positive integer, got {n}")
    alpha = 0
    while n % 2 == 0:
        n //= 2
        alpha += 1
    return alpha, n


@dataclass(frozen=True)
class GroupSpec:
    """The group Z_{m_1} + ... + Z_{m_r}; factors with m_i = 1 are allowed."""

    moduli: tuple[int, ...]

    def __post_init__(self):
        moduli = tuple(int(m) for m in self.moduli)
        if not moduli:
            raise ValueError("a group needs at least one cyclic factor")
        if any(m < 1 for m in moduli):
            raise ValueError(f"moduli must be positive, got {moduli}")
        object.__setattr__(self, "moduli", moduli)

    @classmethod
    def parse(cls, text: str) -> GroupSpec:
        return cls(parse_int_list(text))

    def __str__(self):
        return format_int_list(self.moduli)

    @property
    def rank(self) -> int:
        return len(self.moduli)

    @property
    def order(self) -> int:
        return math.prod(self.moduli)

    @property
    def exponent(self) -> int:
        return math.lcm(*self.moduli)

    @cached_property
    def strides(self) -> tuple[int, ...]:
        out = [1] * self.rank
        for j in range(self.rank - 2, -1, -1):
            out[j] = out[j + 1] * self.moduli[j + 1]
        return tuple(out)

    @cached_property
    def coords(self) -> np.ndarray:
        """(N, r) array of all elements in lexicographic order."""
        grids = np.indices(self.moduli).reshape(self.rank, -1)
        return np.ascontiguousarray(grids.T.astype(np.int64))

    def elements(self) -> list[Element]:
        return [tuple(int(c) for c in row) for row in self.coords]

    @property
    def zero(self) -> Element:
        return (0,) * self.rank

    def check(self, x: Sequence[int]) -> Element:
        x = tuple(int(c) for c in x)
        if len(x) != self.rank:
            raise ValueError(f"element {x} has {len(x)} coordinates, group {self} has {self.rank}")
        if any(not 0 <= c < m for c, m in zip(x, self.moduli)):
            raise ValueError(f"element {x} out of range for group {self}")
        return x

    def reduce(self, x: Sequence[int]) -> Element:
        if len(x) != self.rank:
            raise ValueError(f"element {tuple(x)} has wrong length for group {self}")
        return tuple(int(c) % m for c, m in zip(x, self.moduli))

    def add(self, x: Element, y: Element) -> Element:
        return tuple((a + b) % m for a, b, m in zip(x, y, self.moduli))

    def neg(self, x: Element) -> Element:
        return tuple((-a) % m for a, m in zip(x, self.moduli))

    def sub(self, x: Element, y: Element) -> Element:
        return tuple((a - b) % m for a, b, m in zip(x, y, self.moduli))

    def index(self, x: Sequence[int]) -> int:
        return sum(int(c) * s for c, s in zip(x, self.strides))

    def element(self, idx: int) -> Element:
        if not 0 <= idx < self.order:
            raise IndexError(idx)
        return tuple(int(c) for c in self.coords[idx])

    def indices_of(self, coords: np.ndarray) -> np.ndarray:
        """Indices of coordinate rows (last axis = coordinates), reduced mod the moduli."""
        m = np.asarray(self.moduli, dtype=np.int64)
        s = np.asarray(self.strides, dtype=np.int64)
        return (np.mod(coords, m) * s).sum(axis=-1)

    def element_order(self, x: Element) -> int:
        return math.lcm(*(m // math.gcd(c, m) for c, m in zip(x, self.moduli)))

    def difference_table(self) -> np.ndarray:
        """``D[u, v] = index(v - u)``; a group-circulant matrix has ``H[u, v] = row[D[u, v]]``."""
        return _difference_table(self)

    def format(self, x: Sequence[int]) -> str:
        return format_int_list(x)

    def parse_element(self, text: str) -> Element:
        return self.check(parse_int_list(text))

    def is_divisor_tuple(self, d: Sequence[int]) -> bool:
        return len(d) == self.rank and all(di >= 1 and m % di == 0 for di, m in zip(d, self.moduli))

    def divisor_tuples(self) -> list[Element]:
        """All divisor tuples of the moduli, lexicographic."""
        out: list[Element] = [()]
        for m in self.moduli:
            out = [t + (d,) for t in out for d in divisors(m)]
        return out


@lru_cache(maxsize=32)
def _difference_table(group: GroupSpec) -> np.ndarray:
    c = group.coords
    table = group.indices_of(c[None, :, :] - c[:, None, :])
    table.setflags(write=False)
    return table


def gcd_tuple(x: Sequence[int], m: GroupSpec | Sequence[int]) -> Element:
    """Componentwise gcd with the zero convention gcd(0, n) = n.

    ``math.gcd(0, n) == n`` already, so the convention needs no special case;
    coordinates are reduced mod m_i first so representatives do not matter.
    """
    moduli = m.moduli if isinstance(m, GroupSpec) else tuple(m)
    if len(x) != len(moduli):
        raise ValueError(f"dimension mismatch: {tuple(x)} vs moduli {moduli}")
    return tuple(math.gcd(int(c) % mi, mi) for c, mi in zip(x, moduli))


def gcd_tuples_array(group: GroupSpec) -> np.ndarray:
    """(N, r) array of gcd tuples of every element, same convention as :func:`gcd_tuple`."""
    return np.gcd(group.coords, np.asarray(group.moduli, dtype=np.int64))


def char_exponent(k: Sequence[int], x: Sequence[int], group: GroupSpec) -> int:
    """Exponent e with chi_k(x) = zeta_{L0}^e, L0 the group exponent."""
    if len(k) != group.rank or len(x) != group.rank:
        raise ValueError("dimension mismatch between character/element and group")
    L0 = group.exponent
    return sum((kj * xj % mj) * (L0 // mj) for kj, xj, mj in zip(k, x, group.moduli)) % L0


def character_exponents(group: GroupSpec, cols: np.ndarray | None = None) -> np.ndarray:
    """Matrix ``E[k, j]`` of character exponents mod L0.

    Rows run over all characters; columns over all elements, or over the
    element indices in ``cols``.
    """
    if cols is None:
        return _full_character_exponents(group)
    return _character_exponents(group, group.coords[np.asarray(cols, dtype=np.int64)])


@lru_cache(maxsize=16)
def _full_character_exponents(group: GroupSpec) -> np.ndarray:
    table = _character_exponents(group, group.coords)
    table.setflags(write=False)
    return table


def _character_exponents(group: GroupSpec, xs: np.ndarray) -> np.ndarray:
    L0 = group.exponent
    K = group.coords
    out = np.zeros((K.shape[0], xs.shape[0]), dtype=np.int64)
    for j, mj in enumerate(group.moduli):
        if mj == 1:
            continue
        out += (np.outer(K[:, j], xs[:, j]) % mj) * (L0 // mj)
    return out % L0


def subgroup_generated(S: Iterable[Sequence[int]], group: GroupSpec) -> set[Element]:
    """Closure of S, -S and 0 under addition (breadth-first until fixpoint)."""
    gens = {group.reduce(s) for s in S}
    gens |= {group.neg(s) for s in gens}
    seen = {group.zero}
    queue = deque([group.zero])
    while queue:
        x = queue.popleft()
        for s in gens:
            y = group.add(x, s)
            if y not in seen:
                seen.add(y)
                queue.append(y)
    return seen


def crt_split(z: int, n: int) -> tuple[Element, int]:
    """Map z in Z_n, n = 2^alpha * m (m odd, alpha >= 1), to (2-adic digits of z mod 2^alpha, z mod m).

    The digit tuple is least significant first.
    """
    alpha, m = two_adic_split(n)
    if alpha < 1:
        raise ValueError(f"crt_split needs an even modulus, got {n}")
    if not 0 <= z < n:
        raise ValueError(f"{z} is not a residue mod {n}")
    low = z % (1 << alpha)
    return tuple((low >> j) & 1 for j in range(alpha)), z % m


def crt_join(bits: Sequence[int], residue: int, n: int) -> int:
    """Inverse of :func:`crt_split`."""
    alpha, m = two_adic_split(n)
    if len(bits) != alpha:
        raise ValueError(f"expected {alpha} binary digits for n={n}, got {len(bits)}")
    low = sum(int(b) << j for j, b in enumerate(bits))
    # z = low + 2^alpha * t with z = residue (mod m)
    p = 1 << alpha
    t = ((residue - low) * pow(p, -1, m)) % m if m > 1 else 0
    return low + p * t
