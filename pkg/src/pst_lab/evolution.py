"""Transition matrices H(t) = exp(itA) of Cayley graphs over abelian groups.

Two backends:

* exact, at t = q*pi/2 for integral graphs. With E_r the sum of the
  spectral idempotents whose eigenvalue is r mod 4, H(q*pi/2) equals
  sum_r i^(rq) E_r and E_r[u, v] = T_r(v - u) / N, so every entry is a
  Gaussian integer over N;
* float, at any t, from the numerically evaluated character sums.

H is group-circulant (H[u, v] depends only on v - u), so both backends
keep just the row of vertex 0.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from pst_lab.abelian import Element, GroupSpec, character_exponents
from pst_lab.cayley import CayleyGraph
from pst_lab.config import TOLERANCES
from pst_lab.spectra import NonIntegralSpectrum, Spectrum, full_spectrum

# i^p as (re, im)
_I_POWERS = ((1, 0), (0, 1), (-1, 0), (0, -1))


@dataclass(frozen=True)
class Entry:
    """The Gaussian rational (re + im*i) / den."""

    re: int
    im: int
    den: int = 1

    @classmethod
    def i_power(cls, p: int) -> Entry:
        return cls(*_I_POWERS[p % 4], 1)

    def __complex__(self):
        return complex(self.re / self.den, self.im / self.den)

    @property
    def is_unit(self) -> bool:
        return self.re * self.re + self.im * self.im == self.den * self.den

    @property
    def is_zero(self) -> bool:
        return self.re == 0 and self.im == 0

    def normalized(self) -> Entry:
        g = math.gcd(self.re, self.im, self.den)
        return Entry(self.re // g, self.im // g, self.den // g)

    def __mul__(self, other: Entry) -> Entry:
        return Entry(
            self.re * other.re - self.im * other.im,
            self.re * other.im + self.im * other.re,
            self.den * other.den,
        ).normalized()

    def conjugate(self) -> Entry:
        return Entry(self.re, -self.im, self.den)

    def __str__(self):
        sign = "+" if self.im >= 0 else "-"
        return f"{self.re}{sign}{abs(self.im)}i/{self.den}"

    def to_json(self) -> dict:
        return {"re_num": int(self.re), "im_num": int(self.im), "den": int(self.den)}


@dataclass(frozen=True, eq=False)
class QuarterTransition:
    """Exact H(q*pi/2); ``row[g]`` is the numerator pair (a, b) of H[0, g] = (a + bi) / N."""

    group: GroupSpec
    q: int
    row: tuple[tuple[int, int], ...]
    connection: frozenset[Element] = field(default=frozenset())

    @property
    def den(self) -> int:
        return self.group.order

    def at(self, g: Element) -> Entry:
        a, b = self.row[self.group.index(g)]
        return Entry(a, b, self.den)

    def entry(self, u: Element, v: Element) -> Entry:
        return self.at(self.group.sub(v, u))

    def row_arrays(self) -> tuple[np.ndarray, np.ndarray]:
        re = np.array([a for a, _ in self.row], dtype=np.int64)
        im = np.array([b for _, b in self.row], dtype=np.int64)
        return re, im

    def to_array(self) -> np.ndarray:
        re, im = self.row_arrays()
        row = (re + 1j * im) / self.den
        return row[self.group.difference_table()]

    def same_matrix(self, other: QuarterTransition) -> bool:
        return self.group == other.group and self.row == other.row

    def scalar(self) -> Entry | None:
        """gamma if H = gamma * I, else None."""
        if any(a or b for a, b in self.row[1:]):
            return None
        a, b = self.row[0]
        return Entry(a, b, self.den).normalized()

    def is_identity(self) -> bool:
        return self.scalar() == Entry(1, 0, 1)

    def is_unitary(self) -> bool:
        """Exact check of H H^dagger = I via the row convolution."""
        re, im = self.row_arrays()
        table = self.group.difference_table()
        # (H H^dagger)[0, w] = sum_g row[g] * conj(row[g - w]); row[g - w] = row[table[w, g]]
        cre = re @ re[table].T + im @ im[table].T
        cim = im @ re[table].T - re @ im[table].T
        target = np.zeros(self.group.order, dtype=np.int64)
        target[0] = self.den * self.den
        return bool(np.array_equal(cre, target) and not np.any(cim))

    def to_json(self) -> dict:
        return {
            "schema": 1,
            "moduli": list(self.group.moduli),
            "quarter": self.q,
            "row": {
                self.group.format(self.group.element(i)): str(Entry(a, b, self.den))
                for i, (a, b) in enumerate(self.row)
            },
            "row_exact": [Entry(a, b, self.den).to_json() for a, b in self.row],
        }


def quarter_transition(g: CayleyGraph, q: int, spectrum: Spectrum | None = None) -> QuarterTransition:
    spectrum = spectrum or full_spectrum(g)
    sums = spectrum.residue_sums()
    N = g.order
    re = np.zeros(N, dtype=np.int64)
    im = np.zeros(N, dtype=np.int64)
    for r, t_r in sums.items():
        pr, pi = _I_POWERS[(r * q) % 4]
        re = re + pr * t_r
        im = im + pi * t_r
    row = tuple((int(a), int(b)) for a, b in zip(re, im))
    return QuarterTransition(g.group, q, row, g.connection)


def multiply(h1: QuarterTransition, h2: QuarterTransition, q: int | None = None) -> QuarterTransition:
    """Exact product of two group-circulant quarter transitions on one group.

    The result is tagged with time ``q`` (default q1 + q2, the semigroup case).
    """
    if h1.group != h2.group:
        raise ValueError("transitions live on different groups")
    N = h1.den
    a1, b1 = h1.row_arrays()
    a2, b2 = h2.row_arrays()
    table = h1.group.difference_table()
    # (H1 H2)[0, w] = sum_g row1[g] row2[w - g], row2[w - g] = row2[table[g, w]]
    A2, B2 = a2[table], b2[table]
    re = a1 @ A2 - b1 @ B2
    im = a1 @ B2 + b1 @ A2
    if np.any(re % N) or np.any(im % N):
        raise ArithmeticError("product entries are not Gaussian integers over N")
    row = tuple((int(a), int(b)) for a, b in zip(re // N, im // N))
    q = h1.q + h2.q if q is None else q
    return QuarterTransition(h1.group, q, row, h1.connection | h2.connection)


def union_transition(hS: QuarterTransition, hT: QuarterTransition) -> QuarterTransition:
    """H_{S u T} = H_S H_T for disjoint connection sets at the same time."""
    if hS.group != hT.group:
        raise ValueError("transitions live on different groups")
    if hS.q != hT.q:
        raise ValueError(f"time mismatch: q={hS.q} vs q={hT.q}")
    if hS.connection & hT.connection:
        raise ValueError("connection sets are not disjoint")
    return multiply(hS, hT, q=hS.q)


def float_eigenvalues(group: GroupSpec, S) -> np.ndarray:
    """Character sums evaluated in floating point; valid for any symmetric S."""
    idx = np.array(sorted(group.index(s) for s in S), dtype=np.int64)
    if idx.size == 0:
        return np.zeros(group.order)
    exps = character_exponents(group, idx)
    return np.cos(2 * np.pi * exps / group.exponent).sum(axis=1)


def _character_matrix(group: GroupSpec) -> np.ndarray:
    return np.exp(2j * np.pi * character_exponents(group) / group.exponent)


def float_rows(g: CayleyGraph, times) -> np.ndarray:
    """H(t)[0, :] for every t in ``times``; shape (len(times), N)."""
    lam = float_eigenvalues(g.group, g.connection)
    phases = np.exp(1j * np.outer(np.atleast_1d(times), lam))
    return phases @ _character_matrix(g.group) / g.order


@dataclass(frozen=True, eq=False)
class FloatTransition:
    t: float
    entries: np.ndarray

    def unitarity_error(self) -> float:
        n = self.entries.shape[0]
        return float(np.abs(self.entries @ self.entries.conj().T - np.eye(n)).max())

    def is_unitary(self, tol: float = TOLERANCES.unitarity) -> bool:
        return self.unitarity_error() < tol


def float_transition(g: CayleyGraph, t: float) -> FloatTransition:
    row = float_rows(g, [t])[0]
    return FloatTransition(float(t), row[g.group.difference_table()])


def transition_family(g: CayleyGraph) -> Callable[[float], np.ndarray]:
    return lambda t: float_transition(g, t).entries


def kron_transition(h_factor: Callable[[float], np.ndarray], spec_h: Spectrum, t: float) -> FloatTransition:
    """Transition of G x H at time t: sum over eigenvalues mu of H of H_G(mu t) (x) F_mu.

    ``h_factor`` returns the transition matrix of G at a given time.
    """
    if not all(isinstance(mu, int) for mu in spec_h.eigenvalues):
        raise NonIntegralSpectrum("factor spectrum must be integral")
    total = None
    for mu, F in spec_h.float_idempotents().items():
        term = np.kron(h_factor(mu * t), F)
        total = term if total is None else total + term
    return FloatTransition(float(t), total)
