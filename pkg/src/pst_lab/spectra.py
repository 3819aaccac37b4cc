"""Exact integral spectra of gcd-graphs.

The eigenvalue belonging to the character chi_k is the character sum
lambda_k = sum_{s in S} chi_k(s). Each sum is accumulated as a vector of
exponent counts in Z[zeta_L], L = lcm(group exponent, 4), and reduced
modulo Phi_L; a non-constant remainder means the sum is not an integer.
"""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass, field
from functools import cached_property, lru_cache
from typing import Hashable, Sequence

import numpy as np

from pst_lab.abelian import GroupSpec, char_exponent, character_exponents
from pst_lab.cayley import CayleyGraph
from pst_lab.config import LIMITS
from pst_lab.cyclotomic import CyclotomicInt, reduce_counts

_CHUNK_ENTRIES = 1 << 22


class NonIntegralSpectrum(ArithmeticError):
    """A character sum did not reduce to an integer; S is not a union of gcd-classes."""


def cyclotomic_order(group: GroupSpec) -> int:
    return math.lcm(group.exponent, 4)


def cyclotomic_reduce(x: CyclotomicInt) -> CyclotomicInt:
    return x.reduce()


def eigenvalue(g: CayleyGraph, k: Sequence[int]) -> int:
    """lambda_k for one character index k."""
    group = g.group
    k = group.check(k)
    L = cyclotomic_order(group)
    scale = L // group.exponent
    z = CyclotomicInt.from_exponents(L, (scale * char_exponent(k, s, group) for s in g.connection))
    canon = z.canonical()
    if any(canon[1:]):
        raise NonIntegralSpectrum(f"character sum at k={k} is not rational: {canon}")
    return int(canon[0])


def _row_histograms(exps: np.ndarray, L: int) -> np.ndarray:
    """counts[i, e] = #{j : exps[i, j] == e}."""
    rows = exps.shape[0]
    keys = exps + (np.arange(rows, dtype=np.int64) * L)[:, None]
    return np.bincount(keys.ravel(), minlength=rows * L).reshape(rows, L)


@dataclass(eq=False)
class Spectrum:
    """Integer eigenvalue per character, characters in element order."""

    graph: CayleyGraph
    eigenvalues: tuple[int, ...]
    _class_sum_cache: dict = field(default_factory=dict, repr=False)

    @property
    def group(self) -> GroupSpec:
        return self.graph.group

    @cached_property
    def multiplicities(self) -> dict[int, int]:
        return dict(sorted(Counter(self.eigenvalues).items()))

    @cached_property
    def residue_classes(self) -> dict[int, tuple[int, ...]]:
        """Residue r mod 4 -> indices of characters whose eigenvalue is r mod 4 (empty classes omitted)."""
        out: dict[int, list[int]] = {}
        for idx, lam in enumerate(self.eigenvalues):
            out.setdefault(lam % 4, []).append(idx)
        return {r: tuple(v) for r, v in sorted(out.items())}

    def eigenvalue_of(self, k: Sequence[int]) -> int:
        return self.eigenvalues[self.group.index(self.group.check(k))]

    def class_sums(self, labels: Sequence[Hashable]) -> dict[Hashable, np.ndarray]:
        """For each label value l, the integer vector x -> sum of chi_k(x) over characters labelled l.

        Labels must be constant on Galois orbits of characters (e.g. functions
        of the integer eigenvalue); otherwise the sums are not integers and
        NonIntegralSpectrum is raised.
        """
        labels = tuple(labels)
        if labels in self._class_sum_cache:
            return self._class_sum_cache[labels]
        group = self.group
        N = group.order
        L = cyclotomic_order(group)
        scale = L // group.exponent
        full = character_exponents(group) if N * N <= _CHUNK_ENTRIES else None
        out = {}
        codes = {lab: i for i, lab in enumerate(dict.fromkeys(labels))}
        label_arr = np.array([codes[lab] for lab in labels])
        for lab, code in codes.items():
            rows = np.flatnonzero(label_arr == code)
            result = np.zeros(N, dtype=object if N > 2**20 else np.int64)
            step = max(1, _CHUNK_ENTRIES // max(len(rows), 1))
            for start in range(0, N, step):
                cols = np.arange(start, min(N, start + step))
                if full is not None:
                    exps = full[np.ix_(rows, cols)]
                else:
                    exps = character_exponents(group, cols)[rows]
                counts = _row_histograms(exps.T * scale, L)
                reduced = reduce_counts(counts, L)
                if np.any(reduced[:, 1:] != 0):
                    raise NonIntegralSpectrum(f"class sum for label {lab!r} is not rational")
                result[start:start + len(cols)] = reduced[:, 0]
            out[lab] = result
        self._class_sum_cache[labels] = out
        return out

    def residue_sums(self) -> dict[int, np.ndarray]:
        """T_r(x) for every residue r in 0..3 (zero vectors for empty classes)."""
        sums = self.class_sums([lam % 4 for lam in self.eigenvalues])
        N = self.group.order
        return {r: sums.get(r, np.zeros(N, dtype=np.int64)) for r in range(4)}

    def idempotent_numerators(self, cap: int = LIMITS.exact_idempotent_cap) -> dict[int, np.ndarray]:
        """Eigenvalue mu -> integer matrix N * F_mu (the spectral idempotent times N)."""
        N = self.group.order
        if N > cap:
            raise ValueError(f"exact idempotents are only materialized for N <= {cap}")
        sums = self.class_sums(self.eigenvalues)
        table = self.group.difference_table()
        return {mu: sums[mu][table] for mu in sorted(sums)}

    def float_idempotents(self) -> dict[int, np.ndarray]:
        N = self.group.order
        sums = self.class_sums(self.eigenvalues)
        table = self.group.difference_table()
        return {mu: sums[mu].astype(float)[table] / N for mu in sorted(sums)}


@lru_cache(maxsize=256)
def full_spectrum(g: CayleyGraph) -> Spectrum:
    group = g.group
    N = group.order
    L = cyclotomic_order(group)
    conn = g.connection_indices()
    if conn.size == 0:
        return Spectrum(g, (0,) * N)
    exps = character_exponents(group, conn) * (L // group.exponent)
    reduced = reduce_counts(_row_histograms(exps, L), L)
    bad = np.flatnonzero(np.any(reduced[:, 1:] != 0, axis=1))
    if bad.size:
        k = group.element(int(bad[0]))
        raise NonIntegralSpectrum(f"eigenvalue at character {k} is not an integer")
    return Spectrum(g, tuple(int(v) for v in reduced[:, 0]))


def residue_class_sum(g: CayleyGraph, r: int, x: Sequence[int]) -> int:
    """T_r(x): sum of chi(x) over characters whose eigenvalue is r mod 4."""
    spec = full_spectrum(g)
    return int(spec.residue_sums()[r % 4][g.group.index(g.group.check(x))])


def spectrum_json(spec: Spectrum) -> dict:
    group = spec.group
    return {
        "schema": 1,
        "moduli": list(group.moduli),
        "lambda": list(spec.eigenvalues),
        "multiplicities": {str(k): v for k, v in spec.multiplicities.items()},
        "residues_mod_4": {
            str(r): [list(group.element(i)) for i in idx] for r, idx in spec.residue_classes.items()
        },
    }
