"""Cross-validation battery behind ``pst-lab selftest``."""

from __future__ import annotations

import itertools
import math

import numpy as np

from pst_lab.abelian import GroupSpec
from pst_lab.cayley import CayleyGraph, gcd_graph
from pst_lab.evolution import float_transition, quarter_transition
from pst_lab.oracle import brute_spectrum, dense_adjacency, expm_oracle
from pst_lab.spectra import full_spectrum
from pst_lab.theorems import SCOPES, verify_theorem_suite


def groups_up_to(max_n: int) -> list[tuple[int, ...]]:
    """Non-decreasing moduli >= 2 with product <= max_n (one per factor multiset)."""

    def parts(n, lo):
        if n == 1:
            yield ()
            return
        for f in range(lo, n + 1):
            if n % f == 0:
                for rest in parts(n // f, f):
                    yield (f,) + rest

    return [p for n in range(2, max_n + 1) for p in parts(n, 2)]


def gcd_graphs_up_to(max_n: int, max_tuples: int = 2):
    for moduli in groups_up_to(max_n):
        group = GroupSpec(moduli)
        tuples = group.divisor_tuples()
        for k in range(max_tuples + 1):
            for combo in itertools.combinations(tuples, k):
                yield gcd_graph(group, combo)


def compare_backends(g: CayleyGraph, t: float = math.pi / 2) -> dict[str, float | bool]:
    """Pairwise max-entry differences of float / exact / oracle at t (exact only at t = pi/2)."""
    fl = float_transition(g, t)
    ex = quarter_transition(g, 1)
    orc = expm_oracle(dense_adjacency(g.group.moduli, g.connection), t)
    exact = ex.to_array()
    return {
        "float_vs_exact": float(np.abs(fl.entries - exact).max()),
        "float_vs_oracle": float(np.abs(fl.entries - orc).max()),
        "exact_vs_oracle": float(np.abs(exact - orc).max()),
        "exact_unitary": ex.is_unitary(),
        "float_unitarity": fl.unitarity_error(),
        "oracle_unitarity": float(np.abs(orc @ orc.conj().T - np.eye(g.order)).max()),
    }


def run_selftest(max_n: int = 16) -> tuple[bool, list[str]]:
    lines = []
    ok = True
    worst = 0.0
    spectra_ok = True
    count = 0
    for g in gcd_graphs_up_to(max_n):
        cmp = compare_backends(g)
        count += 1
        worst = max(worst, cmp["float_vs_exact"], cmp["float_vs_oracle"], cmp["exact_vs_oracle"])
        ok &= cmp["exact_unitary"] and cmp["float_unitarity"] < 1e-9 and cmp["oracle_unitarity"] < 1e-9
        exact = np.sort(np.array(full_spectrum(g).eigenvalues, dtype=float))
        brute = brute_spectrum(dense_adjacency(g.group.moduli, g.connection))
        spectra_ok &= bool(np.abs(exact - brute).max() < 1e-6)
    ok &= worst < 1e-8 and spectra_ok
    lines.append(f"{'pass' if worst < 1e-8 else 'FAIL'}  backends agree on {count} gcd-graphs (N <= {max_n}), worst {worst:.1e}")
    lines.append(f"{'pass' if spectra_ok else 'FAIL'}  exact spectra match the dense eigensolver")
    for scope in SCOPES:
        report = verify_theorem_suite(scope, max_n)
        ok &= report.passed
        lines.append(f"{'pass' if report.passed else 'FAIL'}  {scope}: {len(report.results)} instances (bound {max_n})")
    return bool(ok), lines
