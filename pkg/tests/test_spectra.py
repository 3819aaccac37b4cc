import itertools
import math

import numpy as np
import pytest
from hypothesis import given

from pst_lab.abelian import GroupSpec, divisors
from pst_lab.cayley import build_cayley, gcd_graph, icg, is_gcd_set
from pst_lab.evolution import float_eigenvalues
from pst_lab.oracle import brute_spectrum
from pst_lab.spectra import NonIntegralSpectrum, eigenvalue, full_spectrum, spectrum_json

from tests.strategies import gcd_graphs


def mobius(n: int) -> int:
    result, p = 1, 2
    while p * p <= n:
        if n % p == 0:
            n //= p
            if n % p == 0:
                return 0
            result = -result
        p += 1
    return -result if n > 1 else result


def ramanujan_sum(q: int, k: int) -> int:
    """c_q(k) by the Moebius formula."""
    g = math.gcd(q, k)
    return sum(mobius(q // d) * d for d in divisors(g))


def test_icg4_spectrum():
    assert full_spectrum(icg(4, [1])).eigenvalues == (2, 0, -2, 0)


def test_trivial_character_gives_degree():
    g = gcd_graph((4, 6), [(1, 1), (2, 3)])
    assert eigenvalue(g, (0, 0)) == g.degree


def test_edgeless_and_k2():
    assert set(full_spectrum(build_cayley(GroupSpec((3, 3)), [])).eigenvalues) == {0}
    assert full_spectrum(icg(2, [1])).eigenvalues == (1, -1)


def test_circulant_eigenvalues_are_ramanujan_sums():
    for n in range(1, 31):
        for d in divisors(n):
            spec = full_spectrum(icg(n, [d]))
            assert spec.eigenvalues == tuple(ramanujan_sum(n // d, k) for k in range(n))


@given(gcd_graphs())
def test_single_and_batch_agree(g):
    spec = full_spectrum(g)
    for idx in range(0, g.order, max(1, g.order // 7)):
        assert eigenvalue(g, g.group.element(idx)) == spec.eigenvalues[idx]


@given(gcd_graphs())
def test_trace_identities(g):
    lam = np.array(full_spectrum(g).eigenvalues)
    N = g.order
    assert lam.sum() == N * int(g.has_loops)
    assert (lam**2).sum() == N * g.degree


@given(gcd_graphs(max_order=256))
def test_exact_vs_float(g):
    lam = np.array(full_spectrum(g).eigenvalues, dtype=float)
    assert np.abs(lam - float_eigenvalues(g.group, g.connection)).max() < 1e-6


@given(gcd_graphs())
def test_exact_vs_eigensolver(g):
    exact = np.sort(np.array(full_spectrum(g).eigenvalues, dtype=float))
    assert np.abs(exact - brute_spectrum(g.adjacency_matrix())).max() < 1e-6


def test_integrality_dichotomy_small():
    # the n <= 14 sweep is an acceptance criterion; n <= 9 here
    for n in range(1, 10):
        group = GroupSpec((n,))
        reps = [x for x in range(n) if x <= (n - x) % n]
        for k in range(len(reps) + 1):
            for chosen in itertools.combinations(reps, k):
                S = {(x,) for x in chosen} | {((n - x) % n,) for x in chosen}
                g = build_cayley(group, S)
                try:
                    full_spectrum(g)
                    integral = True
                except NonIntegralSpectrum:
                    integral = False
                assert integral == is_gcd_set(group, S)


def test_non_integral_raises():
    with pytest.raises(NonIntegralSpectrum):
        full_spectrum(build_cayley(GroupSpec((8,)), [(1,), (7,)]))
    with pytest.raises(NonIntegralSpectrum):
        eigenvalue(build_cayley(GroupSpec((5,)), [(1,), (4,)]), (1,))


@given(gcd_graphs(max_order=64))
def test_idempotents_exact(g):
    spec = full_spectrum(g)
    N = g.order
    num = spec.idempotent_numerators()
    total = sum(num.values())
    assert np.array_equal(total, N * np.eye(N, dtype=np.int64))
    A = g.adjacency_matrix()
    mus = sorted(num)
    for a in mus:
        Fa = num[a]
        assert np.array_equal(Fa, Fa.T)
        assert np.array_equal(Fa @ Fa, N * Fa)
        assert np.array_equal(A @ Fa, a * Fa)
        for b in mus:
            if b != a:
                assert not (Fa @ num[b]).any()


@given(gcd_graphs(max_order=64))
def test_residue_classes_partition(g):
    spec = full_spectrum(g)
    seen = sorted(i for idx in spec.residue_classes.values() for i in idx)
    assert seen == list(range(g.order))
    T = spec.residue_sums()
    assert sum(T[r][0] for r in range(4)) == g.order


def test_spectrum_json():
    data = spectrum_json(full_spectrum(icg(4, [1])))
    assert data["lambda"] == [2, 0, -2, 0]
    assert data["multiplicities"] == {"-2": 1, "0": 2, "2": 1}
    assert data["residues_mod_4"] == {"0": [[1], [3]], "2": [[0], [2]]}
