import itertools
import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from pst_lab.analysis import Periodic, PstShift
from pst_lab.cubelike import (
    CubelikeSpec,
    classify_half_pi,
    cubelike_adjacency,
    cubelike_half_pi,
    cubelike_transition,
    format_bits,
    parse_bitstring,
    permutation_matrix,
    translation,
    xor,
)
from pst_lab.evolution import Entry, quarter_transition
from pst_lab.oracle import dense_adjacency, expm_oracle


@st.composite
def cubelike_specs(draw, max_n: int = 4):
    n = draw(st.integers(1, max_n))
    vectors = list(itertools.product((0, 1), repeat=n))
    return CubelikeSpec(n, frozenset(draw(st.lists(st.sampled_from(vectors), unique=True))))


def spec(*bits):
    return CubelikeSpec.from_bitstrings(len(bits[0]), bits)


def test_bitstrings():
    assert parse_bitstring("100") == (1, 0, 0)
    assert format_bits((0, 1, 1)) == "011"
    with pytest.raises(ValueError):
        parse_bitstring("102")


def test_adjacency_examples():
    assert not cubelike_adjacency(CubelikeSpec(3, frozenset())).any()
    assert np.array_equal(cubelike_adjacency(spec("000", "000")), np.eye(8, dtype=int))
    cube = spec("100", "010", "001")
    A = cubelike_adjacency(cube)
    assert np.array_equal(A, dense_adjacency((2, 2, 2), cube.C))
    assert np.all(A.sum(axis=1) == 3)


def test_half_pi_examples():
    h = cubelike_half_pi(spec("100", "010", "001"))
    assert h.phase == Entry(0, -1, 1) and h.shift == (1, 1, 1)
    assert classify_half_pi(spec("110", "011")) == PstShift((1, 0, 1), Entry(-1, 0, 1))
    assert classify_half_pi(spec("110", "011", "101")) == Periodic(Entry(0, -1, 1))
    assert classify_half_pi(spec("1")) == PstShift((1,), Entry(0, 1, 1))
    four = spec("100", "010", "001", "111")
    assert classify_half_pi(four) == Periodic(Entry(1, 0, 1))


def test_half_pi_pst_entries_via_oracle():
    s = spec("110", "011")
    H = expm_oracle(cubelike_adjacency(s), math.pi / 2)
    shift_idx = int("101", 2)
    assert abs(abs(H[0, shift_idx]) - 1) < 1e-12


def test_translation_order_matches_group():
    s = spec("100", "011")
    group = s.group
    for u in s.C:
        perm = translation(u, 3)
        for idx, x in enumerate(group.elements()):
            assert perm[idx] == group.index(xor(x, u))


def test_permutations_commute_exhaustive():
    for n in range(1, 5):
        vectors = list(itertools.product((0, 1), repeat=n))
        for u in vectors:
            Pu = permutation_matrix(u, n)
            for v in vectors:
                Pv = permutation_matrix(v, n)
                assert np.array_equal(Pu @ Pv, permutation_matrix(xor(u, v), n))
                assert np.array_equal(Pu @ Pv, Pv @ Pu)


@given(cubelike_specs(), st.sampled_from([0.3, math.pi / 4, math.pi / 2]))
def test_product_formula_vs_oracle(s, t):
    err = np.abs(cubelike_transition(s, t) - expm_oracle(cubelike_adjacency(s), t)).max()
    assert err < 1e-9


@given(cubelike_specs(max_n=6))
def test_half_pi_matches_exact_backend(s):
    h = cubelike_half_pi(s)
    exact = quarter_transition(s.cayley(), 1)
    shift_idx = s.group.index(h.shift)
    for idx, (a, b) in enumerate(exact.row):
        got = Entry(a, b, exact.den)
        assert got.normalized() == h.phase if idx == shift_idx else got.is_zero


@given(cubelike_specs())
def test_classification_rule(s):
    verdict = classify_half_pi(s)
    if any(s.sigma):
        assert verdict == PstShift(s.sigma, Entry.i_power(len(s.C)))
    else:
        assert verdict == Periodic(Entry.i_power(len(s.C)))


def test_rejects_bad_vectors():
    with pytest.raises(ValueError):
        CubelikeSpec(2, frozenset({(1, 0, 1)}))
    with pytest.raises(ValueError):
        cubelike_adjacency(CubelikeSpec(3, frozenset()), cap=2)
