import itertools
import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from pst_lab.abelian import GroupSpec, divisors, gcd_tuple
from pst_lab.cayley import (
    AsymmetricConnectionSet,
    CayleyGraph,
    GcdSetSpec,
    adjacency_commute,
    build_cayley,
    build_gcd_set,
    gcd_graph,
    icg,
    is_gcd_set,
    kronecker_cayley,
    parse_tuple_list,
)
from pst_lab.oracle import bfs_connected, dense_adjacency

from tests.strategies import gcd_graphs, groups, symmetric_sets


@pytest.mark.parametrize(
    "moduli, tuples, expected",
    [((4,), [(2,)], {(2,)}), ((4,), [(4,)], {(0,)}), ((4, 2), [(2, 2)], {(2, 0)})],
)
def test_gcd_set_examples(moduli, tuples, expected):
    assert build_gcd_set(GcdSetSpec(GroupSpec(moduli), frozenset(tuples))) == expected


def test_gcd_set_rejects_non_divisor():
    with pytest.raises(ValueError):
        GcdSetSpec(GroupSpec((6,)), frozenset({(4,)}))


def test_asymmetric_set_rejected():
    with pytest.raises(AsymmetricConnectionSet):
        build_cayley(GroupSpec((5,)), [(1,)])


def test_cycle_edges():
    g = build_cayley(GroupSpec((4,)), [(1,), (3,)])
    assert g.edges() == [(0, 1), (0, 3), (1, 2), (2, 3)]


def test_edgeless_and_k2():
    g = build_cayley(GroupSpec((3, 2)), [])
    assert g.edges() == [] and not g.adjacency_matrix().any()
    k2 = build_cayley(GroupSpec((2,)), [(1,)])
    assert k2.edges() == [(0, 1)]


def test_loop_contributes_one():
    g = icg(6, [6, 1])
    A = g.adjacency_matrix()
    assert g.has_loops
    assert np.all(np.diag(A) == 1)
    assert (0, 0) in g.edges()


@pytest.mark.parametrize("n, D, connected", [(6, [2, 3], True), (6, [2], False), (4, [1], True)])
def test_connectivity_examples(n, D, connected):
    assert icg(n, D).is_connected() is connected


def test_commute_examples():
    g = GroupSpec((6,))
    assert adjacency_commute(build_cayley(g, [(1,), (5,)]), build_cayley(g, [(2,), (4,)]))
    assert adjacency_commute(build_cayley(g, [(1,), (5,)]), build_cayley(g, []))
    a = icg(6, [1])
    assert adjacency_commute(a, a)


@given(groups(max_order=64), st.data())
def test_commutation_random_symmetric_sets(group, data):
    S = data.draw(symmetric_sets(group))
    T = data.draw(symmetric_sets(group))
    assert adjacency_commute(build_cayley(group, S), build_cayley(group, T))


@given(gcd_graphs())
def test_regular(g):
    A = g.adjacency_matrix()
    assert np.all(A.sum(axis=1) == g.degree)
    assert np.array_equal(A, A.T)


@given(gcd_graphs(max_order=48))
def test_adjacency_matches_definition_scan(g):
    assert np.array_equal(g.adjacency_matrix(), dense_adjacency(g.group.moduli, g.connection))


@given(groups())
def test_gcd_classes_disjoint_and_cover(group):
    seen = set()
    for d in group.divisor_tuples():
        cls = build_gcd_set(GcdSetSpec(group, frozenset({d})))
        assert not (cls & seen)
        assert all(gcd_tuple(x, group) == d for x in cls)
        seen |= cls
    assert seen == set(group.elements())


def test_connectivity_criterion_exhaustive_small():
    # the full n <= 60 sweep is an acceptance criterion; this is a fast slice
    for n in range(1, 25):
        divs = divisors(n)
        for k in range(1, len(divs) + 1):
            for D in itertools.combinations(divs, k):
                g = icg(n, D)
                assert g.is_connected() == (math.gcd(n, *D) == 1)


@given(gcd_graphs(max_order=40))
def test_bfs_agrees_with_oracle(g):
    assert g.is_connected() == bfs_connected(g.adjacency_matrix())


@given(gcd_graphs())
def test_json_round_trip(g):
    data = g.to_json()
    back = CayleyGraph.from_json(data)
    assert back == g
    assert back.edges() == g.edges() and back.has_loops == g.has_loops


def test_json_rejects_bad_edges():
    data = icg(6, [1]).to_json()
    data["edges"] = data["edges"][:-1]
    with pytest.raises(ValueError):
        CayleyGraph.from_json(data)


def test_dot_and_csv():
    g = icg(4, [4, 2])
    dot = g.to_dot()
    assert "0 -- 0;" in dot and "0 -- 2;" in dot
    rows = g.adjacency_csv().strip().split("\n")
    assert rows[0] == "1,0,1,0"


def test_adjacency_cap():
    with pytest.raises(ValueError):
        icg(10, [1]).adjacency_matrix(cap=5)


def test_is_gcd_set():
    g = GroupSpec((8,))
    assert is_gcd_set(g, {(1,), (3,), (5,), (7,)})
    assert not is_gcd_set(g, {(1,), (7,)})


def test_kronecker_matches_numpy():
    g1, g2 = icg(4, [1]), gcd_graph((3, 2), [(1, 1), (3, 1)])
    prod = kronecker_cayley(g1, g2)
    assert np.array_equal(prod.adjacency_matrix(), np.kron(g1.adjacency_matrix(), g2.adjacency_matrix()))
    assert prod == gcd_graph((4, 3, 2), prod.divisor_tuples)


def test_parse_tuple_list():
    assert parse_tuple_list("1,1;2,1") == [(1, 1), (2, 1)]
    assert parse_tuple_list("") == []
