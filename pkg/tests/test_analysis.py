import math

import numpy as np
from hypothesis import given
from hypothesis import strategies as st

from pst_lab.analysis import (
    Periodic,
    PstReport,
    analyze_quarter,
    check_periodic_quarter,
    find_pst_quarter,
    scan_pst_float,
    scan_times,
)
from pst_lab.cayley import icg
from pst_lab.evolution import Entry, quarter_transition

from tests.strategies import gcd_graphs


def test_periodic_examples():
    assert check_periodic_quarter(icg(8, [1]), 1) == Periodic(Entry(1, 0, 1))
    assert check_periodic_quarter(icg(4, [1]), 1) is None


@given(gcd_graphs())
def test_q0_always_periodic(g):
    assert check_periodic_quarter(g, 0) == Periodic(Entry(1, 0, 1))


def test_pst_examples():
    c4 = find_pst_quarter(icg(4, [1]), 1)
    assert [p.shift for p in c4] == [(2,)]
    assert c4[0].phase == Entry(-1, 0, 1)
    k2 = find_pst_quarter(icg(2, [1]), 1)
    assert [(p.shift, p.phase) for p in k2] == [((1,), Entry(0, 1, 1))]
    assert find_pst_quarter(icg(8, [1]), 1) == []


@given(gcd_graphs(), st.integers(0, 7))
def test_exclusive_and_symmetric(g, q):
    report = analyze_quarter(g, q)
    assert not (report.periodic is not None and report.pairs)
    assert len(report.pairs) <= 1
    h = quarter_transition(g, q)
    for p in report.pairs:
        back = g.group.neg(p.shift)
        # H[w, 0] = H[0, -w] equals H[0, w] because A is symmetric
        assert h.entry(p.shift, g.group.zero) == h.entry(g.group.zero, p.shift)
        assert h.at(back).is_unit


@given(gcd_graphs(max_order=48))
def test_unit_row_mass(g):
    h = quarter_transition(g, 1)
    assert sum(a * a + b * b for a, b in h.row) == h.den * h.den


@given(gcd_graphs(max_order=48))
def test_exact_pst_found_by_scan(g):
    pairs = find_pst_quarter(g, 1)
    hits = scan_pst_float(g, t_min=math.pi / 2, t_max=math.pi / 2, step=1.0, tol=1e-6)
    assert {p.shift for p in pairs} <= {h.v for h in hits}


def test_scan_examples():
    step = math.pi / 1200
    hits = scan_pst_float(icg(2, [1]), t_max=math.pi, step=step)
    assert any(abs(h.t - math.pi / 2) < 1e-9 for h in hits)
    assert scan_pst_float(icg(8, [1]), t_min=step, t_max=math.pi, step=step) == []
    c4 = scan_pst_float(icg(4, [1]), t_max=math.pi, step=step)
    at_half = [h for h in c4 if abs(h.t - math.pi / 2) < 1e-9]
    assert at_half and at_half[0].modulus >= 1 - 1e-9 and at_half[0].v == (2,)


def test_scan_times_grid():
    ts = scan_times(0.0, 1.0, 0.25)
    assert np.allclose(ts, [0, 0.25, 0.5, 0.75, 1.0])


def test_report_json():
    data = analyze_quarter(icg(2, [1]), 1).to_json()
    assert data["verdict"] == "pst"
    assert data["pst"][0]["v"] == "1" and data["pst"][0]["phase"] == {"re_num": 0, "im_num": 1, "den": 1}
    assert analyze_quarter(icg(8, [1]), 1).verdict == "periodic"
    assert PstReport(icg(5, [1]), 1, "exact").verdict == "none"
