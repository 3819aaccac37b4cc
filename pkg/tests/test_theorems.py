import pytest

from pst_lab.theorems import SCOPES, instances, run_task, verify_theorem_suite


@pytest.mark.parametrize("scope", SCOPES)
def test_scope_passes_at_small_bound(scope):
    report = verify_theorem_suite(scope, 16)
    assert report.results, scope
    assert report.passed, report.failures


def test_parallel_matches_serial(monkeypatch):
    serial = verify_theorem_suite("thm3d", 24, workers=1)
    monkeypatch.setenv("PST_LAB_THREADS", "2")
    parallel = verify_theorem_suite("thm3d", 24)
    assert [r.to_json() for r in serial.results] == [r.to_json() for r in parallel.results]


def test_failures_are_reported():
    def broken(**_):
        raise RuntimeError("boom")

    result = run_task("lemma3b", ("bad", broken, {}))
    assert not result.passed and "boom" in result.detail


def test_instances_deterministic():
    a = [(n, p) for n, _, p in instances("prop3a", 36, seed=5)]
    b = [(n, p) for n, _, p in instances("prop3a", 36, seed=5)]
    assert a == b


def test_unknown_scope():
    with pytest.raises(ValueError):
        instances("thm9", 10)
